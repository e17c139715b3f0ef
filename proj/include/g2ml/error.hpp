#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace g2ml {

enum class ErrorCode {
  invalid_argument,
  zero_scalar,
  singular_sextic,
  degenerate_parameters,
  slice_not_parametrized,
  retries_exhausted,
  budget_exceeded,
  label_conflict,
  schema_mismatch,
  parse_error,
  io_error,
};

constexpr std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::zero_scalar: return "zero_scalar";
    case ErrorCode::singular_sextic: return "singular_sextic";
    case ErrorCode::degenerate_parameters: return "degenerate_parameters";
    case ErrorCode::slice_not_parametrized: return "slice_not_parametrized";
    case ErrorCode::retries_exhausted: return "retries_exhausted";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::label_conflict: return "label_conflict";
    case ErrorCode::schema_mismatch: return "schema_mismatch";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

/// Library-wide exception. Every throw site in g2ml raises this type so the
/// command line front end can report a stable machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace g2ml
