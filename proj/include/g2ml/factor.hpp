#pragma once

#include <chrono>
#include <cstdint>
#include <utility>
#include <vector>

#include "g2ml/arith.hpp"

namespace g2ml {

/// Knobs for integer factorization. Trial division runs first, then
/// Pollard-rho (Brent variant) on whatever cofactor is left.
struct FactorOptions {
  std::uint32_t trial_limit = 1'000'000;
  std::chrono::milliseconds timeout{10'000};
};

struct Factorization {
  /// Prime factors with multiplicity, sorted by prime.
  std::vector<std::pair<Integer, unsigned>> primes;
  /// Composite part left over when the timeout hit; 1 when complete.
  Integer unfactored = 1;

  bool complete() const { return unfactored == 1; }
};

/// Factors |n|. n = 0 is rejected.
Factorization factorize(const Integer& n, const FactorOptions& options = {});

/// p-adic valuation of a nonzero integer.
unsigned valuation(const Integer& n, const Integer& p);

}  // namespace g2ml
