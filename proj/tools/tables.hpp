#pragma once

// Re-derivation of the published tables, one verdict per table.

#include <string>
#include <vector>

#include <json.hpp>

#include "g2ml/arith.hpp"

namespace g2ml::cli {

enum class Verdict { pass, fail, report };

struct TableCheck {
  std::string name;
  Verdict verdict = Verdict::fail;
  std::string summary;
  std::vector<std::string> notes;
  nlohmann::json data;
};

std::string verdict_name(Verdict v);

/// Curve counts for h = 1..10.
TableCheck check_counts();
/// Height 1 classes against the printed representatives.
TableCheck check_height_one(unsigned threads);
/// L2 scan at `h` against the printed height 3 list.
TableCheck check_l2_list(const Rational& h, unsigned threads);
/// Printed L3 list: heights, normalization and duplicates.
TableCheck check_l3_list();

std::string format_check(const TableCheck& t);
nlohmann::json to_json(const TableCheck& t);

}  // namespace g2ml::cli
