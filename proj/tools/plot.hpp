#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "g2ml/dataset.hpp"

namespace g2ml::cli {

/// sign(x) log(1 + |x|), accurate for rationals far beyond double range.
double signed_log(const Rational& x);

struct PlotOptions {
  ClassScheme scheme = ClassScheme::three;
  /// Which t-invariants go on the x and y axes, 1-based.
  std::array<unsigned, 2> axes{1, 2};
  nlohmann::json metadata;
};

/// SVG 1.1 scatter of the records in signed-log t-coordinates, one color per class.
std::string scatter_svg(const Dataset& d, const PlotOptions& options);

}  // namespace g2ml::cli
