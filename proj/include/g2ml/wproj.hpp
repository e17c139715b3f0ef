#pragma once

// Weighted projective space over Q: scalar action, weighted gcds,
// normalization and weighted heights. Every decision here is exact;
// doubles only appear in values meant for display.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2ml/arith.hpp"
#include "g2ml/factor.hpp"

namespace g2ml {

class WeightSystem {
 public:
  explicit WeightSystem(std::vector<unsigned> weights);

  /// (2,4,6,10), the weights of J2, J4, J6, J10.
  static WeightSystem igusa();
  /// (1,2,3,5), the well-formed model of the same space.
  static WeightSystem reduced_igusa();

  std::size_t size() const noexcept { return weights_.size(); }
  unsigned operator[](std::size_t i) const { return weights_[i]; }
  std::span<const unsigned> weights() const noexcept { return weights_; }
  /// gcd of all weights.
  unsigned gcd() const noexcept { return gcd_; }

  bool operator==(const WeightSystem& other) const { return weights_ == other.weights_; }

 private:
  std::vector<unsigned> weights_;
  unsigned gcd_ = 1;
};

/// An integer tuple with weights attached; not all coordinates zero.
class WeightedPoint {
 public:
  WeightedPoint(std::vector<Integer> coords, WeightSystem weights);

  const std::vector<Integer>& coords() const noexcept { return coords_; }
  const WeightSystem& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  bool operator==(const WeightedPoint& other) const {
    return weights_ == other.weights_ && coords_ == other.coords_;
  }

 private:
  std::vector<Integer> coords_;
  WeightSystem weights_;
};

/// Lexicographic order on coordinates (weights must agree).
bool lex_less(const WeightedPoint& a, const WeightedPoint& b);

/// d = base^(1/root), base >= 1, kept in lowest form (root minimal).
struct RadicalScalar {
  Integer base = 1;
  unsigned root = 1;

  double value() const;
  /// d^k as an exact integer; requires root | k.
  Integer power(unsigned k) const;
  bool operator==(const RadicalScalar&) const = default;
};

/// lambda * p, coordinatewise lambda^{q_i} x_i.
std::vector<Rational> scalar_star(const Rational& lambda, const WeightedPoint& p);
/// Same action on a rational tuple.
std::vector<Rational> scalar_star(const Rational& lambda, std::span<const Rational> coords,
                                  const WeightSystem& weights);

/// Clears denominators of a rational tuple with an integer weighted scaling.
/// The result represents the same point of WP_w(Q).
WeightedPoint clear_denominators(std::span<const Rational> coords, const WeightSystem& weights);

struct WgcdResult {
  Integer value = 1;
  /// False when factorization timed out; value is then only a lower bound.
  bool exact = true;
};

WgcdResult wgcd_detailed(const WeightedPoint& p, const FactorOptions& options = {});
Integer wgcd(const WeightedPoint& p, const FactorOptions& options = {});
RadicalScalar abs_wgcd(const WeightedPoint& p, const FactorOptions& options = {});

/// (1/wgcd(p)) * p.
WeightedPoint normalize(const WeightedPoint& p, const FactorOptions& options = {});
/// (1/abs_wgcd(p)) * p; integer coordinates by construction.
WeightedPoint abs_normalize(const WeightedPoint& p, const FactorOptions& options = {});

bool is_normalized(const WeightedPoint& p, const FactorOptions& options = {});

/// Exact test of max_i |x_i|^{1/q_i} <= h (or < h) on the normalized representative.
bool height_leq(const WeightedPoint& p, const Rational& h, bool strict = false);

/// Same test on a point already known to be normalized.
bool height_leq_normalized(const WeightedPoint& p, const Rational& h, bool strict = false);

/// Weighted height with an exact certificate: the coordinate index whose
/// |x_i|^{1/q_i} is maximal (lowest index on ties) and its value.
struct Height {
  double value = 0.0;
  std::size_t argmax = 0;
  Integer coordinate;
};

Height height(const WeightedPoint& p);
Height abs_height(const WeightedPoint& p);

/// Exact comparison of |a|^{1/qa} against |b|^{1/qb}.
std::strong_ordering compare_root(const Integer& a, unsigned qa, const Integer& b, unsigned qb);

nlohmann::json to_json(const WeightSystem& w);
nlohmann::json to_json(const WeightedPoint& p);
nlohmann::json to_json(const RadicalScalar& d);
WeightSystem weight_system_from_json(const nlohmann::json& j);
WeightedPoint weighted_point_from_json(const nlohmann::json& coords, const WeightSystem& w);
RadicalScalar radical_from_json(const nlohmann::json& j);

}  // namespace g2ml
