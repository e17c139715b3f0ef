#pragma once

// Counting formulas for points of bounded weighted height and exact
// enumeration of moduli points in a height box.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "g2ml/igusa.hpp"
#include "g2ml/wproj.hpp"

namespace g2ml {

/// sum_i h^{q_{n-i}} prod_{j < n-i} (2 h^{q_j} + 1): one term per position
/// of the last nonzero coordinate. An upper bound for F_w(h).
Integer count_bound_general(const WeightSystem& w, unsigned long h);

/// h (8h^10 + 4h^9 + 4h^8 + 6h^7 + 2h^6 + 6h^5 + 3h^4 + 2h^3 + 3h^2 + h + 1).
Integer count_sextic_f(unsigned long h);
/// h^5 (2h^3+1)(2h^2+1)(2h+1) + h^3 (2h^2+1)(2h+1) + h^2 (2h+1) + h.
Integer count_sextic_f_factored(unsigned long h);
/// The degree 10 shell polynomial G(h) = F(h) - F(h - 1).
Integer shell_count_g(unsigned long h);
/// F for weights (2,4,6,10), i.e. F(h^2).
Integer count_even_weights(unsigned long h);

struct EnumerateOptions {
  bool strict = false;
  /// Refuse boxes with more candidate tuples than this.
  double candidate_limit = 1e10;
  unsigned threads = 1;
};

struct CountReport {
  Rational bound;
  bool strict = false;
  /// Candidates the search visited (tuples for the box scan, integer
  /// roots for the L2 scan).
  Integer raw = 0;
  std::size_t normalized = 0;
  std::size_t classes = 0;
};

nlohmann::json to_json(const CountReport& r);

struct EnumerationResult {
  /// Normalized tuples, sorted.
  std::vector<ModuliPoint> points;
  /// One representative per moduli class, sorted.
  std::vector<ModuliPoint> classes;
  CountReport report;
};

/// Largest integer n with n <= h^q, or n < h^q when strict.
Integer coordinate_bound(const Rational& h, unsigned q, bool strict);

/// All normalized [J2:J4:J6:J10] with J10 != 0 and height <= h (or < h).
EnumerationResult enumerate_moduli(const Rational& h, const EnumerateOptions& options = {});

/// Points of L2 in the same box, found by solving J30 = 0 for J10.
EnumerationResult scan_l2(const Rational& h, const EnumerateOptions& options = {});

/// Smallest sign-canonical member of each class, classes keyed by t-invariants.
std::vector<ModuliPoint> class_representatives(const std::vector<ModuliPoint>& points);

/// Integer roots x of c3 x^3 + c2 x^2 + c1 x + c0 with lo <= x <= hi, c3 != 0.
/// Exposed for testing.
std::vector<std::int64_t> cubic_integer_roots(const std::array<__int128, 4>& c, std::int64_t lo,
                                              std::int64_t hi);

}  // namespace g2ml
