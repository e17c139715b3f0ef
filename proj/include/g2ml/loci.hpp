#pragma once

// Split-Jacobian loci L2, L3, L5: the J30 equation of L2 and rational
// parametrizations of the three loci.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "g2ml/igusa.hpp"
#include "g2ml/poly.hpp"
#include "g2ml/rng.hpp"

namespace g2ml {

struct J30Term {
  std::int64_t coeff;
  unsigned e2, e4, e6, e10;
};

/// J30 as 34 monomials in (J2, J4, J6, J10), weighted degree 30.
inline constexpr J30Term kJ30Terms[] = {
    {31104, 0, 0, 5, 0},      {-6912, 0, 3, 3, 0},        {384, 0, 6, 1, 0},
    {-47952, 1, 1, 4, 0},     {6048, 1, 4, 2, 0},         {-80, 1, 7, 0, 0},
    {29376, 2, 2, 3, 0},      {-1728, 2, 5, 1, 0},        {-81, 3, 0, 4, 0},
    {-8910, 3, 3, 2, 0},      {159, 3, 6, 0, 0},          {108, 4, 1, 3, 0},
    {1332, 4, 4, 1, 0},       {-54, 5, 2, 2, 0},          {-78, 5, 5, 0, 0},
    {12, 6, 3, 1, 0},         {-1, 7, 4, 0, 0},           {-9331200, 0, 2, 2, 1},
    {41472, 0, 5, 0, 1},      {-3499200, 1, 0, 3, 1},     {4743360, 1, 3, 1, 1},
    {3090960, 2, 1, 2, 1},    {-592272, 2, 4, 0, 1},      {-870912, 3, 2, 1, 1},
    {8748, 4, 0, 2, 1},       {77436, 4, 3, 0, 1},        {-5832, 5, 1, 1, 1},
    {972, 6, 2, 0, 1},        {-2099520000, 0, 1, 1, 2},  {507384000, 1, 2, 0, 2},
    {104976000, 2, 0, 1, 2},  {-19245600, 3, 1, 0, 2},    {-236196, 5, 0, 0, 2},
    {-125971200000, 0, 0, 0, 3},
};

/// J30 viewed as c3 J10^3 + c2 J10^2 + c1 J10 + c0.
template <class T>
std::array<T, 4> j30_cubic(const T& j2, const T& j4, const T& j6) {
  std::array<T, 8> p2{}, p4{}, p6{};
  p2[0] = p4[0] = p6[0] = T(1);
  for (std::size_t i = 1; i < 8; ++i) {
    p2[i] = p2[i - 1] * j2;
    p4[i] = p4[i - 1] * j4;
    p6[i] = p6[i - 1] * j6;
  }
  std::array<T, 4> c{};
  for (const J30Term& t : kJ30Terms) {
    c[t.e10] += T(t.coeff) * p2[t.e2] * p4[t.e4] * p6[t.e6];
  }
  return c;
}

template <class T>
T eval_cubic(const std::array<T, 4>& c, const T& x) {
  return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
}

Integer j30(const ModuliPoint& p);
bool in_l2(const ModuliPoint& p);

/// y^2 = x^6 + a x^4 + b x^2 + 1.
BinarySextic l2_curve(const Rational& a, const Rational& b);
ModuliPoint l2_curve_point(const Rational& a, const Rational& b);

class L3Params {
 public:
  /// Throws degenerate_parameters when the discriminant factor vanishes.
  L3Params(Rational u, Rational v);
  const Rational& u() const noexcept { return u_; }
  const Rational& v() const noexcept { return v_; }

 private:
  Rational u_;
  Rational v_;
};

/// v (v - 27) (4u^3 - u^2 v - 18uv + 4v^2 + 27v).
Rational l3_discriminant(const Rational& u, const Rational& v);
BinarySextic l3_curve(const L3Params& params);
ModuliPoint l3_point(const L3Params& params);

/// Looks for (u, v) with numerators and denominators bounded by `bound`
/// whose L3 point is p. Absence of a hit proves nothing.
std::optional<L3Params> l3_search(const ModuliPoint& p, std::int64_t bound);

/// f(a, b, z) = (1 + 2a) z^2 + (-a^2 - 2ab - 2a + 2b) z + 2ab + b^2.
Rational l5_constraint(const Rational& a, const Rational& b, const Rational& z);

class L5Params {
 public:
  /// Throws degenerate_parameters unless f(a, b, z) = 0, z not in {0, 1}
  /// and 1 + 2a != 0.
  L5Params(Rational a, Rational b, Rational z);
  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& z() const noexcept { return z_; }

 private:
  Rational a_;
  Rational b_;
  Rational z_;
};

/// Coefficients (a0, a1, a2, a3) of the cubic factor.
std::array<Rational, 4> l5_cubic(const L5Params& params);
/// x (x - 1) (a3 x^3 + a2 x^2 + a1 x + a0); throws degenerate_parameters if singular.
BinarySextic l5_curve(const L5Params& params);

/// The conic f(a, b, s) = 0 for fixed s, parametrized through its point (0, -s)
/// by lines b + s = -(s t / 2) a.
struct L5Slice {
  Rational s;
  RationalFunction a;
  RationalFunction b;
};
L5Slice l5_slice(const Rational& s);

struct L5GenConfig {
  std::size_t slices = 10;
  RationalRange s_range{20, 10};
  RationalRange t_range{20, 10};
  std::size_t max_retries = 100;
};

struct L5Sample {
  L5Params params;
  ModuliPoint point;
};

/// Draws n points of L5: `slices` random s values, n / slices values of t
/// on each slice (the remainder spread over the first slices). Degenerate
/// draws and repeats of an earlier moduli class are redrawn; throws
/// retries_exhausted after max_retries consecutive failures.
std::vector<L5Sample> l5_generate(std::size_t n, std::uint64_t seed, const L5GenConfig& config = {});
std::vector<ModuliPoint> l5_generate_points(std::size_t n, std::uint64_t seed,
                                            const L5GenConfig& config = {});

struct UVWTriple {
  Rational u;
  Rational v;
  Rational w;
};

UVWTriple uvw_from_params(const L5Params& params);
/// c2 w^2 + c1 w + c0.
Rational uvw_residual(const UVWTriple& t);
/// (c0, c1, c2) of the quadratic in w.
std::array<Rational, 3> uvw_coefficients(const Rational& u, const Rational& v);

/// Random samplers used by the generators and tests. Each keeps drawing
/// until the parameters are valid, up to max_retries.
L3Params random_l3_params(Rng& rng, const RationalRange& range, std::size_t max_retries = 100);
std::pair<Rational, Rational> random_l2_params(Rng& rng, const RationalRange& range,
                                               std::size_t max_retries = 100);
/// A random point of the slice at a random s, with (a, b) in the conic.
L5Params random_l5_params(Rng& rng, const RationalRange& s_range, const RationalRange& t_range,
                          std::size_t max_retries = 100);

}  // namespace g2ml
