#pragma once

// Invariants of binary sextics and points of the moduli space M2 seen
// inside WP(2,4,6,10).

#include <array>
#include <compare>
#include <string>

#include <json.hpp>

#include "g2ml/arith.hpp"
#include "g2ml/poly.hpp"
#include "g2ml/wproj.hpp"

namespace g2ml {

/// f(x) = a6 x^6 + ... + a0 for the curve y^2 = f(x).
class BinarySextic {
 public:
  /// Throws singular_sextic when f has a repeated root (counting infinity)
  /// and invalid_argument when a6 = a5 = 0.
  explicit BinarySextic(std::array<Rational, 7> coeffs);
  /// Degree must be 5 or 6.
  static BinarySextic from_polynomial(const Polynomial& f);

  const std::array<Rational, 7>& coeffs() const noexcept { return a_; }
  const Rational& operator[](std::size_t i) const { return a_[i]; }
  Polynomial polynomial() const;

  /// The same coefficients scaled to coprime integers (positive scale).
  std::array<Integer, 7> integral() const;

 private:
  std::array<Rational, 7> a_;
};

/// [J2 : J4 : J6 : J10] with J10 != 0, always stored normalized.
class ModuliPoint {
 public:
  ModuliPoint(Integer j2, Integer j4, Integer j6, Integer j10);
  /// Trusts the caller that wgcd = 1; skips the factorization.
  static ModuliPoint from_normalized(Integer j2, Integer j4, Integer j6, Integer j10);
  static ModuliPoint from_point(const WeightedPoint& p);

  const Integer& j2() const noexcept { return j_[0]; }
  const Integer& j4() const noexcept { return j_[1]; }
  const Integer& j6() const noexcept { return j_[2]; }
  const Integer& j10() const noexcept { return j_[3]; }
  const std::array<Integer, 4>& coords() const noexcept { return j_; }
  const Integer& operator[](std::size_t i) const { return j_[i]; }

  WeightedPoint point() const;

  bool operator==(const ModuliPoint&) const = default;
  /// Lexicographic on (J2, J4, J6, J10).
  std::strong_ordering operator<=>(const ModuliPoint& o) const;

  std::string to_string() const;

 private:
  ModuliPoint() = default;
  std::array<Integer, 4> j_;
};

enum class AbsoluteSystem { t, i };

/// (t1,t2,t3) = (J2^5/J10, J4^5/J10^2, J6^5/J10^3), or the i-system
/// (J2^30/J10^6, J4^15/J10^6, J6^10/J10^6).
struct AbsoluteTriple {
  Rational t1;
  Rational t2;
  Rational t3;
  AbsoluteSystem system = AbsoluteSystem::t;

  bool operator==(const AbsoluteTriple& o) const {
    return system == o.system && t1 == o.t1 && t2 == o.t2 && t3 == o.t3;
  }
  bool operator<(const AbsoluteTriple& o) const;
};

/// Igusa-Clebsch invariants (I2, I4, I6, I10) of integer coefficients
/// a0..a6, not normalized. I10 is the discriminant.
std::array<Integer, 4> raw_invariants(const std::array<Integer, 7>& a);

/// Throws singular_sextic when J10 vanishes.
ModuliPoint igusa_invariants(const BinarySextic& f);

AbsoluteTriple absolute_t(const ModuliPoint& p);
AbsoluteTriple absolute_i(const ModuliPoint& p);
bool same_moduli(const ModuliPoint& p, const ModuliPoint& q);

/// [J2^2 : J4^2 : J6^2 : J10^2] normalized in WP(1,2,3,5).
WeightedPoint veronese(const ModuliPoint& p);

/// The image of p under the weight-(1,2,3,5) action of -1.
ModuliPoint sign_flip(const ModuliPoint& p);
/// Sign-canonical member of {p, sign_flip(p)}: first nonzero of (J2, J6, J10) positive.
ModuliPoint sign_canonical(const ModuliPoint& p);

/// f(x) -> (cx + d)^6 f((ax + b)/(cx + d)); requires ad - bc != 0.
BinarySextic substitute(const BinarySextic& f, const Rational& a, const Rational& b,
                        const Rational& c, const Rational& d);

nlohmann::json to_json(const ModuliPoint& p);
ModuliPoint moduli_point_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AbsoluteTriple& t);
AbsoluteTriple absolute_triple_from_json(const nlohmann::json& j);

}  // namespace g2ml
