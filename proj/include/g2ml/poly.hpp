#pragma once

// Dense univariate polynomials and rational functions over Q.

#include <initializer_list>
#include <string>
#include <vector>

#include "g2ml/arith.hpp"

namespace g2ml {

class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients in increasing degree.
  Polynomial(std::initializer_list<Rational> coeffs);
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  static Polynomial x();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of x^i, zero past the degree.
  Rational operator[](std::size_t i) const;
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  Rational operator()(const Rational& x) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const { return *this * Rational(-1); }

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Polynomial pow(const Polynomial& p, unsigned e);

/// num/den with den nonzero. Not reduced; equality is by cross-multiplication.
class RationalFunction {
 public:
  RationalFunction(Polynomial num = {}, Polynomial den = Polynomial::constant(1));
  static RationalFunction constant(const Rational& c) { return {Polynomial::constant(c)}; }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  /// Throws invalid_argument when the denominator vanishes at x.
  Rational operator()(const Rational& x) const;
  bool is_zero() const { return num_.is_zero(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  bool operator==(const RationalFunction& o) const { return num_ * o.den_ == o.num_ * den_; }

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFunction pow(const RationalFunction& f, unsigned e);

}  // namespace g2ml
