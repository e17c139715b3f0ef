#include "g2ml/arith.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "g2ml/error.hpp"

namespace g2ml {

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational rpow(const Rational& base, long exponent) {
  if (exponent >= 0) {
    const auto e = static_cast<unsigned long>(exponent);
    return make_rational(ipow(base.get_num(), e), ipow(base.get_den(), e));
  }
  if (base == 0) {
    throw Error(ErrorCode::invalid_argument, "zero raised to a negative power");
  }
  const auto e = static_cast<unsigned long>(-exponent);
  return make_rational(ipow(base.get_den(), e), ipow(base.get_num(), e));
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw Error(ErrorCode::invalid_argument, "zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) {
    throw Error(ErrorCode::parse_error, "empty integer literal");
  }
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) {
    throw Error(ErrorCode::parse_error, "malformed integer literal '" + s + "'");
  }
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw Error(ErrorCode::parse_error, "malformed integer literal '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) {
    throw Error(ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

double log_abs(const Integer& value) {
  if (value == 0) {
    return -HUGE_VAL;
  }
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double to_double(const Rational& value) {
  if (value == 0) return 0.0;
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, value.get_num().get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, value.get_den().get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return out;
}

Integer ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return out;
}

std::int64_t to_int64(const Integer& value) {
  if (!fits_int64(value)) {
    throw Error(ErrorCode::invalid_argument, "integer does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value.get_si());
}

double round_sig9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return std::strtod(buf, nullptr);
}

}  // namespace g2ml
