#pragma once

// Exact integer and rational helpers on top of GMP's C++ classes.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace g2ml {

using Integer = mpz_class;
using Rational = mpq_class;

Integer ipow(const Integer& base, unsigned long exponent);

/// Rational power with a signed exponent; throws on 0 raised to a negative power.
Rational rpow(const Rational& base, long exponent);

/// Canonical rational num/den with den > 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Decimal form of an integer.
std::string to_string(const Integer& value);

/// Always "num/den", also for integers ("3/1").
std::string to_string(const Rational& value);

Integer parse_integer(std::string_view text);

/// Accepts "n", "n/d" and "-n/d". The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Natural logarithm of |x| for arbitrarily large nonzero x.
double log_abs(const Integer& value);

/// Converts a rational to the nearest double without intermediate overflow
/// as long as the quotient itself is representable.
double to_double(const Rational& value);

/// floor(q) and ceil(q) as integers.
Integer floor(const Rational& value);
Integer ceil(const Rational& value);

inline bool fits_int64(const Integer& value) {
  return mpz_sizeinbase(value.get_mpz_t(), 2) <= 62;
}

std::int64_t to_int64(const Integer& value);

/// Round to 9 significant digits, matching how heights are persisted.
double round_sig9(double value);

}  // namespace g2ml
