#include <doctest.h>

#include <cmath>

#include "g2ml/arith.hpp"
#include "g2ml/error.hpp"
#include "g2ml/factor.hpp"
#include "g2ml/poly.hpp"

using namespace g2ml;

TEST_CASE("rational strings round trip") {
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(parse_rational("7") == 7);
  CHECK(parse_integer("+12") == 12);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_integer("1e3"), Error);
  CHECK_THROWS_AS(parse_integer("-"), Error);
}

TEST_CASE("rpow with negative exponent") {
  CHECK(rpow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(rpow(Rational(-1, 2), 3) == Rational(-1, 8));
  CHECK_THROWS_AS(rpow(Rational(0), -1), Error);
}

TEST_CASE("floor and ceil of rationals") {
  CHECK(g2ml::floor(Rational(-7, 2)) == -4);
  CHECK(g2ml::ceil(Rational(-7, 2)) == -3);
  CHECK(g2ml::floor(Rational(6, 3)) == 2);
}

TEST_CASE("log_abs and to_double beyond double range") {
  const Integer big = ipow(Integer(10), 400);
  CHECK(log_abs(big) == doctest::Approx(400 * std::log(10.0)));
  CHECK(to_double(make_rational(big + 1, big)) == doctest::Approx(1.0));
}

TEST_CASE("factorization recovers the number") {
  const Integer p1("1000000007");
  const Integer p2("998244353");
  const Integer n = ipow(Integer(2), 5) * ipow(p1, 2) * p2 * 3;
  const Factorization f = factorize(n);
  CHECK(f.complete());
  Integer back = 1;
  for (const auto& [p, e] : f.primes) {
    CHECK(mpz_probab_prime_p(p.get_mpz_t(), 25) != 0);
    back *= ipow(p, e);
  }
  CHECK(back == n);
  CHECK(valuation(n, p1) == 2);
  CHECK(valuation(-n, Integer(2)) == 5);
}

TEST_CASE("factorization of a perfect power of a large prime") {
  const Integer p("1000000000039");
  const Factorization f = factorize(ipow(p, 3));
  REQUIRE(f.primes.size() == 1);
  CHECK(f.primes[0].first == p);
  CHECK(f.primes[0].second == 3);
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial x = Polynomial::x();
  const Polynomial p = x * x - Polynomial::constant(1);
  CHECK(p.degree() == 2);
  CHECK(p(Rational(3)) == 8);
  CHECK((p - p).is_zero());
  CHECK(pow(x + Polynomial::constant(1), 3)[1] == 3);
  CHECK(p.to_string("x") == "x^2 - 1");
}

TEST_CASE("rational function evaluation and identity") {
  const Polynomial x = Polynomial::x();
  const RationalFunction f(Polynomial::constant(1), x);
  const RationalFunction g(x, x * x);
  CHECK(f == g);
  CHECK(f(Rational(4)) == Rational(1, 4));
  CHECK_THROWS_AS(f(Rational(0)), Error);
  CHECK((f - g).is_zero());
}
