#include <doctest.h>

#include <set>

#include "g2ml/error.hpp"
#include "g2ml/loci.hpp"

using namespace g2ml;

namespace {

ModuliPoint mp(long a, long b, long c, long d) { return ModuliPoint(a, b, c, d); }

Rational q(long n, long d = 1) { return make_rational(Integer(n), Integer(d)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("j30 examples") {
  CHECK(j30(mp(0, 0, 0, 1)) == Integer("-125971200000"));
  CHECK(j30(mp(4, -14, 2, 1)) == 0);
  CHECK(j30(mp(1, 1, 1, 1)) != 0);
  CHECK_FALSE(in_l2(mp(0, 0, 0, 1)));
}

TEST_CASE("j30 cubic in 128-bit arithmetic agrees with GMP") {
  Rng rng = stream(3, 0);
  std::uniform_int_distribution<long> d2(-9, 9), d4(-81, 81), d6(-729, 729), d10(-59049, 59049);
  for (int iter = 0; iter < 500; ++iter) {
    const long j2 = d2(rng), j4 = d4(rng), j6 = d6(rng), j10 = d10(rng);
    const auto ci = j30_cubic<__int128>(j2, j4, j6);
    const auto cz = j30_cubic<Integer>(j2, j4, j6);
    const __int128 vi = eval_cubic<__int128>(ci, j10);
    const Integer vz = eval_cubic<Integer>(cz, j10);
    const bool neg = vi < 0;
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(vi) : vi;
    std::string s;
    do {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
      mag /= 10;
    } while (mag != 0);
    CHECK((neg ? "-" + s : s) == vz.get_str());
  }
}

TEST_CASE("j30 vanishing is a property of the moduli class") {
  for (const auto& p : {mp(4, -14, 2, 1), mp(1, 1, 1, 1), mp(3, -15, 48, 10)}) {
    for (long k : {2L, 3L, 5L}) {
      const Integer j10 = p.j10() * ipow(Integer(k), 10);
      const ModuliPoint scaled = ModuliPoint::from_normalized(p.j2() * k * k, p.j4() * ipow(Integer(k), 4),
                                                              p.j6() * ipow(Integer(k), 6), j10);
      CHECK((j30(scaled) == 0) == (j30(p) == 0));
    }
  }
}

TEST_CASE("L2 family") {
  CHECK(in_l2(l2_curve_point(0, 0)));
  CHECK(code_of([] { l2_curve_point(3, 3); }) == ErrorCode::singular_sextic);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng = stream(77, i);
    const auto [a, b] = random_l2_params(rng, {40, 9});
    CHECK(j30(l2_curve_point(a, b)) == 0);
  }
}

TEST_CASE("L3 curve and point at (1,1)") {
  CHECK(l3_discriminant(1, 1) == -416);
  const BinarySextic f = l3_curve(L3Params(1, 1));
  const Polynomial x = Polynomial::x();
  const Polynomial one = Polynomial::constant(1);
  const Polynomial expected = (pow(x, 3) + pow(x, 2) + x + one) *
                              (4 * pow(x, 3) + pow(x, 2) + 2 * x + one);
  CHECK(f.polynomial() == expected);
  // 2v alpha = -424 and J10 = 1703936 before normalization by d = 2.
  const ModuliPoint p = l3_point(L3Params(1, 1));
  CHECK(p == ModuliPoint(-424, 34432, -2895872, 1703936));
  CHECK(p == mp(-106, 2152, -45248, 1664));
  CHECK(same_moduli(p, igusa_invariants(f)));
}

TEST_CASE("degenerate L3 parameters") {
  CHECK(code_of([] { L3Params(1, 0); }) == ErrorCode::degenerate_parameters);
  CHECK(code_of([] { L3Params(5, 27); }) == ErrorCode::degenerate_parameters);
}

TEST_CASE("L3 point and curve agree") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = stream(8, i);
    const L3Params params = random_l3_params(rng, {30, 8});
    CHECK(same_moduli(l3_point(params), igusa_invariants(l3_curve(params))));
  }
}

TEST_CASE("L3 search finds a generated point") {
  const auto hit = l3_search(l3_point(L3Params(q(2), q(-3))), 3);
  REQUIRE(hit.has_value());
  CHECK(same_moduli(l3_point(*hit), l3_point(L3Params(q(2), q(-3)))));
}

TEST_CASE("L5 parameters") {
  CHECK(l5_constraint(-8, 6, 2) == 0);
  const L5Params p(-8, 6, 2);
  const auto c = l5_cubic(p);
  CHECK(c[0] == -2332800);
  CHECK(c[1] == 3499200);
  CHECK(c[2] == -1173600);
  CHECK(c[3] == 3600);
  CHECK_NOTHROW(l5_curve(p));
  CHECK(code_of([] { L5Params(-8, 6, 3); }) == ErrorCode::degenerate_parameters);
  CHECK(code_of([] { L5Params(0, 0, 0); }) == ErrorCode::degenerate_parameters);
  CHECK(l5_constraint(0, 0, 5) == 25);
}

TEST_CASE("built-in slices are identities") {
  const Polynomial t = Polynomial::x();
  const Polynomial one = Polynomial::constant(1);
  auto check_identity = [](const L5Slice& sl) {
    const RationalFunction s = RationalFunction::constant(sl.s);
    const RationalFunction one_f = RationalFunction::constant(1);
    const RationalFunction two = RationalFunction::constant(2);
    const auto& a = sl.a;
    const auto& b = sl.b;
    const RationalFunction f = (one_f + two * a) * s * s +
                               (RationalFunction::constant(0) - a * a - two * a * b - two * a + two * b) * s +
                               two * a * b + b * b;
    CHECK(f.is_zero());
  };
  const L5Slice s2 = l5_slice(2);
  CHECK(s2.a == RationalFunction(Polynomial::constant(-8), t * t + 2 * t - 2 * one));
  CHECK(s2.b == RationalFunction(-2 * (t * t - 2 * t - 2 * one), t * t + 2 * t - 2 * one));
  check_identity(s2);
  const L5Slice s12 = l5_slice(q(1, 2));
  CHECK(s12.a == RationalFunction(Polynomial::constant(16), t * t - 4 * t - 8 * one));
  CHECK(s12.b == RationalFunction(-(t * t + 4 * t - 8 * one), 2 * (t * t - 4 * t - 8 * one)));
  check_identity(s12);
  CHECK(s2.a(1) == -8);
  CHECK(s2.b(1) == 6);
  CHECK_THROWS_AS(l5_slice(1), Error);
  CHECK_THROWS_AS(l5_slice(0), Error);
}

TEST_CASE("random slices satisfy the constraint and the w relation") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = stream(10, i);
    const L5Params p = random_l5_params(rng, {20, 10}, {20, 10});
    CHECK(l5_constraint(p.a(), p.b(), p.z()) == 0);
    if (p.b() * (p.a() + p.b() + 1) == 0) continue;
    CHECK(uvw_residual(uvw_from_params(p)) == 0);
  }
}

TEST_CASE("u, v, w examples") {
  const UVWTriple t = uvw_from_params(L5Params(-8, 6, 2));
  CHECK(t.u == q(-104, 3));
  CHECK(t.v == q(256, 3));
  CHECK(t.w == q(27, 4));
  CHECK(uvw_residual(t) == 0);
  CHECK(code_of([] { uvw_from_params(L5Params(2, 0, q(8, 5))); }) == ErrorCode::degenerate_parameters);
  const Rational u = q(3, 7), v = q(-2, 5);
  CHECK(uvw_residual({u, v, 0}) == rpow(u * u + 4 * u * v + 4 * v * v - 48 * v, 3));
  const auto c = uvw_coefficients(u, 0);
  CHECK(c[2] == 0);
  CHECK(c[0] == rpow(u, 6));
}

TEST_CASE("w is symmetric under z -> 1/z and z -> 1 - z") {
  auto w = [](const Rational& z) -> Rational { return rpow(z * z - z + 1, 3) / (z * z * (z - 1) * (z - 1)); };
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng = stream(12, i);
    Rational z = random_rational(rng, {30, 11});
    if (z == 0 || z == 1) z = q(5, 3);
    CHECK(w(z) == w(1 / z));
    CHECK(w(z) == w(1 - z));
  }
}

TEST_CASE("L5 generation") {
  const auto first = l5_generate_points(10, 7);
  const auto again = l5_generate_points(10, 7);
  REQUIRE(first.size() == 10);
  CHECK(first == again);
  std::set<AbsoluteTriple> keys;
  for (const auto& p : first) keys.insert(absolute_t(p));
  CHECK(keys.size() == 10);
  CHECK(l5_generate_points(3, 1).size() == 3);
  CHECK(l5_generate_points(10, 8) != first);
}
