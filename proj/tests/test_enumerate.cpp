#include <doctest.h>

#include <algorithm>
#include <set>

#include "g2ml/enumerate.hpp"
#include "g2ml/error.hpp"
#include "g2ml/loci.hpp"
#include "g2ml/reference.hpp"

using namespace g2ml;

namespace {

Rational q(long n, long d = 1) { return make_rational(Integer(n), Integer(d)); }

using Tuple = std::array<std::int64_t, 4>;

Tuple tuple_of(const ModuliPoint& p) {
  return {to_int64(p.j2()), to_int64(p.j4()), to_int64(p.j6()), to_int64(p.j10())};
}

// Direct count of tuples in the weighted box, by definition of the height.
Integer brute_count(const WeightSystem& w, long h) {
  std::vector<long> bound;
  for (unsigned qi : w.weights()) bound.push_back(to_int64(ipow(Integer(h), qi)));
  Integer total = 0;
  // Points with last nonzero coordinate at position k, first nonzero positive.
  std::vector<long> x(w.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == w.size()) {
      std::size_t first = 0;
      while (first < x.size() && x[first] == 0) ++first;
      if (first < x.size() && x[first] > 0) {
        std::vector<Integer> c(x.begin(), x.end());
        if (wgcd(WeightedPoint(c, w)) == 1) total += 1;
      }
      return;
    }
    for (long v = -bound[i]; v <= bound[i]; ++v) {
      x[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace

TEST_CASE("sextic curve counts match the published table") {
  for (unsigned long h = 1; h <= 10; ++h) {
    CHECK(count_sextic_f(h) == Integer(static_cast<long>(reference::kCurveCounts[h - 1])));
    CHECK(count_sextic_f_factored(h) == count_sextic_f(h));
    CHECK(count_bound_general(WeightSystem::reduced_igusa(), h) == count_sextic_f(h));
  }
}

TEST_CASE("shell polynomial is the first difference") {
  CHECK(shell_count_g(1) == 40);
  for (unsigned long h = 1; h <= 100; ++h) {
    CHECK(shell_count_g(h) == count_sextic_f(h) - count_sextic_f(h - 1));
  }
}

TEST_CASE("even weights count is F at h squared") {
  for (unsigned long h = 1; h <= 10; ++h) {
    CHECK(count_even_weights(h) == count_bound_general(WeightSystem::igusa(), h));
  }
}

TEST_CASE("general bound dominates brute-force counts") {
  const std::vector<std::pair<WeightSystem, long>> cases = {
      {WeightSystem({1, 2}), 3}, {WeightSystem({1, 1, 2}), 2}, {WeightSystem({1, 2, 3}), 2}};
  for (const auto& [w, h] : cases) {
    CHECK(brute_count(w, h) <= count_bound_general(w, static_cast<unsigned long>(h)));
  }
  CHECK(brute_count(WeightSystem({1, 2, 3, 5}), 1) <= 40);
}

TEST_CASE("coordinate bounds") {
  CHECK(coordinate_bound(q(3, 2), 2, false) == 2);
  CHECK(coordinate_bound(q(3, 2), 4, true) == 5);
  CHECK(coordinate_bound(q(3, 2), 6, true) == 11);
  CHECK(coordinate_bound(q(3, 2), 10, true) == 57);
  CHECK(coordinate_bound(q(3), 10, false) == 59049);
  CHECK(coordinate_bound(q(3), 10, true) == 59048);
  CHECK_THROWS_AS(coordinate_bound(q(0), 2, false), Error);
}

TEST_CASE("cubic integer roots") {
  using C = std::array<__int128, 4>;
  // (x - 3)(x + 5)(x - 7) = x^3 - 5x^2 - 29x + 105
  CHECK(cubic_integer_roots(C{105, -29, -5, 1}, -100, 100) == std::vector<std::int64_t>{-5, 3, 7});
  CHECK(cubic_integer_roots(C{105, -29, -5, 1}, 0, 5) == std::vector<std::int64_t>{3});
  // Double root at 2: (x - 2)^2 (2x + 1)
  CHECK(cubic_integer_roots(C{4, 4, -7, 2}, -10, 10) == std::vector<std::int64_t>{2});
  // x^3 + 1 and no integer roots of x^3 - 2
  CHECK(cubic_integer_roots(C{1, 0, 0, 1}, -10, 10) == std::vector<std::int64_t>{-1});
  CHECK(cubic_integer_roots(C{-2, 0, 0, 1}, -1000, 1000).empty());
  CHECK_THROWS_AS(cubic_integer_roots(C{1, 1, 1, 0}, -1, 1), Error);
}

TEST_CASE("cubic roots agree with direct evaluation") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = stream(21, i);
    std::uniform_int_distribution<long> r(-200, 200), lead(-30, 30);
    long a = lead(rng);
    if (a == 0) a = 1;
    const long x1 = r(rng), x2 = r(rng), x3 = r(rng);
    // a (x - x1)(x - x2)(x - x3) + shift
    const long shift = i % 3 == 0 ? r(rng) : 0;
    const __int128 c3 = a, c2 = -static_cast<__int128>(a) * (x1 + x2 + x3);
    const __int128 c1 = static_cast<__int128>(a) * (x1 * x2 + x1 * x3 + x2 * x3);
    const __int128 c0 = -static_cast<__int128>(a) * x1 * x2 * x3 + shift;
    const std::array<__int128, 4> c = {c0, c1, c2, c3};
    std::vector<std::int64_t> expected;
    for (std::int64_t x = -250; x <= 250; ++x) {
      if (eval_cubic<__int128>(c, x) == 0) expected.push_back(x);
    }
    CHECK(cubic_integer_roots(c, -250, 250) == expected);
  }
}

TEST_CASE("height one moduli points") {
  const EnumerationResult r = enumerate_moduli(q(1));
  CHECK(r.report.raw == 54);
  CHECK(r.points.size() == 54);
  REQUIRE(r.classes.size() == 27);
  std::set<Tuple> printed(reference::kHeightOne.begin(), reference::kHeightOne.end());
  CHECK(printed.size() == 27);
  for (const ModuliPoint& c : r.classes) {
    int matches = 0;
    for (const Tuple& t : reference::kHeightOne) {
      if (same_moduli(c, ModuliPoint(t[0], t[1], t[2], t[3]))) ++matches;
    }
    CHECK(matches == 1);
  }
  for (const ModuliPoint& p : r.points) CHECK(height_leq(p.point(), q(1)));
}

TEST_CASE("threaded enumeration is deterministic") {
  EnumerateOptions one, four;
  four.threads = 4;
  const auto a = enumerate_moduli(q(5, 4), one);
  const auto b = enumerate_moduli(q(5, 4), four);
  CHECK(a.points == b.points);
  CHECK(a.classes == b.classes);
  CHECK(a.report.raw == b.report.raw);
}

TEST_CASE("candidate budget") {
  EnumerateOptions tight;
  tight.candidate_limit = 1000;
  CHECK_THROWS_AS(enumerate_moduli(q(2), tight), Error);
  try {
    scan_l2(q(10), tight);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
}

TEST_CASE("L2 scan agrees with a full box search") {
  for (const auto& [h, strict] : {std::pair{q(7, 4), false}, std::pair{q(3, 2), true}}) {
    const std::int64_t b2 = to_int64(coordinate_bound(h, 2, strict));
    const std::int64_t b4 = to_int64(coordinate_bound(h, 4, strict));
    const std::int64_t b6 = to_int64(coordinate_bound(h, 6, strict));
    const std::int64_t b10 = to_int64(coordinate_bound(h, 10, strict));
    std::set<Tuple> expected;
    for (std::int64_t j2 = -b2; j2 <= b2; ++j2) {
      for (std::int64_t j4 = -b4; j4 <= b4; ++j4) {
        for (std::int64_t j6 = -b6; j6 <= b6; ++j6) {
          const auto c = j30_cubic<__int128>(j2, j4, j6);
          for (std::int64_t j10 = -b10; j10 <= b10; ++j10) {
            if (j10 == 0 || eval_cubic<__int128>(c, j10) != 0) continue;
            expected.insert(tuple_of(ModuliPoint(j2, j4, j6, j10)));
          }
        }
      }
    }
    EnumerateOptions options;
    options.strict = strict;
    const auto r = scan_l2(h, options);
    std::set<Tuple> got;
    for (const auto& p : r.points) got.insert(tuple_of(p));
    CHECK(got == expected);
    for (const auto& p : r.points) CHECK(in_l2(p));
  }
}

TEST_CASE("strict 3/2 box has no L2 points") {
  EnumerateOptions options;
  options.strict = true;
  CHECK(scan_l2(q(3, 2), options).points.empty());
}

TEST_CASE("published L2 list is the height 2 box and sits inside the height 3 box") {
  const std::set<Tuple> printed(reference::kL2HeightThree.begin(), reference::kL2HeightThree.end());
  REQUIRE(printed.size() == 34);
  const auto at2 = scan_l2(q(2));
  std::set<Tuple> got2;
  for (const auto& p : at2.points) got2.insert(tuple_of(p));
  CHECK(got2 == printed);
  CHECK(at2.classes.size() == 17);

  const auto at3 = scan_l2(q(3));
  std::set<Tuple> got3;
  for (const auto& p : at3.points) got3.insert(tuple_of(p));
  CHECK(std::includes(got3.begin(), got3.end(), printed.begin(), printed.end()));
  CHECK(got3.size() == 1520);
  CHECK(got3.count({0, 0, 180, 36}) == 1);
  CHECK(j30(ModuliPoint(0, 0, 180, 36)) == 0);
}

TEST_CASE("general bound equals F for the sextic weights up to 50") {
  for (unsigned long h = 1; h <= 50; ++h) {
    CHECK(count_bound_general(WeightSystem::reduced_igusa(), h) == count_sextic_f(h));
  }
}

TEST_CASE("L2 scan is the enumeration filtered by J30") {
  for (const auto& [h, strict] : {std::pair{q(1), false}, std::pair{q(5, 4), false}, std::pair{q(3, 2), false},
                                  std::pair{q(3, 2), true}}) {
    EnumerateOptions options;
    options.strict = strict;
    std::set<Tuple> expected;
    for (const auto& p : enumerate_moduli(h, options).points) {
      if (in_l2(p)) expected.insert(tuple_of(p));
    }
    std::set<Tuple> got;
    for (const auto& p : scan_l2(h, options).points) got.insert(tuple_of(p));
    CHECK(got == expected);
  }
}
