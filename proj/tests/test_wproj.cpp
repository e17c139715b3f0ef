#include <doctest.h>

#include <cmath>
#include <random>

#include "g2ml/error.hpp"
#include "g2ml/wproj.hpp"

using namespace g2ml;

namespace {

WeightedPoint pt(std::vector<long> xs, std::vector<unsigned> w) {
  std::vector<Integer> c;
  for (long x : xs) c.emplace_back(x);
  return WeightedPoint(std::move(c), WeightSystem(std::move(w)));
}

const std::vector<unsigned> kIgusa = {2, 4, 6, 10};

// Largest d with d^q_i | x_i, by scanning all candidates up to |gcd|.
long brute_wgcd(const std::vector<long>& xs, const std::vector<unsigned>& w) {
  long g = 0;
  for (long x : xs) g = std::gcd(g, x);
  long best = 1;
  for (long d = 2; d <= std::abs(g); ++d) {
    bool ok = true;
    for (std::size_t i = 0; i < xs.size() && ok; ++i) {
      if (xs[i] == 0) continue;
      long pw = 1;
      for (unsigned k = 0; k < w[i] && ok; ++k) {
        pw *= d;
        if (pw > std::abs(xs[i])) ok = false;
      }
      if (ok && xs[i] % pw != 0) ok = false;
    }
    if (ok) best = d;
  }
  return best;
}

}  // namespace

TEST_CASE("weight system validation") {
  CHECK_THROWS_AS(WeightSystem({}), Error);
  CHECK_THROWS_AS(WeightSystem({1, 0}), Error);
  CHECK(WeightSystem::igusa().gcd() == 2);
  CHECK(WeightSystem::reduced_igusa().gcd() == 1);
  CHECK_THROWS_AS(pt({0, 0}, {1, 2}), Error);
  CHECK_THROWS_AS(pt({1, 0}, {1, 2, 3}), Error);
}

TEST_CASE("scalar action") {
  const auto p = pt({4, 16, 64, 1024}, kIgusa);
  const auto q = scalar_star(Rational(1, 2), p);
  for (const auto& x : q) CHECK(x == 1);
  const auto r = scalar_star(Rational(-1), pt({1, 1, 1, 1}, kIgusa));
  for (const auto& x : r) CHECK(x == 1);
  CHECK(scalar_star(Rational(1), p)[3] == 1024);
  CHECK_THROWS_AS(scalar_star(Rational(0), p), Error);
}

TEST_CASE("scalar action composes") {
  const auto p = pt({3, -5, 7, 2}, {1, 2, 3, 5});
  const Rational l(2, 3), m(-5, 7);
  const auto lm = scalar_star(l * m, p);
  const auto inner = scalar_star(m, p);
  const auto nested = scalar_star(l, inner, p.weights());
  CHECK(nested == lm);
}

TEST_CASE("wgcd examples") {
  CHECK(wgcd(pt({12, 36}, {1, 2})) == 6);
  CHECK(wgcd(pt({2, 2, 2, 2}, {1, 2, 3, 5})) == 1);
  CHECK(wgcd(pt({1, 0, 0, 0}, {1, 2, 3, 5})) == 1);
  CHECK(wgcd(pt({4, 16, 64, 1024}, kIgusa)) == 2);
}

TEST_CASE("absolute wgcd examples") {
  CHECK(abs_wgcd(pt({2, 4, 8, 32}, kIgusa)) == RadicalScalar{2, 2});
  CHECK(abs_wgcd(pt({4, 16, 64, 1024}, kIgusa)) == RadicalScalar{2, 1});
  CHECK(abs_wgcd(pt({1, 1, 1, 1}, kIgusa)) == RadicalScalar{1, 1});
  CHECK(abs_wgcd(pt({2, 4, 8, 32}, kIgusa)).value() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("absolutely normalized points can have a common factor") {
  const auto p = pt({2, 2, 2, 2}, {1, 2, 3, 5});
  CHECK(abs_wgcd(p) == RadicalScalar{1, 1});
  CHECK(abs_normalize(p) == p);
}

TEST_CASE("normalization examples") {
  CHECK(normalize(pt({4, 16, 64, 1024}, kIgusa)) == pt({1, 1, 1, 1}, kIgusa));
  CHECK(normalize(pt({2, 4, 8, 32}, kIgusa)) == pt({2, 4, 8, 32}, kIgusa));
  CHECK(normalize(pt({1, 0, 0, 0}, kIgusa)) == pt({1, 0, 0, 0}, kIgusa));
  CHECK(abs_normalize(pt({2, 4, 8, 32}, kIgusa)) == pt({1, 1, 1, 1}, kIgusa));
  CHECK(abs_normalize(pt({4, 16, 64, 1024}, kIgusa)) == pt({1, 1, 1, 1}, kIgusa));
}

TEST_CASE("height examples") {
  const Height h = height(pt({2, 4, 8, 32}, kIgusa));
  CHECK(h.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.argmax == 0);
  CHECK(height(pt({0, -15, 45, 8}, kIgusa)).value == doctest::Approx(std::pow(15.0, 0.25)));
  CHECK(height(pt({0, -15, 45, 8}, kIgusa)).argmax == 1);
  CHECK(height(pt({1, 1, 1, 1}, kIgusa)).value == doctest::Approx(1.0));
  CHECK(abs_height(pt({2, 4, 8, 32}, kIgusa)).value == doctest::Approx(1.0));
  CHECK(abs_height(pt({4, -14, 2, 1}, kIgusa)).value == doctest::Approx(2.0));
  CHECK(abs_height(pt({0, 0, 0, 1}, kIgusa)).value == doctest::Approx(1.0));
}

TEST_CASE("height bounds are decided exactly") {
  CHECK(height_leq(pt({1, 0, -1, 1}, kIgusa), Rational(1)));
  CHECK(height_leq(pt({4, -14, 2, 1}, kIgusa), Rational(3)));
  CHECK_FALSE(height_leq(pt({4, -14, 2, 1}, kIgusa), Rational(3, 2)));
  CHECK(height_leq(pt({0, 0, 0, 1}, kIgusa), Rational(1)));
  CHECK_THROWS_AS(height_leq(pt({0, 0, 0, 1}, kIgusa), Rational(0)), Error);

  // |x_i| = h^{q_i} exactly: passes the closed bound, fails the open one.
  const auto edge = pt({9, 0, 0, 1}, kIgusa);
  CHECK(height_leq(edge, Rational(3)));
  CHECK_FALSE(height_leq(edge, Rational(3), true));
  const auto mid = pt({0, 16, 0, 1}, kIgusa);
  CHECK(height_leq(mid, Rational(2)));
  CHECK_FALSE(height_leq(mid, Rational(2), true));
  CHECK(height_leq(pt({0, 15, 0, 1}, kIgusa), Rational(2), true));
  // (3/2)^4 = 81/16 sits between 5 and 6.
  CHECK(height_leq(pt({0, 5, 0, 1}, kIgusa), Rational(3, 2), true));
  CHECK_FALSE(height_leq(pt({0, 6, 0, 1}, kIgusa), Rational(3, 2)));
}

TEST_CASE("exact root comparison") {
  CHECK(compare_root(Integer(15), 4, Integer(45), 6) > 0);
  CHECK(compare_root(Integer(4), 2, Integer(-16), 4) == 0);
  CHECK(compare_root(Integer(8), 10, Integer(2), 2) < 0);
}

TEST_CASE("json round trip") {
  const auto p = pt({-3, 0, 12345678901, 7}, kIgusa);
  CHECK(weighted_point_from_json(to_json(p), p.weights()) == p);
  CHECK(weight_system_from_json(to_json(p.weights())) == p.weights());
  const RadicalScalar d{2, 2};
  CHECK(to_json(d).dump() == R"({"base":"2","root":2})");
  CHECK(radical_from_json(to_json(d)) == d);
}

TEST_CASE("random tuples: wgcd properties and brute-force agreement") {
  std::mt19937_64 rng(11);
  const std::vector<std::vector<unsigned>> systems = {{1, 2, 3, 5}, {2, 4, 6, 10}, {1, 2}, {3, 3, 6}};
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> which(0, 3);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto& w = systems[static_cast<std::size_t>(which(rng))];
    std::vector<long> xs;
    for (unsigned q : w) {
      long x = small(rng);
      // Plant a weighted factor often enough that nontrivial cases occur.
      if (iter % 2 == 0) x *= static_cast<long>(std::pow(2, q)) * (iter % 3 == 0 ? 3 : 1);
      xs.push_back(x);
    }
    if (std::all_of(xs.begin(), xs.end(), [](long x) { return x == 0; })) xs[0] = 1;
    const auto p = pt(xs, w);
    const Integer d = wgcd(p);
    CHECK(d == brute_wgcd(xs, w));
    const WeightedPoint n = normalize(p);
    CHECK(wgcd(n) == 1);
    CHECK(normalize(n) == n);
    const WeightedPoint a = abs_normalize(p);
    CHECK(abs_normalize(a) == a);
    CHECK(abs_wgcd(a) == RadicalScalar{1, 1});
    for (long k : {2L, 3L, 6L}) {
      CHECK(normalize(clear_denominators(scalar_star(Rational(k), p), p.weights())) == n);
    }
  }
}

TEST_CASE("halved weights: abs_wgcd squared is the (1,2,3,5) wgcd") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-50, 50);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<long> xs = {dist(rng) * 4, dist(rng) * 16, dist(rng) * 8, dist(rng) * 32};
    if (iter % 5 == 0) xs = {dist(rng), dist(rng), dist(rng), dist(rng) + 100};
    if (std::all_of(xs.begin(), xs.end(), [](long x) { return x == 0; })) xs[3] = 1;
    const RadicalScalar d = abs_wgcd(pt(xs, kIgusa));
    const Integer e = wgcd(pt(xs, {1, 2, 3, 5}));
    CHECK(d.power(2) == e);
  }
}

TEST_CASE("float height agrees away from boundaries") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> dist(-5000, 5000);
  int compared = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    const auto p = pt({dist(rng), dist(rng), dist(rng), dist(rng) | 1}, kIgusa);
    const double h = height(p).value;
    const Rational bound(static_cast<long>(std::llround(h * 100)), 100L);
    if (std::abs(to_double(bound) - h) < 1e-6) continue;
    ++compared;
    CHECK(height_leq(p, bound) == (h <= to_double(bound)));
  }
  CHECK(compared > 1900);
}
