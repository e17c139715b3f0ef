#include "g2ml/wproj.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "g2ml/error.hpp"

namespace g2ml {

WeightSystem::WeightSystem(std::vector<unsigned> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorCode::invalid_argument, "weight system must be non-empty");
  }
  unsigned g = 0;
  for (const unsigned q : weights_) {
    if (q == 0) {
      throw Error(ErrorCode::invalid_argument, "weights must be positive");
    }
    g = std::gcd(g, q);
  }
  gcd_ = g;
}

WeightSystem WeightSystem::igusa() { return WeightSystem({2, 4, 6, 10}); }
WeightSystem WeightSystem::reduced_igusa() { return WeightSystem({1, 2, 3, 5}); }

WeightedPoint::WeightedPoint(std::vector<Integer> coords, WeightSystem weights)
    : coords_(std::move(coords)), weights_(std::move(weights)) {
  if (coords_.size() != weights_.size()) {
    throw Error(ErrorCode::invalid_argument, "coordinate count does not match weight count");
  }
  if (std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; })) {
    throw Error(ErrorCode::invalid_argument, "weighted point with all coordinates zero");
  }
}

bool lex_less(const WeightedPoint& a, const WeightedPoint& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(),
                                      b.coords().end());
}

double RadicalScalar::value() const { return std::exp(log_abs(base) / root); }

Integer RadicalScalar::power(unsigned k) const {
  if (k % root != 0) {
    throw Error(ErrorCode::invalid_argument, "radical power is not an integer");
  }
  return ipow(base, k / root);
}

std::vector<Rational> scalar_star(const Rational& lambda, std::span<const Rational> coords,
                                  const WeightSystem& weights) {
  if (lambda == 0) {
    throw Error(ErrorCode::zero_scalar, "scalar action by zero");
  }
  if (coords.size() != weights.size()) {
    throw Error(ErrorCode::invalid_argument, "coordinate count does not match weight count");
  }
  std::vector<Rational> out;
  out.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out.push_back(rpow(lambda, weights[i]) * coords[i]);
  }
  return out;
}

std::vector<Rational> scalar_star(const Rational& lambda, const WeightedPoint& p) {
  std::vector<Rational> coords(p.coords().begin(), p.coords().end());
  return scalar_star(lambda, coords, p.weights());
}

WeightedPoint clear_denominators(std::span<const Rational> coords, const WeightSystem& weights) {
  Integer k = 1;
  for (const Rational& x : coords) {
    mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), x.get_den().get_mpz_t());
  }
  const auto scaled = scalar_star(Rational(k), coords, weights);
  std::vector<Integer> out;
  out.reserve(scaled.size());
  for (const Rational& x : scaled) {
    out.push_back(x.get_num());
  }
  return WeightedPoint(std::move(out), weights);
}

namespace {

Integer coordinate_gcd(const WeightedPoint& p) {
  Integer g = 0;
  for (const Integer& x : p.coords()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return g;
}

// Smallest floor(scale * v_prime(x_i) / q_i) over the nonzero coordinates.
unsigned min_scaled_valuation(const WeightedPoint& p, const Integer& prime, unsigned scale) {
  unsigned best = ~0u;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    const unsigned v = valuation(p[i], prime);
    best = std::min(best, scale * v / p.weights()[i]);
    if (best == 0) break;
  }
  return best;
}

WeightedPoint divide_by_power(const WeightedPoint& p, const std::vector<Integer>& divisors) {
  std::vector<Integer> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Integer x = p[i];
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), divisors[i].get_mpz_t());
    out.push_back(std::move(x));
  }
  return WeightedPoint(std::move(out), p.weights());
}

}  // namespace

WgcdResult wgcd_detailed(const WeightedPoint& p, const FactorOptions& options) {
  const Integer g = coordinate_gcd(p);
  WgcdResult result;
  if (g == 1) return result;
  const Factorization f = factorize(g, options);
  for (const auto& [prime, exponent] : f.primes) {
    (void)exponent;
    const unsigned e = min_scaled_valuation(p, prime, 1);
    if (e > 0) result.value *= ipow(prime, e);
  }
  result.exact = f.complete();
  return result;
}

Integer wgcd(const WeightedPoint& p, const FactorOptions& options) {
  return wgcd_detailed(p, options).value;
}

RadicalScalar abs_wgcd(const WeightedPoint& p, const FactorOptions& options) {
  const Integer g = coordinate_gcd(p);
  RadicalScalar d;
  if (g == 1) return d;
  const unsigned root = p.weights().gcd();
  const Factorization f = factorize(g, options);
  std::vector<std::pair<Integer, unsigned>> parts;
  unsigned common = root;
  for (const auto& [prime, exponent] : f.primes) {
    (void)exponent;
    const unsigned k = min_scaled_valuation(p, prime, root);
    if (k == 0) continue;
    parts.emplace_back(prime, k);
    common = std::gcd(common, k);
  }
  for (const auto& [prime, k] : parts) {
    d.base *= ipow(prime, k / common);
  }
  d.root = parts.empty() ? 1 : root / common;
  return d;
}

WeightedPoint normalize(const WeightedPoint& p, const FactorOptions& options) {
  const Integer d = wgcd(p, options);
  if (d == 1) return p;
  std::vector<Integer> divisors;
  for (std::size_t i = 0; i < p.size(); ++i) {
    divisors.push_back(ipow(d, p.weights()[i]));
  }
  return divide_by_power(p, divisors);
}

WeightedPoint abs_normalize(const WeightedPoint& p, const FactorOptions& options) {
  const RadicalScalar d = abs_wgcd(p, options);
  if (d.base == 1) return p;
  std::vector<Integer> divisors;
  for (std::size_t i = 0; i < p.size(); ++i) {
    divisors.push_back(d.power(p.weights()[i]));
  }
  return divide_by_power(p, divisors);
}

bool is_normalized(const WeightedPoint& p, const FactorOptions& options) {
  return wgcd(p, options) == 1;
}

std::strong_ordering compare_root(const Integer& a, unsigned qa, const Integer& b, unsigned qb) {
  const Integer lhs = ipow(abs(a), qb);
  const Integer rhs = ipow(abs(b), qa);
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool height_leq_normalized(const WeightedPoint& p, const Rational& h, bool strict) {
  if (h <= 0) {
    throw Error(ErrorCode::invalid_argument, "height bound must be positive");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const unsigned q = p.weights()[i];
    const Integer lhs = abs(p[i]) * ipow(h.get_den(), q);
    const Integer rhs = ipow(h.get_num(), q);
    if (strict ? lhs >= rhs : lhs > rhs) return false;
  }
  return true;
}

bool height_leq(const WeightedPoint& p, const Rational& h, bool strict) {
  return height_leq_normalized(normalize(p), h, strict);
}

namespace {

Height height_of_normalized(const WeightedPoint& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (compare_root(p[i], p.weights()[i], p[best], p.weights()[best]) > 0) {
      best = i;
    }
  }
  Height h;
  h.argmax = best;
  h.coordinate = p[best];
  h.value = p[best] == 0 ? 0.0 : std::exp(log_abs(p[best]) / p.weights()[best]);
  return h;
}

}  // namespace

Height height(const WeightedPoint& p) { return height_of_normalized(normalize(p)); }

Height abs_height(const WeightedPoint& p) { return height_of_normalized(abs_normalize(p)); }

nlohmann::json to_json(const WeightSystem& w) {
  return nlohmann::json(std::vector<unsigned>(w.weights().begin(), w.weights().end()));
}

nlohmann::json to_json(const WeightedPoint& p) {
  auto out = nlohmann::json::array();
  for (const Integer& x : p.coords()) out.push_back(to_string(x));
  return out;
}

nlohmann::json to_json(const RadicalScalar& d) {
  return {{"base", to_string(d.base)}, {"root", d.root}};
}

WeightSystem weight_system_from_json(const nlohmann::json& j) {
  return WeightSystem(j.get<std::vector<unsigned>>());
}

WeightedPoint weighted_point_from_json(const nlohmann::json& coords, const WeightSystem& w) {
  std::vector<Integer> out;
  for (const auto& x : coords) out.push_back(parse_integer(x.get<std::string>()));
  return WeightedPoint(std::move(out), w);
}

RadicalScalar radical_from_json(const nlohmann::json& j) {
  RadicalScalar d;
  d.base = parse_integer(j.at("base").get<std::string>());
  d.root = j.at("root").get<unsigned>();
  return d;
}

}  // namespace g2ml
