#include "g2ml/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "g2ml/error.hpp"

namespace g2ml {
namespace {

const std::vector<std::uint32_t>& small_primes(std::uint32_t limit) {
  static std::mutex mu;
  static std::vector<std::uint32_t> primes;
  static std::uint32_t sieved = 0;
  std::lock_guard lock(mu);
  if (sieved < limit) {
    std::vector<bool> composite(limit + 1, false);
    primes.clear();
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) {
        composite[j] = true;
      }
    }
    sieved = limit;
  }
  return primes;
}

using Clock = std::chrono::steady_clock;

// Brent's cycle finding for a nontrivial factor of composite n.
// Returns 0 on timeout.
Integer pollard_brent(const Integer& n, unsigned long seed, Clock::time_point deadline) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = seed % n;
  const Integer c = (seed * 7 + 1) % n;
  const unsigned long m = 128;
  Integer g = 1;
  Integer r = 1;
  Integer q = 1;
  Integer x, ys, t;
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) {
      y = (y * y + c) % n;
    }
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      const Integer steps = std::min<Integer>(Integer(m), r - k);
      for (Integer i = 0; i < steps; ++i) {
        y = (y * y + c) % n;
        t = abs(x - y);
        q = (q * t) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      if (Clock::now() > deadline) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      t = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split(const Integer& n, std::map<Integer, unsigned>& out, Integer& unfactored,
           Clock::time_point deadline) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  Integer root;
  // Perfect powers defeat rho; peel them first.
  for (unsigned long k = 2; mpz_sizeinbase(n.get_mpz_t(), 2) / k >= 1; ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      std::map<Integer, unsigned> sub;
      Integer rest = 1;
      split(root, sub, rest, deadline);
      for (const auto& [p, e] : sub) out[p] += e * static_cast<unsigned>(k);
      if (rest != 1) unfactored *= ipow(rest, k);
      return;
    }
    if (k > 64) break;
  }
  for (unsigned long seed = 2; seed < 64; ++seed) {
    const Integer d = pollard_brent(n, seed, deadline);
    if (d == 0) break;
    if (d != n && d != 1) {
      split(d, out, unfactored, deadline);
      split(n / d, out, unfactored, deadline);
      return;
    }
  }
  unfactored *= n;
}

}  // namespace

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) {
    throw Error(ErrorCode::invalid_argument, "valuation of zero");
  }
  Integer rest = n;
  unsigned e = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

Factorization factorize(const Integer& n, const FactorOptions& options) {
  if (n == 0) {
    throw Error(ErrorCode::invalid_argument, "cannot factor zero");
  }
  Factorization result;
  Integer rest = abs(n);
  const auto& primes = small_primes(std::max<std::uint32_t>(options.trial_limit, 2));
  for (const std::uint32_t p : primes) {
    if (p > options.trial_limit) break;
    if (Integer(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    result.primes.emplace_back(Integer(p), e);
  }
  if (rest == 1) return result;
  const auto deadline = Clock::now() + options.timeout;
  std::map<Integer, unsigned> large;
  Integer unfactored = 1;
  split(rest, large, unfactored, deadline);
  for (const auto& [p, e] : large) result.primes.emplace_back(p, e);
  std::sort(result.primes.begin(), result.primes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Merge a prime that showed up both in trial division and in rho output.
  std::vector<std::pair<Integer, unsigned>> merged;
  for (auto& pe : result.primes) {
    if (!merged.empty() && merged.back().first == pe.first) {
      merged.back().second += pe.second;
    } else {
      merged.push_back(std::move(pe));
    }
  }
  result.primes = std::move(merged);
  result.unfactored = unfactored;
  return result;
}

}  // namespace g2ml
