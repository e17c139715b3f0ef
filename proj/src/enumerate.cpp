#include "g2ml/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "g2ml/error.hpp"
#include "g2ml/loci.hpp"

namespace g2ml {

Integer count_bound_general(const WeightSystem& w, unsigned long h) {
  if (h == 0) {
    throw Error(ErrorCode::invalid_argument, "height must be at least 1");
  }
  const Integer hh = static_cast<unsigned long>(h);
  const std::size_t n = w.size() - 1;
  Integer total = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    Integer term = ipow(hh, w[n - i]);
    for (std::size_t j = 0; j < n - i; ++j) term *= 2 * ipow(hh, w[j]) + 1;
    total += term;
  }
  return total;
}

Integer count_sextic_f(unsigned long h) {
  static constexpr long kCoeffs[] = {8, 4, 4, 6, 2, 6, 3, 2, 3, 1, 1};
  const Integer hh = static_cast<unsigned long>(h);
  Integer acc = 0;
  for (long c : kCoeffs) acc = acc * hh + c;
  return hh * acc;
}

Integer count_sextic_f_factored(unsigned long h) {
  const Integer x = static_cast<unsigned long>(h);
  const Integer a = 2 * x + 1;
  const Integer b = 2 * x * x + 1;
  const Integer c = 2 * x * x * x + 1;
  return ipow(x, 5) * c * b * a + ipow(x, 3) * b * a + x * x * a + x;
}

Integer shell_count_g(unsigned long h) {
  static constexpr long kCoeffs[] = {88, -400, 1176, -2256, 3038, -2862, 1879, -812, 215, -28, 2};
  const Integer hh = static_cast<unsigned long>(h);
  Integer acc = 0;
  for (long c : kCoeffs) acc = acc * hh + c;
  return acc;
}

Integer count_even_weights(unsigned long h) { return count_sextic_f(h * h); }

nlohmann::json to_json(const CountReport& r) {
  return {{"bound", to_string(r.bound)},
          {"strict", r.strict},
          {"raw", to_string(r.raw)},
          {"normalized", r.normalized},
          {"classes", r.classes}};
}

Integer coordinate_bound(const Rational& h, unsigned q, bool strict) {
  if (h <= 0) {
    throw Error(ErrorCode::invalid_argument, "height bound must be positive");
  }
  const Rational p = rpow(h, q);
  if (!strict) return g2ml::floor(p);
  return g2ml::ceil(p) - 1;
}

std::vector<ModuliPoint> class_representatives(const std::vector<ModuliPoint>& points) {
  std::map<AbsoluteTriple, ModuliPoint> best;
  for (const ModuliPoint& p : points) {
    ModuliPoint c = sign_canonical(p);
    auto [it, inserted] = best.emplace(absolute_t(p), c);
    if (!inserted && c < it->second) it->second = std::move(c);
  }
  std::vector<ModuliPoint> out;
  out.reserve(best.size());
  for (auto& [key, p] : best) out.push_back(std::move(p));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Tuple = std::array<std::int64_t, 4>;

// wgcd = 1 under (2,4,6,10), for coordinates that fit in 64 bits.
bool normalized_i64(const Tuple& x) {
  std::int64_t g = 0;
  for (std::int64_t v : x) g = std::gcd(g, v);
  if (g == 1) return true;
  static constexpr unsigned kWeights[] = {2, 4, 6, 10};
  auto divides_power = [](std::int64_t p, unsigned e, std::int64_t v) {
    if (v == 0) return true;
    __int128 pw = 1;
    for (unsigned k = 0; k < e; ++k) {
      pw *= p;
      if (pw > static_cast<__int128>(v < 0 ? -v : v)) return false;
    }
    return v % static_cast<std::int64_t>(pw) == 0;
  };
  auto check = [&](std::int64_t p) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (!divides_power(p, kWeights[i], x[i])) return false;
    }
    return true;
  };
  for (std::int64_t p = 2; p * p <= g; ++p) {
    if (g % p != 0) continue;
    if (check(p)) return false;
    while (g % p == 0) g /= p;
  }
  return g <= 1 || !check(g);
}

ModuliPoint to_point(const Tuple& t) { return ModuliPoint::from_normalized(t[0], t[1], t[2], t[3]); }

std::int64_t bound_i64(const Rational& h, unsigned q, bool strict) {
  const Integer b = coordinate_bound(h, q, strict);
  if (!fits_int64(b)) {
    throw Error(ErrorCode::budget_exceeded, "height bound too large for enumeration");
  }
  return to_int64(b);
}

struct Box {
  std::int64_t b2, b4, b6, b10;
};

Box make_box(const Rational& h, bool strict) {
  if (h < 1) {
    throw Error(ErrorCode::invalid_argument, "height bound must be at least 1");
  }
  return {bound_i64(h, 2, strict), bound_i64(h, 4, strict), bound_i64(h, 6, strict),
          bound_i64(h, 10, strict)};
}

// Runs body(j2, sink) for every J2 in [-b2, b2] on `threads` workers and
// returns the concatenated, sorted sink contents.
template <class Body>
std::vector<Tuple> run_over_j2(std::int64_t b2, unsigned threads, Body body,
                               std::int64_t* visited = nullptr) {
  const unsigned workers = std::max(1u, threads);
  std::vector<std::vector<Tuple>> sinks(workers);
  std::vector<std::int64_t> counts(workers, 0);
  auto work = [&](unsigned w) {
    for (std::int64_t j2 = -b2 + w; j2 <= b2; j2 += workers) {
      counts[w] += body(j2, sinks[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<Tuple> out;
  for (auto& s : sinks) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (visited != nullptr) *visited = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  return out;
}

long double to_ld(__int128 v) { return static_cast<long double>(v); }
long double to_ld(const Integer& v) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

int sign_of(__int128 v) { return (v > 0) - (v < 0); }
int sign_of(const Integer& v) { return sgn(v); }

template <class T>
std::vector<std::int64_t> integer_roots(const std::array<T, 4>& c, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> roots;
  if (lo > hi) return roots;
  auto p = [&](std::int64_t x) { return eval_cubic<T>(c, T(static_cast<long>(x))); };

  // The derivative's roots split [lo, hi] into monotone pieces; a few
  // integers around each estimate are checked directly.
  std::vector<std::int64_t> marks = {lo, hi};
  const long double a = 3 * to_ld(c[3]);
  const long double b = 2 * to_ld(c[2]);
  const long double cc = to_ld(c[1]);
  const long double disc = b * b - 4 * a * cc;
  if (disc >= 0) {
    const long double q = -0.5L * (b + std::copysign(std::sqrt(disc), b));
    std::vector<long double> crit;
    if (q != 0) {
      crit.push_back(q / a);
      crit.push_back(cc / q);
    } else {
      crit.push_back(0);
    }
    for (long double r : crit) {
      if (!std::isfinite(r)) continue;
      const long double clipped =
          std::clamp(r, static_cast<long double>(lo) - 4, static_cast<long double>(hi) + 4);
      const auto base = static_cast<std::int64_t>(std::floor(clipped));
      for (std::int64_t d = -1; d <= 2; ++d) {
        const std::int64_t m = base + d;
        if (m >= lo && m <= hi) marks.push_back(m);
      }
    }
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::vector<int> signs(marks.size());
  for (std::size_t i = 0; i < marks.size(); ++i) {
    signs[i] = sign_of(p(marks[i]));
    if (signs[i] == 0) roots.push_back(marks[i]);
  }
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    std::int64_t l = marks[i];
    std::int64_t r = marks[i + 1];
    if (r - l < 2 || signs[i] == 0 || signs[i + 1] == 0 || signs[i] == signs[i + 1]) continue;
    while (r - l > 1) {
      const std::int64_t mid = l + (r - l) / 2;
      const int s = sign_of(p(mid));
      if (s == 0) {
        roots.push_back(mid);
        break;
      }
      (s == signs[i] ? l : r) = mid;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Upper estimate of |J30| over the box, to pick 128-bit or GMP arithmetic.
long double j30_magnitude(const Box& box) {
  long double total = 0;
  for (const J30Term& t : kJ30Terms) {
    total += std::fabs(static_cast<long double>(t.coeff)) *
             std::pow(static_cast<long double>(box.b2), t.e2) *
             std::pow(static_cast<long double>(box.b4), t.e4) *
             std::pow(static_cast<long double>(box.b6), t.e6) *
             std::pow(static_cast<long double>(box.b10), t.e10);
  }
  return total;
}

void check_budget(long double candidates, const EnumerateOptions& options) {
  if (candidates > options.candidate_limit) {
    throw Error(ErrorCode::budget_exceeded,
                "height box has " + std::to_string(static_cast<double>(candidates)) +
                    " candidates, above the configured limit");
  }
}

EnumerationResult finish(std::vector<Tuple> tuples, const Rational& h, bool strict, Integer raw) {
  EnumerationResult result;
  result.points.reserve(tuples.size());
  for (const Tuple& t : tuples) result.points.push_back(to_point(t));
  std::sort(result.points.begin(), result.points.end());
  result.classes = class_representatives(result.points);
  result.report.bound = h;
  result.report.strict = strict;
  result.report.raw = std::move(raw);
  result.report.normalized = result.points.size();
  result.report.classes = result.classes.size();
  return result;
}

}  // namespace

std::vector<std::int64_t> cubic_integer_roots(const std::array<__int128, 4>& c, std::int64_t lo,
                                              std::int64_t hi) {
  if (c[3] == 0) {
    throw Error(ErrorCode::invalid_argument, "leading coefficient of the cubic is zero");
  }
  return integer_roots(c, lo, hi);
}

EnumerationResult enumerate_moduli(const Rational& h, const EnumerateOptions& options) {
  const Box box = make_box(h, options.strict);
  const long double candidates = static_cast<long double>(2 * box.b2 + 1) * (2 * box.b4 + 1) *
                                 (2 * box.b6 + 1) * (2 * box.b10);
  check_budget(candidates, options);
  auto body = [&](std::int64_t j2, std::vector<Tuple>& sink) -> std::int64_t {
    std::int64_t visited = 0;
    for (std::int64_t j4 = -box.b4; j4 <= box.b4; ++j4) {
      for (std::int64_t j6 = -box.b6; j6 <= box.b6; ++j6) {
        for (std::int64_t j10 = -box.b10; j10 <= box.b10; ++j10) {
          if (j10 == 0) continue;
          ++visited;
          const Tuple t = {j2, j4, j6, j10};
          if (normalized_i64(t)) sink.push_back(t);
        }
      }
    }
    return visited;
  };
  std::int64_t visited = 0;
  auto tuples = run_over_j2(box.b2, options.threads, body, &visited);
  return finish(std::move(tuples), h, options.strict, Integer(static_cast<long>(visited)));
}

EnumerationResult scan_l2(const Rational& h, const EnumerateOptions& options) {
  const Box box = make_box(h, options.strict);
  const long double candidates =
      static_cast<long double>(2 * box.b2 + 1) * (2 * box.b4 + 1) * (2 * box.b6 + 1);
  check_budget(candidates, options);
  const bool wide = j30_magnitude(box) > 1e36L;

  auto keep = [](const Tuple& t, std::vector<Tuple>& sink) {
    if (normalized_i64(t)) {
      sink.push_back(t);
      return;
    }
    const ModuliPoint p(t[0], t[1], t[2], t[3]);
    sink.push_back({to_int64(p.j2()), to_int64(p.j4()), to_int64(p.j6()), to_int64(p.j10())});
  };
  auto body = [&](std::int64_t j2, std::vector<Tuple>& sink) -> std::int64_t {
    std::int64_t roots_seen = 0;
    for (std::int64_t j4 = -box.b4; j4 <= box.b4; ++j4) {
      for (std::int64_t j6 = -box.b6; j6 <= box.b6; ++j6) {
        std::vector<std::int64_t> roots;
        if (wide) {
          roots = integer_roots(j30_cubic<Integer>(Integer(static_cast<long>(j2)),
                                                   Integer(static_cast<long>(j4)),
                                                   Integer(static_cast<long>(j6))),
                                -box.b10, box.b10);
        } else {
          roots = integer_roots(j30_cubic<__int128>(j2, j4, j6), -box.b10, box.b10);
        }
        for (std::int64_t j10 : roots) {
          if (j10 == 0) continue;
          ++roots_seen;
          keep({j2, j4, j6, j10}, sink);
        }
      }
    }
    return roots_seen;
  };
  std::int64_t visited = 0;
  auto tuples = run_over_j2(box.b2, options.threads, body, &visited);
  return finish(std::move(tuples), h, options.strict, Integer(static_cast<long>(visited)));
}

}  // namespace g2ml
