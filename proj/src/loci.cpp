#include "g2ml/loci.hpp"

#include <numeric>
#include <set>

#include "g2ml/error.hpp"

namespace g2ml {
namespace {

struct L5Term {
  std::int64_t coeff;
  unsigned ea, eb, ez;
};

#include "l5_terms.inc"

template <std::size_t N>
Rational eval_l5(const L5Term (&terms)[N], const Rational& a, const Rational& b,
                 const Rational& z) {
  std::array<Rational, 9> pa, pb, pz;
  pa[0] = pb[0] = pz[0] = 1;
  for (std::size_t i = 1; i < 9; ++i) {
    pa[i] = pa[i - 1] * a;
    pb[i] = pb[i - 1] * b;
    pz[i] = pz[i - 1] * z;
  }
  Rational acc = 0;
  for (const L5Term& t : terms) {
    acc += Rational(static_cast<long>(t.coeff)) * pa[t.ea] * pb[t.eb] * pz[t.ez];
  }
  return acc;
}

Rational sq(const Rational& x) { return x * x; }
Rational cube(const Rational& x) { return x * x * x; }

}  // namespace

Integer j30(const ModuliPoint& p) {
  const auto c = j30_cubic<Integer>(p.j2(), p.j4(), p.j6());
  return eval_cubic(c, p.j10());
}

bool in_l2(const ModuliPoint& p) { return j30(p) == 0; }

BinarySextic l2_curve(const Rational& a, const Rational& b) {
  return BinarySextic({Rational(1), Rational(0), b, Rational(0), a, Rational(0), Rational(1)});
}

ModuliPoint l2_curve_point(const Rational& a, const Rational& b) {
  return igusa_invariants(l2_curve(a, b));
}

Rational l3_discriminant(const Rational& u, const Rational& v) {
  return v * (v - 27) * (4 * cube(u) - sq(u) * v - 18 * u * v + 4 * sq(v) + 27 * v);
}

L3Params::L3Params(Rational u, Rational v) : u_(std::move(u)), v_(std::move(v)) {
  if (l3_discriminant(u_, v_) == 0) {
    throw Error(ErrorCode::degenerate_parameters, "L3 parameters with vanishing discriminant");
  }
}

BinarySextic l3_curve(const L3Params& params) {
  const Rational& u = params.u();
  const Rational& v = params.v();
  const Polynomial f1({Rational(1), v, u * v, sq(v)});
  const Polynomial f2({Rational(1), 2 * v, sq(v), 4 * sq(v)});
  try {
    return BinarySextic::from_polynomial(f1 * f2);
  } catch (const Error& e) {
    throw Error(ErrorCode::degenerate_parameters, std::string("L3 curve: ") + e.what());
  }
}

ModuliPoint l3_point(const L3Params& params) {
  const Rational& u = params.u();
  const Rational& v = params.v();
  const Rational u2 = sq(u), u3 = u2 * u, u4 = u3 * u, u5 = u4 * u, u6 = u5 * u;
  const Rational v2 = sq(v), v3 = v2 * v, v4 = v3 * v, v5 = v4 * v, v6 = v5 * v;

  const Rational alpha = 4 * u2 - 12 * u * v + 3 * v2 + 252 * u - 54 * v - 405;
  const Rational beta = u4 * v - 24 * u4 - 66 * u3 * v + 9 * u2 * v2 + 1188 * u3 + 297 * u2 * v +
                        138 * u * v2 - 36 * v3 - 8424 * u * v + 945 * v2 + 14580 * v;
  const Rational gamma =
      2 * u6 * v2 - 8 * u5 * v3 + 2 * u4 * v4 - 40 * u6 * v + 106 * u5 * v2 + 495 * u4 * v3 -
      204 * u3 * v4 + 18 * u2 * v5 - 144 * u6 + 1476 * u5 * v - 18756 * u4 * v2 +
      4280 * u3 * v3 - 1038 * u2 * v4 + 564 * u * v5 - 72 * v6 + 160704 * u4 * v +
      4464 * u3 * v2 + 75024 * u2 * v3 - 33480 * u * v4 + 3186 * v5 - 104004 * u3 * v -
      1353996 * u2 * v2 + 315252 * u * v3 - 4032 * v4 + 3669786 * u * v2 - 622323 * v3 -
      2821230 * v2;
  const Rational delta = 4 * u3 - u2 * v - 18 * u * v + 4 * v2 + 27 * v;

  const std::array<Rational, 4> j = {2 * v * alpha, 4 * v * beta, 4 * v * gamma,
                                     -16 * v2 * (v - 27) * cube(delta)};
  return ModuliPoint::from_point(clear_denominators(j, WeightSystem::igusa()));
}

std::optional<L3Params> l3_search(const ModuliPoint& p, std::int64_t bound) {
  const AbsoluteTriple target = absolute_t(p);
  for (std::int64_t vd = 1; vd <= bound; ++vd) {
    for (std::int64_t vn = -bound; vn <= bound; ++vn) {
      if (vn == 0 || std::gcd(vn, vd) != 1) continue;
      for (std::int64_t ud = 1; ud <= bound; ++ud) {
        for (std::int64_t un = -bound; un <= bound; ++un) {
          if (std::gcd(un, ud) != 1) continue;
          const Rational u = make_rational(Integer(static_cast<long>(un)), Integer(static_cast<long>(ud)));
          const Rational v = make_rational(Integer(static_cast<long>(vn)), Integer(static_cast<long>(vd)));
          if (l3_discriminant(u, v) == 0) continue;
          const L3Params params(u, v);
          if (absolute_t(l3_point(params)) == target) return params;
        }
      }
    }
  }
  return std::nullopt;
}

Rational l5_constraint(const Rational& a, const Rational& b, const Rational& z) {
  return (1 + 2 * a) * sq(z) + (-sq(a) - 2 * a * b - 2 * a + 2 * b) * z + 2 * a * b + sq(b);
}

L5Params::L5Params(Rational a, Rational b, Rational z)
    : a_(std::move(a)), b_(std::move(b)), z_(std::move(z)) {
  if (z_ == 0 || z_ == 1) {
    throw Error(ErrorCode::degenerate_parameters, "L5 parameter z must avoid 0 and 1");
  }
  if (1 + 2 * a_ == 0) {
    throw Error(ErrorCode::degenerate_parameters, "L5 parameter a = -1/2");
  }
  if (l5_constraint(a_, b_, z_) != 0) {
    throw Error(ErrorCode::degenerate_parameters, "L5 parameters off the surface f(a,b,z) = 0");
  }
}

std::array<Rational, 4> l5_cubic(const L5Params& p) {
  return {eval_l5(kA0, p.a(), p.b(), p.z()), eval_l5(kA1, p.a(), p.b(), p.z()),
          eval_l5(kA2, p.a(), p.b(), p.z()), eval_l5(kA3, p.a(), p.b(), p.z())};
}

BinarySextic l5_curve(const L5Params& params) {
  const auto c = l5_cubic(params);
  const Polynomial f = Polynomial({Rational(0), Rational(-1), Rational(1)}) *
                       Polynomial({c[0], c[1], c[2], c[3]});
  try {
    return BinarySextic::from_polynomial(f);
  } catch (const Error& e) {
    throw Error(ErrorCode::degenerate_parameters, std::string("degenerate L5 parameters: ") + e.what());
  }
}

L5Slice l5_slice(const Rational& s) {
  if (s == 0 || s == 1) {
    throw Error(ErrorCode::invalid_argument, "slice value must avoid 0 and 1");
  }
  // Substituting b = m a - s with m = -s t / 2 leaves a linear equation in a.
  const Polynomial den({Rational(-4), -4 * (1 - s), s});
  const RationalFunction a(Polynomial::constant(16 * (1 - s)), den);
  const RationalFunction m(Polynomial({Rational(0), -s / 2}));
  const RationalFunction b = m * a - RationalFunction::constant(s);
  return {s, a, b};
}

std::vector<L5Sample> l5_generate(std::size_t n, std::uint64_t seed, const L5GenConfig& config) {
  if (n == 0) {
    throw Error(ErrorCode::invalid_argument, "number of points must be positive");
  }
  if (config.slices == 0) {
    throw Error(ErrorCode::invalid_argument, "slice count must be positive");
  }
  std::vector<L5Sample> out;
  std::set<AbsoluteTriple> seen;
  for (std::size_t j = 0; j < config.slices; ++j) {
    const std::size_t quota = n / config.slices + (j < n % config.slices ? 1 : 0);
    if (quota == 0) continue;
    Rng rng = stream(seed, j);
    std::size_t slice_redraws = 0;
    std::size_t taken = 0;
    while (taken < quota) {
      Rational s;
      do {
        s = random_rational(rng, config.s_range);
      } while (s == 0 || s == 1);
      const L5Slice slice = l5_slice(s);
      std::size_t failures = 0;
      while (taken < quota && failures < config.max_retries) {
        const Rational t = random_rational(rng, config.t_range);
        try {
          L5Params params(slice.a(t), slice.b(t), s);
          ModuliPoint p = igusa_invariants(l5_curve(params));
          if (!seen.insert(absolute_t(p)).second) {
            ++failures;
            continue;
          }
          out.push_back({std::move(params), std::move(p)});
          ++taken;
          failures = 0;
        } catch (const Error&) {
          ++failures;
        }
      }
      if (taken < quota && ++slice_redraws > config.max_retries) {
        throw Error(ErrorCode::retries_exhausted, "L5 generation exhausted its retries");
      }
    }
  }
  return out;
}

std::vector<ModuliPoint> l5_generate_points(std::size_t n, std::uint64_t seed,
                                            const L5GenConfig& config) {
  std::vector<ModuliPoint> out;
  for (auto& sample : l5_generate(n, seed, config)) out.push_back(std::move(sample.point));
  return out;
}

UVWTriple uvw_from_params(const L5Params& params) {
  const Rational& a = params.a();
  const Rational& b = params.b();
  const Rational& z = params.z();
  const Rational den = b * (a + b + 1);
  if (den == 0) {
    throw Error(ErrorCode::degenerate_parameters, "b (a + b + 1) vanishes");
  }
  return {2 * a * (a * b + sq(b) + b + a + 1) / den, cube(a) / den,
          cube(sq(z) - z + 1) / (sq(z) * sq(z - 1))};
}

std::array<Rational, 3> uvw_coefficients(const Rational& u, const Rational& v) {
  const Rational u2 = sq(u), u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  const Rational v2 = sq(v), v3 = v2 * v, v4 = v3 * v;
  const Rational c2 = 64 * v2 * sq(u - 4 * v + 1);
  const Rational c1 =
      -4 * v *
      (-272 * v2 * u - 20 * v * u2 + 2592 * v3 - 4672 * v2 + 4 * u3 + 16 * v3 * u2 - 15 * v * u4 -
       96 * v2 * u2 + 24 * v2 * u3 + 2 * u5 - 12 * u4 + 92 * v * u3 + 576 * v * u - 128 * v4 -
       288 * v3 * u);
  const Rational c0 = cube(u2 + 4 * u * v + 4 * v2 - 48 * v);
  return {c0, c1, c2};
}

Rational uvw_residual(const UVWTriple& t) {
  const auto c = uvw_coefficients(t.u, t.v);
  return (c[2] * t.w + c[1]) * t.w + c[0];
}

L3Params random_l3_params(Rng& rng, const RationalRange& range, std::size_t max_retries) {
  for (std::size_t i = 0; i < max_retries; ++i) {
    const Rational u = random_rational(rng, range);
    const Rational v = random_rational(rng, range);
    if (l3_discriminant(u, v) != 0) return L3Params(u, v);
  }
  throw Error(ErrorCode::retries_exhausted, "no valid L3 parameters drawn");
}

std::pair<Rational, Rational> random_l2_params(Rng& rng, const RationalRange& range,
                                               std::size_t max_retries) {
  for (std::size_t i = 0; i < max_retries; ++i) {
    const Rational a = random_rational(rng, range);
    const Rational b = random_rational(rng, range);
    try {
      (void)l2_curve(a, b);
      return {a, b};
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::retries_exhausted, "no nonsingular L2 parameters drawn");
}

L5Params random_l5_params(Rng& rng, const RationalRange& s_range, const RationalRange& t_range,
                          std::size_t max_retries) {
  for (std::size_t i = 0; i < max_retries; ++i) {
    const Rational s = random_rational(rng, s_range);
    if (s == 0 || s == 1) continue;
    const L5Slice slice = l5_slice(s);
    const Rational t = random_rational(rng, t_range);
    try {
      return L5Params(slice.a(t), slice.b(t), s);
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::retries_exhausted, "no valid L5 parameters drawn");
}

}  // namespace g2ml
