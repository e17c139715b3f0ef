#include "g2ml/igusa.hpp"

#include <cstdint>

#include "g2ml/error.hpp"

namespace g2ml {
namespace {

struct IgusaTerm {
  std::int64_t coeff;
  std::uint8_t exps[7];
};

#include "igusa_terms.inc"

template <std::size_t N>
Integer eval_terms(const IgusaTerm (&terms)[N], const std::array<std::array<Integer, 11>, 7>& pw) {
  Integer acc = 0;
  Integer t;
  for (const IgusaTerm& term : terms) {
    t = static_cast<long>(term.coeff);
    for (std::size_t i = 0; i < 7; ++i) {
      if (term.exps[i] != 0) t *= pw[i][term.exps[i]];
    }
    acc += t;
  }
  return acc;
}

std::array<std::array<Integer, 11>, 7> power_table(const std::array<Integer, 7>& a, unsigned top) {
  std::array<std::array<Integer, 11>, 7> pw;
  for (std::size_t i = 0; i < 7; ++i) {
    pw[i][0] = 1;
    for (unsigned e = 1; e <= top; ++e) pw[i][e] = pw[i][e - 1] * a[i];
  }
  return pw;
}

Integer discriminant(const std::array<Integer, 7>& a) {
  return eval_terms(kI10, power_table(a, 10));
}

}  // namespace

BinarySextic::BinarySextic(std::array<Rational, 7> coeffs) : a_(std::move(coeffs)) {
  for (auto& c : a_) c.canonicalize();
  if (a_[6] == 0 && a_[5] == 0) {
    throw Error(ErrorCode::invalid_argument, "sextic has degree below 5");
  }
  if (discriminant(integral()) == 0) {
    throw Error(ErrorCode::singular_sextic, "sextic has a repeated root");
  }
}

BinarySextic BinarySextic::from_polynomial(const Polynomial& f) {
  if (f.degree() > 6) {
    throw Error(ErrorCode::invalid_argument, "polynomial degree exceeds 6");
  }
  std::array<Rational, 7> a;
  for (std::size_t i = 0; i < 7; ++i) a[i] = f[i];
  return BinarySextic(a);
}

Polynomial BinarySextic::polynomial() const {
  return Polynomial(std::vector<Rational>(a_.begin(), a_.end()));
}

std::array<Integer, 7> BinarySextic::integral() const {
  Integer den = 1;
  for (const auto& c : a_) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::array<Integer, 7> out;
  Integer g = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    out[i] = a_[i].get_num() * (den / a_[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

ModuliPoint::ModuliPoint(Integer j2, Integer j4, Integer j6, Integer j10) {
  if (j10 == 0) {
    throw Error(ErrorCode::singular_sextic, "moduli point with J10 = 0");
  }
  const WeightedPoint p = normalize(
      WeightedPoint({std::move(j2), std::move(j4), std::move(j6), std::move(j10)},
                    WeightSystem::igusa()));
  for (std::size_t i = 0; i < 4; ++i) j_[i] = p[i];
}

ModuliPoint ModuliPoint::from_normalized(Integer j2, Integer j4, Integer j6, Integer j10) {
  if (j10 == 0) {
    throw Error(ErrorCode::singular_sextic, "moduli point with J10 = 0");
  }
  ModuliPoint p;
  p.j_ = {std::move(j2), std::move(j4), std::move(j6), std::move(j10)};
  return p;
}

ModuliPoint ModuliPoint::from_point(const WeightedPoint& p) {
  if (!(p.weights() == WeightSystem::igusa())) {
    throw Error(ErrorCode::invalid_argument, "moduli points carry weights (2,4,6,10)");
  }
  return ModuliPoint(p[0], p[1], p[2], p[3]);
}

WeightedPoint ModuliPoint::point() const {
  return WeightedPoint({j_[0], j_[1], j_[2], j_[3]}, WeightSystem::igusa());
}

std::strong_ordering ModuliPoint::operator<=>(const ModuliPoint& o) const {
  for (std::size_t i = 0; i < 4; ++i) {
    const int c = cmp(j_[i], o.j_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string ModuliPoint::to_string() const {
  return "[" + g2ml::to_string(j_[0]) + ", " + g2ml::to_string(j_[1]) + ", " +
         g2ml::to_string(j_[2]) + ", " + g2ml::to_string(j_[3]) + "]";
}

bool AbsoluteTriple::operator<(const AbsoluteTriple& o) const {
  if (system != o.system) return system < o.system;
  if (t1 != o.t1) return t1 < o.t1;
  if (t2 != o.t2) return t2 < o.t2;
  return t3 < o.t3;
}

std::array<Integer, 4> raw_invariants(const std::array<Integer, 7>& a) {
  const auto pw = power_table(a, 10);
  return {eval_terms(kI2, pw), eval_terms(kI4, pw), eval_terms(kI6, pw), eval_terms(kI10, pw)};
}

ModuliPoint igusa_invariants(const BinarySextic& f) {
  auto inv = raw_invariants(f.integral());
  return ModuliPoint(std::move(inv[0]), std::move(inv[1]), std::move(inv[2]), std::move(inv[3]));
}

AbsoluteTriple absolute_t(const ModuliPoint& p) {
  const Integer& d = p.j10();
  return {make_rational(ipow(p.j2(), 5), d), make_rational(ipow(p.j4(), 5), ipow(d, 2)),
          make_rational(ipow(p.j6(), 5), ipow(d, 3)), AbsoluteSystem::t};
}

AbsoluteTriple absolute_i(const ModuliPoint& p) {
  const Integer d6 = ipow(p.j10(), 6);
  return {make_rational(ipow(p.j2(), 30), d6), make_rational(ipow(p.j4(), 15), d6),
          make_rational(ipow(p.j6(), 10), d6), AbsoluteSystem::i};
}

bool same_moduli(const ModuliPoint& p, const ModuliPoint& q) {
  return absolute_t(p) == absolute_t(q);
}

WeightedPoint veronese(const ModuliPoint& p) {
  return normalize(WeightedPoint({p.j2() * p.j2(), p.j4() * p.j4(), p.j6() * p.j6(),
                                  p.j10() * p.j10()},
                                 WeightSystem::reduced_igusa()));
}

ModuliPoint sign_flip(const ModuliPoint& p) {
  return ModuliPoint::from_normalized(-p.j2(), p.j4(), -p.j6(), -p.j10());
}

ModuliPoint sign_canonical(const ModuliPoint& p) {
  const int s = sgn(p.j2()) != 0 ? sgn(p.j2()) : sgn(p.j6()) != 0 ? sgn(p.j6()) : sgn(p.j10());
  return s > 0 ? p : sign_flip(p);
}

BinarySextic substitute(const BinarySextic& f, const Rational& a, const Rational& b,
                        const Rational& c, const Rational& d) {
  if (a * d - b * c == 0) {
    throw Error(ErrorCode::invalid_argument, "singular substitution matrix");
  }
  const Polynomial num({b, a});
  const Polynomial den({d, c});
  Polynomial out;
  for (unsigned i = 0; i <= 6; ++i) {
    if (f[i] == 0) continue;
    out += f[i] * (pow(num, i) * pow(den, 6 - i));
  }
  return BinarySextic::from_polynomial(out);
}

nlohmann::json to_json(const ModuliPoint& p) {
  return {{"J2", to_string(p.j2())},
          {"J4", to_string(p.j4())},
          {"J6", to_string(p.j6())},
          {"J10", to_string(p.j10())}};
}

ModuliPoint moduli_point_from_json(const nlohmann::json& j) {
  return ModuliPoint(parse_integer(j.at("J2").get<std::string>()),
                     parse_integer(j.at("J4").get<std::string>()),
                     parse_integer(j.at("J6").get<std::string>()),
                     parse_integer(j.at("J10").get<std::string>()));
}

nlohmann::json to_json(const AbsoluteTriple& t) {
  return {{"system", t.system == AbsoluteSystem::t ? "t" : "i"},
          {"t1", to_string(t.t1)},
          {"t2", to_string(t.t2)},
          {"t3", to_string(t.t3)}};
}

AbsoluteTriple absolute_triple_from_json(const nlohmann::json& j) {
  AbsoluteTriple t;
  const std::string sys = j.value("system", "t");
  if (sys != "t" && sys != "i") {
    throw Error(ErrorCode::parse_error, "unknown absolute system '" + sys + "'");
  }
  t.system = sys == "t" ? AbsoluteSystem::t : AbsoluteSystem::i;
  t.t1 = parse_rational(j.at("t1").get<std::string>());
  t.t2 = parse_rational(j.at("t2").get<std::string>());
  t.t3 = parse_rational(j.at("t3").get<std::string>());
  return t;
}

}  // namespace g2ml
