#include "g2ml/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "g2ml/error.hpp"
#include "g2ml/loci.hpp"

namespace g2ml {

namespace {

const std::array<std::pair<Provenance, const char*>, 5> kProvenanceNames = {{
    {Provenance::enumerated, "enum"},
    {Provenance::l2_param, "l2-param"},
    {Provenance::l3_param, "l3-param"},
    {Provenance::l5_param, "l5-param"},
    {Provenance::random, "random"},
}};

std::string key_string(const AbsoluteTriple& k) { return to_json(k).dump(); }

nlohmann::json tri_json(const TriState& t) {
  if (!t) return nullptr;
  return *t;
}

TriState tri_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

TriState merge_tri(const TriState& a, const TriState& b, const char* field, const AbsoluteTriple& key) {
  if (a && b && *a != *b) {
    throw Error(ErrorCode::label_conflict,
                std::string("conflicting '") + field + "' for key " + key_string(key));
  }
  return a ? a : b;
}

bool is_c10(const ModuliPoint& p) { return p.j2() == 0 && p.j4() == 0 && p.j6() == 0; }

nlohmann::json coords_json(const WeightedPoint& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const Integer& x : p.coords()) out.push_back(to_string(x));
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string provenance_name(Provenance p) {
  for (const auto& [v, name] : kProvenanceNames) {
    if (v == p) return name;
  }
  return "enum";
}

Provenance parse_provenance(const std::string& name) {
  for (const auto& [v, n] : kProvenanceNames) {
    if (name == n) return v;
  }
  throw Error(ErrorCode::parse_error, "unknown provenance '" + name + "'");
}

bool DatasetRecord::operator==(const DatasetRecord& o) const {
  return key == o.key && p == o.p && p_abs == o.p_abs && wh == o.wh && awh == o.awh &&
         gcd == o.gcd && fine == o.fine && aut == o.aut && in_l2 == o.in_l2 &&
         in_l3 == o.in_l3 && in_l5 == o.in_l5 && provenance == o.provenance;
}

DatasetRecord build_record(const ModuliPoint& p, Provenance provenance) {
  const WeightedPoint point = p.point();
  const bool l2 = in_l2(p);
  Integer g = 0;
  for (const Integer& x : p.coords()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());

  DatasetRecord r{absolute_t(p),
                  p,
                  abs_normalize(point),
                  round_sig9(height(point).value),
                  round_sig9(abs_height(point).value),
                  g,
                  std::nullopt,
                  AutLabel::unknown,
                  l2,
                  std::nullopt,
                  std::nullopt,
                  provenance};
  if (provenance == Provenance::l3_param) r.in_l3 = r.fine = true;
  if (provenance == Provenance::l5_param) r.in_l5 = r.fine = true;
  if (is_c10(p)) {
    r.aut = AutLabel::c10;
    r.fine = true;
  } else if (l2) {
    r.aut = AutLabel::extra;
  }
  return r;
}

DatasetRecord merge_records(const DatasetRecord& a, const DatasetRecord& b) {
  if (!(a.key == b.key)) {
    throw Error(ErrorCode::invalid_argument, "records of different classes cannot be merged");
  }
  if (a.in_l2 != b.in_l2) {
    throw Error(ErrorCode::label_conflict, "conflicting 'inL2' for key " + key_string(a.key));
  }
  if (a.aut != b.aut && a.aut != AutLabel::unknown && b.aut != AutLabel::unknown) {
    throw Error(ErrorCode::label_conflict, "conflicting 'aut' for key " + key_string(a.key));
  }
  // Both sign representatives share a key; keep the smaller one.
  DatasetRecord r = b.p < a.p ? b : a;
  r.fine = merge_tri(a.fine, b.fine, "fine", a.key);
  r.in_l3 = merge_tri(a.in_l3, b.in_l3, "inL3", a.key);
  r.in_l5 = merge_tri(a.in_l5, b.in_l5, "inL5", a.key);
  r.aut = a.aut != AutLabel::unknown ? a.aut : b.aut;
  r.provenance = std::min(a.provenance, b.provenance);
  return r;
}

nlohmann::json to_json(const DatasetRecord& r) {
  nlohmann::json aut;
  switch (r.aut) {
    case AutLabel::unknown: aut = nullptr; break;
    case AutLabel::extra: aut = "extra"; break;
    case AutLabel::c10: aut = {10, 2}; break;
  }
  return {{"key", to_json(r.key)},
          {"p", coords_json(r.p.point())},
          {"pAbs", coords_json(r.p_abs)},
          {"wh", r.wh},
          {"awh", r.awh},
          {"gcd", to_string(r.gcd)},
          {"fine", tri_json(r.fine)},
          {"aut", aut},
          {"inL2", r.in_l2},
          {"inL3", tri_json(r.in_l3)},
          {"inL5", tri_json(r.in_l5)},
          {"inL7", nullptr},
          {"provenance", provenance_name(r.provenance)}};
}

DatasetRecord record_from_json(const nlohmann::json& j) {
  try {
    auto coords = [](const nlohmann::json& a) {
      if (!a.is_array() || a.size() != 4) {
        throw Error(ErrorCode::parse_error, "expected four coordinates");
      }
      std::array<Integer, 4> c;
      for (std::size_t i = 0; i < 4; ++i) c[i] = parse_integer(a[i].get<std::string>());
      return c;
    };
    const auto pc = coords(j.at("p"));
    const ModuliPoint p(pc[0], pc[1], pc[2], pc[3]);
    if (p.coords() != pc) throw Error(ErrorCode::parse_error, "stored point is not normalized");
    const auto ac = coords(j.at("pAbs"));
    AutLabel aut = AutLabel::unknown;
    const auto& ja = j.at("aut");
    if (ja == "extra") {
      aut = AutLabel::extra;
    } else if (ja.is_array()) {
      if (ja != nlohmann::json{10, 2}) throw Error(ErrorCode::parse_error, "unknown aut " + ja.dump());
      aut = AutLabel::c10;
    } else if (!ja.is_null()) {
      throw Error(ErrorCode::parse_error, "unknown aut " + ja.dump());
    }
    return DatasetRecord{absolute_triple_from_json(j.at("key")),
                         p,
                         WeightedPoint({ac.begin(), ac.end()}, WeightSystem::igusa()),
                         j.at("wh").get<double>(),
                         j.at("awh").get<double>(),
                         parse_integer(j.at("gcd").get<std::string>()),
                         tri_from_json(j.at("fine")),
                         aut,
                         j.at("inL2").get<bool>(),
                         tri_from_json(j.at("inL3")),
                         tri_from_json(j.at("inL5")),
                         parse_provenance(j.at("provenance").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

void Dataset::insert(const DatasetRecord& r) {
  auto it = records_.find(r.key);
  if (it == records_.end()) {
    records_.emplace(r.key, r);
  } else {
    it->second = merge_records(it->second, r);
  }
}

const DatasetRecord& Dataset::at(const AbsoluteTriple& key) const {
  auto it = records_.find(key);
  if (it == records_.end()) throw Error(ErrorCode::invalid_argument, "no record for key " + key_string(key));
  return it->second;
}

Dataset merge_datasets(const Dataset& a, const Dataset& b) {
  Dataset out = a;
  if (!b.metadata().empty() && b.metadata() != a.metadata()) {
    if (a.metadata().empty()) {
      out.metadata() = b.metadata();
    } else {
      out.metadata()["merged"].push_back(b.metadata());
    }
  }
  for (const auto& [key, r] : b.records()) out.insert(r);
  return out;
}

void export_jsonl(const Dataset& d, std::ostream& out) {
  const nlohmann::json header = {
      {"schema", kSchemaVersion}, {"records", d.size()}, {"metadata", d.metadata()}};
  out << header.dump() << '\n';
  for (const auto& [key, r] : d.records()) out << to_json(r).dump() << '\n';
}

Dataset import_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::parse_error, "line 1: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("line 1: ") + e.what());
  }
  if (!header.is_object() || header.value("schema", "") != kSchemaVersion) {
    throw Error(ErrorCode::schema_mismatch, "line 1: expected schema " + std::string(kSchemaVersion));
  }
  Dataset d(header.value("metadata", nlohmann::json::object()));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      d.insert(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (header.contains("records") && header["records"].get<std::size_t>() != d.size()) {
    throw Error(ErrorCode::parse_error, "header announces " + header["records"].dump() +
                                            " records, found " + std::to_string(d.size()));
  }
  return d;
}

void export_jsonl(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
  export_jsonl(d, out);
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path);
}

Dataset import_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  return import_jsonl(in);
}

ClassScheme parse_scheme(const std::string& name) {
  if (name == "3" || name == "three") return ClassScheme::three;
  if (name == "4" || name == "four") return ClassScheme::four;
  throw Error(ErrorCode::invalid_argument, "unknown class scheme '" + name + "'");
}

std::vector<std::string> class_names(ClassScheme scheme) {
  if (scheme == ClassScheme::three) return {"L3", "L2", "other"};
  return {"L3", "L2", "other", "L5"};
}

std::optional<std::string> classify(const DatasetRecord& r, ClassScheme scheme) {
  const bool l3 = r.in_l3 == true;
  const bool l5 = r.in_l5 == true;
  if (scheme == ClassScheme::four) {
    if (l5 && !l3 && !r.in_l2) return "L5";
    if (l5) return std::nullopt;
  }
  if (l3 && !r.in_l2) return "L3";
  if (r.in_l2 && !l3) return "L2";
  if (!r.in_l2 && !l3 && !l5 && r.provenance == Provenance::random) return "other";
  return std::nullopt;
}

FeatureTable feature_table(const Dataset& d, ClassScheme scheme) {
  FeatureTable t;
  for (const auto& [key, r] : d.records()) {
    const auto label = classify(r, scheme);
    if (!label) {
      ++t.excluded;
      continue;
    }
    Integer m = 0;
    for (const Integer& x : r.p.coords()) m = std::max(m, Integer(abs(x)));
    std::array<double, 4> row;
    for (std::size_t i = 0; i < 4; ++i) row[i] = to_double(make_rational(r.p[i], m));
    t.rows.push_back(row);
    t.labels.push_back(*label);
  }
  return t;
}

void write_features_csv(const FeatureTable& t, std::ostream& out) {
  out << "J2,J4,J6,J10,class\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (double x : t.rows[i]) out << format_double(x) << ',';
    out << t.labels[i] << '\n';
  }
}

FeatureTable read_features_csv(std::istream& in) {
  FeatureTable t;
  std::string line;
  if (!std::getline(in, line) || line != "J2,J4,J6,J10,class") {
    throw Error(ErrorCode::parse_error, "line 1: expected header J2,J4,J6,J10,class");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 4> row;
    const char* p = line.data();
    const char* end = p + line.size();
    for (std::size_t i = 0; i < 4; ++i) {
      const auto res = std::from_chars(p, end, row[i]);
      if (res.ec != std::errc() || res.ptr == end || *res.ptr != ',') {
        throw Error(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": bad number");
      }
      p = res.ptr + 1;
    }
    t.rows.push_back(row);
    t.labels.emplace_back(p, end);
  }
  return t;
}

AuditReport audit(const Dataset& d) {
  AuditReport rep;
  rep.records = d.size();
  for (const auto& [key, r] : d.records()) {
    const std::string name = r.p.to_string();
    if (!(absolute_t(r.p) == key)) rep.key_mismatches.push_back(name);
    if (in_l2(r.p) != r.in_l2) rep.l2_mismatches.push_back(name);
    const bool bad_l3 = r.provenance == Provenance::l3_param && (r.in_l3 != true || r.fine != true);
    const bool bad_l5 = r.provenance == Provenance::l5_param && (r.in_l5 != true || r.fine != true);
    const bool bad_c10 = is_c10(r.p) && r.aut != AutLabel::c10;
    if (bad_l3 || bad_l5 || bad_c10) rep.provenance_violations.push_back(name);
  }
  return rep;
}

nlohmann::json to_json(const AuditReport& r) {
  return {{"records", r.records},
          {"ok", r.ok()},
          {"keyMismatches", r.key_mismatches},
          {"l2Mismatches", r.l2_mismatches},
          {"provenanceViolations", r.provenance_violations}};
}

nlohmann::json to_json(const Composition& c) {
  auto range = [](const RationalRange& r) { return nlohmann::json{r.num_max, r.den_max}; };
  return {{"l2", c.l2},
          {"l3", c.l3},
          {"l5", c.l5},
          {"other", c.other},
          {"l2Range", range(c.l2_range)},
          {"l3Range", range(c.l3_range)},
          {"l5SRange", range(c.l5_s_range)},
          {"l5TRange", range(c.l5_t_range)},
          {"otherHeight", c.other_height},
          {"seed", c.seed}};
}

namespace {

using Candidate = std::function<std::optional<ModuliPoint>(Rng&)>;

// Candidates are produced in parallel batches and consumed in index order,
// so the result does not depend on the worker count.
void collect(Dataset& d, std::size_t count, std::uint64_t seed, Provenance provenance,
             const Candidate& make, unsigned threads) {
  if (count == 0) return;
  const std::size_t max_draws = count * 50 + 1000;
  const unsigned workers = std::max(1u, threads);
  const std::size_t batch = std::max<std::size_t>(256, workers * 64);
  std::set<AbsoluteTriple> seen;
  std::size_t next = 0;
  while (seen.size() < count) {
    if (next >= max_draws) {
      throw Error(ErrorCode::retries_exhausted,
                  "could not draw " + std::to_string(count) + " distinct " + provenance_name(provenance) +
                      " points");
    }
    std::vector<std::optional<ModuliPoint>> out(batch);
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < batch; i += workers) {
        Rng rng = stream(seed, next + i);
        try {
          out[i] = make(rng);
        } catch (const Error&) {
          out[i].reset();
        }
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    next += batch;
    for (auto& p : out) {
      if (!p || seen.size() >= count) continue;
      const DatasetRecord r = build_record(*p, provenance);
      if (!seen.insert(r.key).second) continue;
      d.insert(r);
    }
  }
}

std::uint64_t source_seed(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed ^ (tag << 56)); }

}  // namespace

Dataset generate_dataset(const Composition& c) {
  Dataset d(nlohmann::json{{"composition", to_json(c)}});
  collect(
      d, c.l2, source_seed(c.seed, 2), Provenance::l2_param,
      [&](Rng& rng) -> std::optional<ModuliPoint> {
        const auto [a, b] = random_l2_params(rng, c.l2_range);
        return l2_curve_point(a, b);
      },
      c.threads);
  collect(
      d, c.l3, source_seed(c.seed, 3), Provenance::l3_param,
      [&](Rng& rng) -> std::optional<ModuliPoint> { return l3_point(random_l3_params(rng, c.l3_range)); },
      c.threads);
  if (c.l5 > 0) {
    L5GenConfig config;
    config.s_range = c.l5_s_range;
    config.t_range = c.l5_t_range;
    config.slices = std::max<std::size_t>(1, std::min<std::size_t>(config.slices, c.l5));
    for (const ModuliPoint& p : l5_generate_points(c.l5, source_seed(c.seed, 5), config)) {
      d.insert(p, Provenance::l5_param);
    }
  }
  const Integer h = c.other_height;
  const auto b2 = to_int64(ipow(h, 2)), b4 = to_int64(ipow(h, 4)), b6 = to_int64(ipow(h, 6)),
             b10 = to_int64(ipow(h, 10));
  collect(
      d, c.other, source_seed(c.seed, 7), Provenance::random,
      [&](Rng& rng) -> std::optional<ModuliPoint> {
        auto draw = [&](std::int64_t b) { return std::uniform_int_distribution<std::int64_t>(-b, b)(rng); };
        const long j2 = draw(b2), j4 = draw(b4), j6 = draw(b6), j10 = draw(b10);
        if (j10 == 0) return std::nullopt;
        ModuliPoint p(j2, j4, j6, j10);
        if (in_l2(p)) return std::nullopt;
        return p;
      },
      c.threads);
  return d;
}

}  // namespace g2ml
