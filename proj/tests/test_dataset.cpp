#include <doctest.h>

#include <sstream>

#include "g2ml/dataset.hpp"
#include "g2ml/error.hpp"
#include "g2ml/loci.hpp"

using namespace g2ml;

namespace {

ModuliPoint mp(long a, long b, long c, long d) { return ModuliPoint(a, b, c, d); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::invalid_argument;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

Dataset small() {
  Dataset d;
  d.insert(mp(0, 0, 0, 1), Provenance::enumerated);
  d.insert(mp(4, -14, 2, 1), Provenance::enumerated);
  d.insert(l3_point(L3Params(1, 1)), Provenance::l3_param);
  return d;
}

}  // namespace

TEST_CASE("record labels") {
  const DatasetRecord c10 = build_record(mp(0, 0, 0, 1), Provenance::enumerated);
  CHECK_FALSE(c10.in_l2);
  CHECK(c10.aut == AutLabel::c10);
  CHECK(c10.fine == true);
  CHECK(c10.gcd == 1);

  const ModuliPoint p3 = l3_point(L3Params(1, 1));
  const DatasetRecord l3 = build_record(p3, Provenance::l3_param);
  CHECK(l3.in_l3 == true);
  CHECK(l3.fine == true);
  CHECK(l3.key == absolute_t(p3));
  CHECK_FALSE(l3.in_l5.has_value());

  const DatasetRecord l2 = build_record(mp(4, -14, 2, 1), Provenance::enumerated);
  CHECK(l2.in_l2);
  CHECK(l2.aut == AutLabel::extra);
  CHECK_FALSE(l2.fine.has_value());
  CHECK(classify(l2, ClassScheme::three) == "L2");
  CHECK(l2.wh == doctest::Approx(2.0));

  const DatasetRecord g = build_record(mp(2, 4, 8, 32), Provenance::random);
  CHECK(g.gcd == 2);
  CHECK(g.p_abs == WeightedPoint({1, 1, 1, 1}, WeightSystem::igusa()));
  CHECK(g.awh == doctest::Approx(1.0));
}

TEST_CASE("classification schemes") {
  DatasetRecord r = build_record(mp(1, 1, 1, 1), Provenance::random);
  CHECK(classify(r, ClassScheme::three) == "other");
  r.in_l3 = false;
  CHECK(classify(r, ClassScheme::three) == "other");
  r.provenance = Provenance::enumerated;
  CHECK_FALSE(classify(r, ClassScheme::three).has_value());

  DatasetRecord both = build_record(mp(4, -14, 2, 1), Provenance::enumerated);
  both.in_l3 = true;
  CHECK_FALSE(classify(both, ClassScheme::three).has_value());

  const DatasetRecord l5 = build_record(l5_generate_points(1, 3)[0], Provenance::l5_param);
  CHECK(classify(l5, ClassScheme::four) == "L5");
  CHECK_FALSE(classify(l5, ClassScheme::three).has_value());
  CHECK(class_names(ClassScheme::four).size() == 4);
}

TEST_CASE("inserting a sign-flipped point merges") {
  Dataset d;
  d.insert(mp(3, -15, 48, 10), Provenance::enumerated);
  d.insert(mp(-3, -15, -48, -10), Provenance::enumerated);
  REQUIRE(d.size() == 1);
  CHECK(d.records().begin()->second.p == mp(-3, -15, -48, -10));
}

TEST_CASE("merging datasets") {
  const Dataset x = small();
  CHECK(merge_datasets(x, Dataset()) == x);
  CHECK(merge_datasets(x, x) == x);
  CHECK(merge_datasets(Dataset(), x) == x);

  Dataset y;
  DatasetRecord r = build_record(mp(4, -14, 2, 1), Provenance::enumerated);
  r.in_l3 = false;
  y.insert(r);
  Dataset z;
  r.in_l3 = true;
  z.insert(r);
  CHECK(code_of([&] { merge_datasets(y, z); }) == ErrorCode::label_conflict);

  // Unknown yields to known.
  const Dataset m = merge_datasets(x, y);
  CHECK(m.at(absolute_t(mp(4, -14, 2, 1))).in_l3 == false);
}

TEST_CASE("jsonl layout") {
  std::ostringstream empty;
  export_jsonl(Dataset(), empty);
  const auto e = lines_of(empty.str());
  REQUIRE(e.size() == 1);
  CHECK(nlohmann::json::parse(e[0])["schema"] == "g2ml/1");

  std::ostringstream out;
  export_jsonl(small(), out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 4);
  std::vector<AbsoluteTriple> keys;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto j = nlohmann::json::parse(lines[i]);
    CHECK(j["key"]["t1"].get<std::string>().find('/') != std::string::npos);
    keys.push_back(absolute_triple_from_json(j["key"]));
  }
  CHECK(std::is_sorted(keys.begin(), keys.end()));

  std::istringstream in(out.str());
  CHECK(import_jsonl(in) == small());
}

TEST_CASE("jsonl errors carry line numbers") {
  std::ostringstream out;
  export_jsonl(small(), out);
  auto lines = lines_of(out.str());
  lines[2] = "{\"key\": 3}";
  std::string joined;
  for (const auto& l : lines) joined += l + "\n";
  std::istringstream in(joined);
  try {
    import_jsonl(in);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream bad_schema("{\"schema\":\"other/9\"}\n");
  CHECK(code_of([&] { import_jsonl(bad_schema); }) == ErrorCode::schema_mismatch);
}

TEST_CASE("generated dataset round trip and determinism") {
  Composition c;
  c.l2 = 2500;
  c.l3 = 2500;
  c.l5 = 2500;
  c.other = 2500;
  c.seed = 99;
  const Dataset d = generate_dataset(c);
  CHECK(d.size() >= 9990);
  CHECK(d.size() <= 10000);
  std::ostringstream out;
  export_jsonl(d, out);
  std::istringstream in(out.str());
  const Dataset back = import_jsonl(in);
  CHECK(back == d);
  std::ostringstream again;
  export_jsonl(back, again);
  CHECK(again.str() == out.str());
  CHECK(audit(d).ok());

  c.threads = 3;
  c.l2 = c.l3 = c.other = 300;
  c.l5 = 0;
  Composition c1 = c;
  c1.threads = 1;
  CHECK(generate_dataset(c) == generate_dataset(c1));
}

TEST_CASE("feature export") {
  Dataset d;
  d.insert(mp(2, 4, 8, 32), Provenance::random);
  d.insert(mp(1, 2, 4, 16), Provenance::random);
  d.insert(mp(4, -14, 2, 1), Provenance::enumerated);
  d.insert(mp(1, 0, 0, 1), Provenance::enumerated);
  const FeatureTable t = feature_table(d, ClassScheme::three);
  CHECK(t.excluded == 1);
  REQUIRE(t.rows.size() == 3);
  int other = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.labels[i] == "other") {
      ++other;
      CHECK(t.rows[i][0] == 1.0 / 16);
      CHECK(t.rows[i][3] == 1.0);
    }
  }
  CHECK(other == 2);

  // Rows stay finite for coordinates far beyond double range.
  Dataset big;
  big.insert(ModuliPoint::from_normalized(1, 0, 0, ipow(Integer(10), 400) + 1), Provenance::random);
  const auto tb = feature_table(big, ClassScheme::three);
  CHECK(tb.rows[0][3] == 1.0);
  CHECK(tb.rows[0][0] == 0.0);

  std::ostringstream csv;
  write_features_csv(t, csv);
  CHECK(lines_of(csv.str())[0] == "J2,J4,J6,J10,class");
  std::istringstream in(csv.str());
  const FeatureTable back = read_features_csv(in);
  CHECK(back.rows == t.rows);
  CHECK(back.labels == t.labels);
}

TEST_CASE("audit catches tampered labels") {
  Dataset d = small();
  CHECK(audit(d).ok());
  std::ostringstream out;
  export_jsonl(d, out);
  std::string text = out.str();
  const auto pos = text.find("\"inL2\":true");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 11, "\"inL2\":false");
  std::istringstream in(text);
  const Dataset tampered = import_jsonl(in);
  const AuditReport rep = audit(tampered);
  CHECK_FALSE(rep.ok());
  CHECK(rep.l2_mismatches.size() == 1);
}
