#include "tables.hpp"

#include <set>
#include <sstream>

#include "g2ml/enumerate.hpp"
#include "g2ml/reference.hpp"

namespace g2ml::cli {

namespace {

using reference::Tuple;

ModuliPoint point_of(const Tuple& t) { return ModuliPoint(t[0], t[1], t[2], t[3]); }

Tuple tuple_of(const ModuliPoint& p) {
  return {to_int64(p.j2()), to_int64(p.j4()), to_int64(p.j6()), to_int64(p.j10())};
}

std::string show(const Tuple& t) {
  std::ostringstream s;
  s << '[' << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ']';
  return s.str();
}

std::set<Tuple> tuples_of(const std::vector<ModuliPoint>& points) {
  std::set<Tuple> out;
  for (const auto& p : points) {
    if (fits_int64(p.j2()) && fits_int64(p.j4()) && fits_int64(p.j6()) && fits_int64(p.j10())) {
      out.insert(tuple_of(p));
    } else {
      out.insert({INT64_MAX, INT64_MAX, INT64_MAX, INT64_MAX});
    }
  }
  return out;
}

std::string show(const Rational& h) { return h.get_den() == 1 ? to_string(h.get_num()) : to_string(h); }

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::report: return "REPORT";
  }
  return "FAIL";
}

TableCheck check_counts() {
  TableCheck t;
  t.name = "Table 1";
  int matched = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (unsigned long h = 1; h <= reference::kCurveCounts.size(); ++h) {
    const Integer got = count_sextic_f(h);
    const auto expected = reference::kCurveCounts[h - 1];
    const bool ok = got == Integer(static_cast<long>(expected));
    matched += ok;
    rows.push_back({{"h", h}, {"count", to_string(got)}, {"published", expected}, {"match", ok}});
    if (!ok) t.notes.push_back("h=" + std::to_string(h) + ": got " + to_string(got));
  }
  t.verdict = matched == 10 ? Verdict::pass : Verdict::fail;
  t.summary = std::to_string(matched) + "/10 curve counts match";
  t.data = {{"rows", rows}};
  return t;
}

TableCheck check_height_one(unsigned threads) {
  TableCheck t;
  t.name = "Table 2";
  EnumerateOptions options;
  options.threads = threads;
  const auto r = enumerate_moduli(Rational(1), options);
  bool ok = r.classes.size() == reference::kHeightOne.size();
  for (const auto& c : r.classes) {
    int hits = 0;
    for (const Tuple& p : reference::kHeightOne) hits += same_moduli(c, point_of(p));
    if (hits != 1) {
      ok = false;
      t.notes.push_back(c.to_string() + " matches " + std::to_string(hits) + " printed tuples");
    }
  }
  t.verdict = ok ? Verdict::pass : Verdict::fail;
  t.summary = std::to_string(r.classes.size()) + " classes (" + std::to_string(r.points.size()) +
              " normalized tuples), each matching one printed representative";
  t.data = {{"classes", r.classes.size()}, {"points", r.points.size()}, {"report", to_json(r.report)}};
  return t;
}

TableCheck check_l2_list(const Rational& h, unsigned threads) {
  TableCheck t;
  t.name = "Table 3";
  EnumerateOptions options;
  options.threads = threads;
  const auto r = scan_l2(h, options);
  const std::set<Tuple> printed(reference::kL2HeightThree.begin(), reference::kL2HeightThree.end());
  const std::set<Tuple> got = tuples_of(r.points);
  std::vector<std::string> missing;
  std::size_t extra = 0;
  for (const Tuple& p : printed) {
    if (!got.count(p)) missing.push_back(show(p));
  }
  for (const Tuple& p : got) extra += !printed.count(p);
  t.verdict = got == printed ? Verdict::pass : Verdict::fail;
  t.summary = "scan at height " + show(h) + ": " + std::to_string(r.points.size()) + " tuples, " +
              std::to_string(r.classes.size()) + " classes; printed list has " + std::to_string(printed.size()) +
              " tuples";
  if (!missing.empty()) t.notes.push_back("printed tuples not found: " + std::to_string(missing.size()));
  if (extra > 0) t.notes.push_back("found tuples not printed: " + std::to_string(extra));
  nlohmann::json data = {{"height", to_string(h)},
                         {"points", r.points.size()},
                         {"classes", r.classes.size()},
                         {"printed", printed.size()},
                         {"missing", missing},
                         {"extra", extra}};
  if (t.verdict == Verdict::fail && h > 2) {
    const auto two = scan_l2(Rational(2), options);
    const bool same = tuples_of(two.points) == printed;
    t.notes.push_back("scan at height 2 gives " + std::to_string(two.points.size()) + " tuples, " +
                      std::to_string(two.classes.size()) + " classes" +
                      (same ? ", exactly the printed list" : ", not the printed list"));
    data["heightTwo"] = {{"points", two.points.size()}, {"classes", two.classes.size()}, {"matchesPrinted", same}};
  }
  t.data = data;
  return t;
}

TableCheck check_l3_list() {
  TableCheck t;
  t.name = "Table 4";
  std::set<Tuple> distinct;
  std::set<AbsoluteTriple> classes;
  int bad = 0;
  for (std::size_t i = 0; i < reference::kL3HeightThree.size(); ++i) {
    const Tuple& raw = reference::kL3HeightThree[i];
    const ModuliPoint p = point_of(raw);
    const bool normalized = tuple_of(p) == raw;
    const bool low = height_leq(p.point(), Rational(3));
    if (!normalized || !low) {
      ++bad;
      t.notes.push_back("entry " + std::to_string(i + 1) + " " + show(raw) + (normalized ? "" : " not normalized") +
                        (low ? "" : " height above 3"));
    }
    distinct.insert(raw);
    classes.insert(absolute_t(p));
  }
  t.verdict = bad == 0 ? Verdict::report : Verdict::fail;
  t.summary = std::to_string(reference::kL3HeightThree.size()) + " printed entries, " +
              std::to_string(distinct.size()) + " distinct tuples, " + std::to_string(classes.size()) +
              " classes; all normalized with height <= 3";
  if (bad > 0) t.summary = std::to_string(bad) + " printed entries fail the height or normalization audit";
  t.notes.push_back("published sizes disagree: " + std::to_string(reference::kL3CountShort) + " and " +
                    std::to_string(reference::kL3CountLong) + ", printed list repeats " +
                    std::to_string(reference::kL3HeightThree.size() - distinct.size()) + " entries");
  t.data = {{"printed", reference::kL3HeightThree.size()},
            {"distinct", distinct.size()},
            {"classes", classes.size()},
            {"publishedCounts", {reference::kL3CountShort, reference::kL3CountLong}},
            {"auditFailures", bad}};
  return t;
}

std::string format_check(const TableCheck& t) {
  std::string out = t.name + " " + verdict_name(t.verdict) + ": " + t.summary + "\n";
  for (const auto& n : t.notes) out += "  note: " + n + "\n";
  return out;
}

nlohmann::json to_json(const TableCheck& t) {
  return {{"table", t.name}, {"verdict", verdict_name(t.verdict)}, {"summary", t.summary}, {"notes", t.notes},
          {"data", t.data}};
}

}  // namespace g2ml::cli
