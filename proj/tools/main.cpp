// g2ml: counting, enumeration, locus generation, datasets and learning.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "artifact.hpp"
#include "g2ml/dataset.hpp"
#include "g2ml/enumerate.hpp"
#include "g2ml/error.hpp"
#include "g2ml/mlearn.hpp"
#include "plot.hpp"
#include "tables.hpp"

using namespace g2ml;
using namespace g2ml::cli;

namespace {

enum Exit { kOk = 0, kComputation = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_error(const std::string& code, const std::string& message) {
  std::cerr << nlohmann::json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
}

void emit(const RunConfig& c, const std::string& content) {
  if (c.out.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(c.out, content);
  }
}

void write_sidecar(const RunConfig& c, const std::string& suffix, nlohmann::json body) {
  if (c.out.empty()) return;
  body["metadata"] = provenance(c);
  write_file_atomic(c.out + suffix, body.dump(2) + "\n");
}

const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) throw UsageError("expected exactly one input file");
  return c.inputs.front();
}

int cmd_count(const RunConfig& c) {
  const Rational h = height_of(c);
  if (h.get_den() != 1) throw UsageError("count needs an integer height");
  const WeightSystem w(parse_unsigned_list(c.weights));
  const Integer n = count_bound_general(w, h.get_num().get_ui());
  std::cout << to_string(n) << '\n';
  if (!c.out.empty()) {
    nlohmann::json body = {{"weights", to_json(w)}, {"h", to_string(h)}, {"count", to_string(n)},
                           {"metadata", provenance(c)}};
    write_file_atomic(c.out, body.dump(2) + "\n");
  }
  return kOk;
}

int cmd_points(const RunConfig& c, bool l2_only) {
  EnumerateOptions options;
  options.strict = c.strict;
  options.candidate_limit = c.candidate_limit;
  options.threads = c.threads;
  const Rational h = height_of(c);
  EnumerationResult r = l2_only ? scan_l2(h, options) : enumerate_moduli(h, options);
  std::sort(r.points.begin(), r.points.end());
  std::ostringstream out;
  for (const auto& p : r.points) out << to_json(p).dump() << '\n';
  emit(c, out.str());
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& p : r.classes) reps.push_back(to_json(p));
  write_sidecar(c, ".report.json", {{"report", to_json(r.report)}, {"classes", reps}});
  return kOk;
}

void attach_provenance(Dataset& d, const RunConfig& c, const Composition& comp) {
  d.metadata() = provenance(c);
  d.metadata()["composition"] = to_json(comp);
}

std::string dataset_text(const Dataset& d) {
  std::ostringstream out;
  export_jsonl(d, out);
  return out.str();
}

int cmd_gen(const RunConfig& c, const std::string& source) {
  Composition comp = composition_of(c);
  comp.l2 = source == "l2" ? c.n : 0;
  comp.l3 = source == "l3" ? c.n : 0;
  comp.l5 = source == "l5" ? c.n : 0;
  comp.other = 0;
  Dataset d = generate_dataset(comp);
  attach_provenance(d, c, comp);
  emit(c, dataset_text(d));
  return kOk;
}

int cmd_dataset(const RunConfig& c, const std::string& action) {
  if (action == "build") {
    const Composition comp = composition_of(c);
    Dataset d = generate_dataset(comp);
    if (c.enum_height > 0) {
      EnumerateOptions options;
      options.threads = c.threads;
      for (const auto& p : enumerate_moduli(Rational(c.enum_height), options).classes) {
        d.insert(p, Provenance::enumerated);
      }
    }
    attach_provenance(d, c, comp);
    emit(c, dataset_text(d));
    return kOk;
  }
  if (action == "merge") {
    if (c.inputs.size() < 2) throw UsageError("merge needs at least two inputs");
    Dataset d;
    nlohmann::json sources = nlohmann::json::array();
    for (const auto& path : c.inputs) {
      const Dataset next = import_jsonl(path);
      sources.push_back(next.metadata());
      d = merge_datasets(d, next);
    }
    d.metadata() = provenance(c);
    d.metadata()["sources"] = sources;
    emit(c, dataset_text(d));
    return kOk;
  }
  if (action == "audit") {
    const AuditReport r = audit(import_jsonl(single_input(c)));
    nlohmann::json body = to_json(r);
    body["ok"] = r.ok();
    body["metadata"] = provenance(c);
    emit(c, body.dump(2) + "\n");
    return r.ok() ? kOk : kComputation;
  }
  // features
  const FeatureTable t = feature_table(import_jsonl(single_input(c)), parse_scheme(c.scheme));
  std::ostringstream out;
  write_features_csv(t, out);
  emit(c, out.str());
  write_sidecar(c, ".meta.json", {{"rows", t.rows.size()}, {"excluded", t.excluded}});
  return kOk;
}

ml::FeatureMatrix load_features(const RunConfig& c) {
  const std::string& path = single_input(c);
  const ClassScheme scheme = parse_scheme(c.scheme);
  FeatureTable t;
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
    t = read_features_csv(in);
  } else {
    t = feature_table(import_jsonl(path), scheme);
  }
  return ml::from_table(t, class_names(scheme));
}

ml::ForestOptions forest_options(const RunConfig& c) {
  ml::ForestOptions o;
  o.trees = c.trees;
  o.seed = c.seed;
  o.threads = c.threads;
  return o;
}

nlohmann::json split_json(const ml::Split& s) {
  return {{"train", s.train.size()}, {"test", s.test.size()}};
}

ml::Labels predict(const RunConfig& c, const nlohmann::json& model, const ml::Matrix& rows) {
  if (model.value("kind", "") == "knn") {
    const ml::KnnModel m = ml::knn_from_json(model);
    return ml::knn_predict(m.train, rows, m.k, m.metric, c.threads);
  }
  return ml::random_forest_predict(ml::forest_from_json(model), rows, c.threads);
}

nlohmann::json train_model(const RunConfig& c, const ml::FeatureMatrix& train) {
  if (c.model == "knn") return ml::to_json(ml::KnnModel{train, c.k, ml::parse_metric(c.metric)});
  return ml::to_json(ml::random_forest_train(train, forest_options(c)));
}

int cmd_ml(const RunConfig& c, const std::string& action) {
  const ml::FeatureMatrix x = load_features(c);
  if (action == "cluster") {
    nlohmann::json body = {{"rows", x.size()}, {"clusters", c.clusters}};
    ml::KMeansOptions ko;
    ko.restarts = c.restarts;
    ko.threads = c.threads;
    if (c.algorithm != "gmm") {
      const auto km = ml::kmeans(x.rows, c.clusters, c.seed, ko);
      const double ari = ml::adjusted_rand_index(km.labels, x.labels);
      std::cout << "kmeans ARI " << ari << " matched accuracy " << ml::matched_accuracy(km.labels, x.labels) << '\n';
      body["kmeans"] = {{"ari", ari}, {"wcss", km.wcss}};
    }
    if (c.algorithm != "kmeans") {
      ml::GmmOptions go;
      go.init = ko;
      const auto g = ml::gmm_spherical(x.rows, c.clusters, c.seed, go);
      const double ari = ml::adjusted_rand_index(g.labels, x.labels);
      std::cout << "gmm ARI " << ari << " matched accuracy " << ml::matched_accuracy(g.labels, x.labels) << '\n';
      body["gmm"] = {{"ari", ari}, {"model", ml::to_json(g)}};
    }
    body["metadata"] = provenance(c);
    if (!c.out.empty()) write_file_atomic(c.out, body.dump(2) + "\n");
    return kOk;
  }

  const ml::Split s = ml::train_test_split(x, c.test_fraction, c.seed);
  if (action == "train") {
    nlohmann::json model = train_model(c, s.train);
    model["split"] = split_json(s);
    model["metadata"] = provenance(c);
    emit(c, model.dump() + "\n");
    return kOk;
  }
  if (action == "eval") {
    const nlohmann::json model =
        c.model_path.empty() ? train_model(c, s.train) : nlohmann::json::parse(read_file(c.model_path));
    const ml::Labels pred = predict(c, model, s.test.rows);
    ml::ConfusionMatrix cm;
    const auto report = ml::evaluate(pred, s.test.labels, x.num_classes(), &cm);
    std::cout << ml::format_report(report, x.class_names) << "\nconfusion matrix (rows true, columns predicted)\n"
              << cm << '\n';
    if (!c.out.empty()) {
      const nlohmann::json body = {{"model", model.value("kind", "")}, {"split", split_json(s)},
                                   {"metrics", ml::to_json(report, x.class_names)}, {"confusion", ml::to_json(cm)},
                                   {"metadata", provenance(c)}};
      write_file_atomic(c.out, body.dump(2) + "\n");
    }
    return kOk;
  }
  // curve: accuracy against the number of training rows, on a fixed test split.
  std::vector<std::size_t> order(static_cast<std::size_t>(s.train.size()));
  std::iota(order.begin(), order.end(), 0);
  Rng rng = stream(c.seed, 0xc0);
  std::shuffle(order.begin(), order.end(), rng);
  std::ostringstream csv;
  csv << "train_fraction,train_rows,knn_accuracy,forest_accuracy\n";
  for (double f : parse_double_list(c.sizes)) {
    auto n = static_cast<std::size_t>(std::llround(f * static_cast<double>(order.size())));
    n = std::clamp<std::size_t>(n, static_cast<std::size_t>(c.k), order.size());
    std::vector<std::size_t> pick(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(pick.begin(), pick.end());
    const ml::FeatureMatrix part = ml::subset(s.train, pick);
    const auto knn = ml::knn_predict(part, s.test.rows, c.k, ml::parse_metric(c.metric), c.threads);
    const auto forest = ml::random_forest_predict(ml::random_forest_train(part, forest_options(c)), s.test.rows,
                                                  c.threads);
    csv << f << ',' << n << ',' << ml::evaluate(knn, s.test.labels, x.num_classes()).accuracy << ','
        << ml::evaluate(forest, s.test.labels, x.num_classes()).accuracy << '\n';
  }
  emit(c, csv.str());
  write_sidecar(c, ".meta.json", {{"split", split_json(s)}});
  return kOk;
}

int cmd_report(const RunConfig& c) {
  const std::vector<TableCheck> checks = {check_counts(), check_height_one(c.threads),
                                          check_l2_list(height_of(c), c.threads), check_l3_list()};
  nlohmann::json body = nlohmann::json::array();
  for (const auto& t : checks) {
    std::cout << format_check(t);
    body.push_back(to_json(t));
  }
  if (!c.out.empty()) {
    write_file_atomic(c.out, nlohmann::json{{"tables", body}, {"metadata", provenance(c)}}.dump(2) + "\n");
  }
  return kOk;
}

int cmd_plot(const RunConfig& c) {
  PlotOptions o;
  o.scheme = parse_scheme(c.scheme);
  const auto axes = parse_unsigned_list(c.axes);
  o.axes = {axes[0], axes[1]};
  o.metadata = provenance(c);
  emit(c, scatter_svg(import_jsonl(single_input(c)), o));
  return kOk;
}

// Finds --config before the full parse so file values become defaults
// that explicit flags override.
std::string config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  bool height_from_config = false;
  try {
    if (const std::string path = config_path(argc, argv); !path.empty()) {
      const std::string before = cfg.height;
      load_config(cfg, path);
      height_from_config = cfg.height != before;
    }
  } catch (const Error& e) {
    print_error(std::string(code_name(e.code())), e.what());
    return kUsage;
  }

  CLI::App app{"Genus two moduli: counting, enumeration, loci, datasets and learning", "g2ml"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_file;
  app.add_option("--config", config_file, "key=value or JSON config; flags override it");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--threads", cfg.threads, "Worker threads");
  app.add_option("--out", cfg.out, "Output file (stdout when omitted)");

  std::string strict_text;
  auto height_opts = [&](CLI::App* s) {
    s->add_option("--h", cfg.height, "Height bound, an integer or p/q");
    s->add_option("--strict", strict_text, "Strict bound (true/false)")->expected(0, 1);
    s->add_option("--limit", cfg.candidate_limit, "Refuse boxes with more candidates than this");
  };
  auto range_opts = [&](CLI::App* s) {
    s->add_option("--l2-range", cfg.l2_range, "L2 parameter range num_max/den_max");
    s->add_option("--l3-range", cfg.l3_range, "L3 parameter range num_max/den_max");
    s->add_option("--l5-s-range", cfg.l5_s_range, "L5 slice range num_max/den_max");
    s->add_option("--l5-t-range", cfg.l5_t_range, "L5 line range num_max/den_max");
  };

  auto* count = app.add_subcommand("count", "Count moduli points of bounded height");
  count->add_option("--weights", cfg.weights, "Comma separated weights");
  count->add_option("--h", cfg.height, "Integer height bound");

  auto* enumerate = app.add_subcommand("enumerate", "List normalized moduli points of bounded height");
  height_opts(enumerate);
  auto* scan = app.add_subcommand("scan-l2", "List points of L2 of bounded height");
  height_opts(scan);

  std::string source;
  auto* gen = app.add_subcommand("gen", "Generate records on one locus");
  gen->add_option("source", source, "l2, l3 or l5")->required()->check(CLI::IsMember({"l2", "l3", "l5"}));
  gen->add_option("--n", cfg.n, "Number of distinct classes");
  range_opts(gen);

  std::string dataset_action;
  auto* dataset = app.add_subcommand("dataset", "Build, merge, audit or export datasets");
  dataset->add_option("action", dataset_action, "build, merge, audit or features")
      ->required()
      ->check(CLI::IsMember({"build", "merge", "audit", "features"}));
  dataset->add_option("inputs", cfg.inputs, "Input JSONL files");
  dataset->add_option("--l2", cfg.l2, "L2 quota");
  dataset->add_option("--l3", cfg.l3, "L3 quota");
  dataset->add_option("--l5", cfg.l5, "L5 quota");
  dataset->add_option("--other", cfg.other, "Quota of random points off L2");
  dataset->add_option("--other-height", cfg.other_height, "Height box for random points");
  dataset->add_option("--enum-height", cfg.enum_height, "Also insert every class up to this height (0 = none)");
  dataset->add_option("--scheme", cfg.scheme, "Class scheme: 3 or 4");
  range_opts(dataset);

  std::string ml_action;
  auto* mlc = app.add_subcommand("ml", "Train, evaluate and cluster");
  mlc->add_option("action", ml_action, "train, eval, cluster or curve")
      ->required()
      ->check(CLI::IsMember({"train", "eval", "cluster", "curve"}));
  mlc->add_option("--data", cfg.inputs, "Dataset JSONL or features CSV")->expected(1);
  mlc->add_option("--scheme", cfg.scheme, "Class scheme: 3 or 4");
  mlc->add_option("--model", cfg.model, "knn or forest");
  mlc->add_option("--model-file", cfg.model_path, "Trained model JSON for eval");
  mlc->add_option("--k", cfg.k, "Neighbors");
  mlc->add_option("--metric", cfg.metric, "manhattan or euclidean");
  mlc->add_option("--trees", cfg.trees, "Forest size");
  mlc->add_option("--test-fraction", cfg.test_fraction, "Held out fraction per class");
  mlc->add_option("--clusters", cfg.clusters, "Clusters");
  mlc->add_option("--algorithm", cfg.algorithm, "kmeans, gmm or both");
  mlc->add_option("--restarts", cfg.restarts, "k-means restarts");
  mlc->add_option("--sizes", cfg.sizes, "Training fractions for the curve");

  std::string report_what;
  auto* report = app.add_subcommand("report", "Re-derive the published tables");
  report->add_option("what", report_what, "tables")->required()->check(CLI::IsMember({"tables"}));
  report->add_option("--h", cfg.height, "Height of the L2 list check (default 3)");

  auto* plot = app.add_subcommand("plot", "SVG scatter in signed-log t-coordinates");
  plot->add_option("input", cfg.inputs, "Dataset JSONL")->expected(1);
  plot->add_option("--scheme", cfg.scheme, "Class scheme: 3 or 4");
  plot->add_option("--axes", cfg.axes, "Two of 1,2,3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    cfg.command = sub->get_name();
    if (sub == gen) cfg.command += " " + source;
    if (sub == dataset) cfg.command += " " + dataset_action;
    if (sub == mlc) cfg.command += " " + ml_action;
    if (sub == report) {
      cfg.command += " " + report_what;
      if (report->count("--h") == 0 && !height_from_config) cfg.height = "3";
    }
    for (auto* s : {enumerate, scan}) {
      if (s->count("--strict") > 0) apply_setting(cfg, "strict", strict_text.empty() ? "true" : strict_text);
    }
    validate(cfg);
    if (sub == plot && cfg.inputs.size() != 1) throw UsageError("plot needs one dataset");
  } catch (const Error& e) {
    print_error(std::string(code_name(e.code())), e.what());
    return kUsage;
  } catch (const std::exception& e) {
    print_error("usage", e.what());
    return kUsage;
  }

  try {
    if (sub == count) return cmd_count(cfg);
    if (sub == enumerate) return cmd_points(cfg, false);
    if (sub == scan) return cmd_points(cfg, true);
    if (sub == gen) return cmd_gen(cfg, source);
    if (sub == dataset) return cmd_dataset(cfg, dataset_action);
    if (sub == mlc) return cmd_ml(cfg, ml_action);
    if (sub == report) return cmd_report(cfg);
    return cmd_plot(cfg);
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return kUsage;
  } catch (const Error& e) {
    print_error(std::string(code_name(e.code())), e.what());
    return kComputation;
  } catch (const nlohmann::json::exception& e) {
    print_error("parse_error", e.what());
    return kComputation;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kComputation;
  }
}
