#include "artifact.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <variant>

#include "g2ml/error.hpp"

#ifndef G2ML_VERSION
#define G2ML_VERSION "0.0.0"
#endif

namespace g2ml::cli {

namespace {

using Field = std::variant<std::string*, bool*, std::uint64_t*, unsigned*, long*, int*, double*,
                           std::vector<std::string>*>;

std::vector<std::pair<std::string, Field>> fields(RunConfig& c) {
  return {
      {"command", &c.command},
      {"seed", &c.seed},
      {"threads", &c.threads},
      {"weights", &c.weights},
      {"h", &c.height},
      {"strict", &c.strict},
      {"limit", &c.candidate_limit},
      {"n", &c.n},
      {"l2", &c.l2},
      {"l3", &c.l3},
      {"l5", &c.l5},
      {"other", &c.other},
      {"l2-range", &c.l2_range},
      {"l3-range", &c.l3_range},
      {"l5-s-range", &c.l5_s_range},
      {"l5-t-range", &c.l5_t_range},
      {"other-height", &c.other_height},
      {"enum-height", &c.enum_height},
      {"scheme", &c.scheme},
      {"model", &c.model},
      {"k", &c.k},
      {"metric", &c.metric},
      {"trees", &c.trees},
      {"test-fraction", &c.test_fraction},
      {"clusters", &c.clusters},
      {"algorithm", &c.algorithm},
      {"restarts", &c.restarts},
      {"sizes", &c.sizes},
      {"axes", &c.axes},
      {"in", &c.inputs},
      {"model-file", &c.model_path},
      {"out", &c.out},
  };
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::invalid_argument, "invalid value '" + value + "' for " + key);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      apply_setting(c, key, value.get<std::string>());
    } else if (value.is_array()) {
      if (key != "in") throw Error(ErrorCode::invalid_argument, "unexpected list for " + key);
      c.inputs.clear();
      for (const auto& v : value) c.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      apply_setting(c, key, value.dump());
    }
  }
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  for (auto& [name, field] : fields(c)) {
    if (name != key) continue;
    std::visit(
        [&](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, std::string>) {
            *p = value;
          } else if constexpr (std::is_same_v<T, bool>) {
            *p = parse_bool(key, value);
          } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            p->clear();
            std::istringstream in(value);
            for (std::string item; std::getline(in, item, ',');) p->push_back(trim(item));
          } else {
            *p = parse_number<T>(key, value);
          }
        },
        field);
    return;
  }
  throw Error(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
}

void load_config(RunConfig& c, const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::invalid_argument, path.string() + ": not a JSON object");
    }
    if (j.contains("metadata")) j = j["metadata"];
    if (j.contains("runConfig")) j = j["runConfig"];
    apply_json(c, j);
    return;
  }
  std::istringstream in(text);
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::invalid_argument, path.string() + ":" + std::to_string(number) + ": expected key=value");
    }
    apply_setting(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

Rational height_of(const RunConfig& c) {
  const Rational h = parse_rational(c.height);
  if (h <= 0) throw Error(ErrorCode::invalid_argument, "height must be positive");
  return h;
}

RationalRange parse_range(const std::string& text) {
  const auto slash = text.find('/');
  RationalRange r;
  r.num_max = parse_number<std::int64_t>("range", text.substr(0, slash));
  r.den_max = slash == std::string::npos ? 1 : parse_number<std::int64_t>("range", text.substr(slash + 1));
  if (r.num_max < 1 || r.den_max < 1) bad_value("range", text);
  return r;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_number<unsigned>("list", trim(item)));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_number<double>("list", trim(item)));
  return out;
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::invalid_argument, what);
  };
  height_of(c);
  const auto w = parse_unsigned_list(c.weights);
  require(!w.empty() && std::find(w.begin(), w.end(), 0u) == w.end(), "weights must be positive");
  for (const auto* r : {&c.l2_range, &c.l3_range, &c.l5_s_range, &c.l5_t_range}) parse_range(*r);
  require(c.threads >= 1, "threads must be at least 1");
  require(c.candidate_limit > 0, "limit must be positive");
  require(c.other_height >= 1 && c.other_height <= 6, "other-height must lie in [1, 6]");
  require(c.enum_height >= 0 && c.enum_height <= 3, "enum-height must lie in [0, 3]");
  parse_scheme(c.scheme);
  require(c.model == "knn" || c.model == "forest", "model must be knn or forest");
  require(c.k >= 1, "k must be at least 1");
  require(c.metric == "manhattan" || c.metric == "euclidean", "metric must be manhattan or euclidean");
  require(c.trees >= 1, "trees must be at least 1");
  require(c.test_fraction > 0 && c.test_fraction < 1, "test-fraction must lie in (0, 1)");
  require(c.clusters >= 1, "clusters must be at least 1");
  require(c.algorithm == "kmeans" || c.algorithm == "gmm" || c.algorithm == "both",
          "algorithm must be kmeans, gmm or both");
  require(c.restarts >= 1, "restarts must be at least 1");
  for (double s : parse_double_list(c.sizes)) require(s > 0 && s <= 1, "sizes must lie in (0, 1]");
  const auto axes = parse_unsigned_list(c.axes);
  require(axes.size() == 2 && axes[0] >= 1 && axes[0] <= 3 && axes[1] >= 1 && axes[1] <= 3 && axes[0] != axes[1],
          "axes must be two distinct indices in 1..3");
}

nlohmann::json to_json(const RunConfig& c) {
  RunConfig copy = c;
  nlohmann::json j = nlohmann::json::object();
  for (auto& [name, field] : fields(copy)) {
    if (name == "out") continue;
    std::visit([&, key = name](auto* p) { j[key] = *p; }, field);
  }
  return j;
}

nlohmann::json provenance(const RunConfig& c) {
  return {{"tool", kToolName}, {"version", G2ML_VERSION}, {"runConfig", to_json(c)}};
}

Composition composition_of(const RunConfig& c) {
  Composition comp;
  comp.l2 = c.l2;
  comp.l3 = c.l3;
  comp.l5 = c.l5;
  comp.other = c.other;
  comp.l2_range = parse_range(c.l2_range);
  comp.l3_range = parse_range(c.l3_range);
  comp.l5_s_range = parse_range(c.l5_s_range);
  comp.l5_t_range = parse_range(c.l5_t_range);
  comp.other_height = c.other_height;
  comp.seed = c.seed;
  comp.threads = c.threads;
  return comp;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::io_error, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace g2ml::cli
