#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& redirect = "2>/dev/null") {
  const std::string cmd = std::string(G2ML_CLI) + " " + args + " " + redirect;
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string stderr_of(const std::string& args) {
  return run(args, "2>&1 >/dev/null").out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("g2ml_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("count prints the published value") {
  const auto r = run("count --weights 1,2,3,5 --h 2");
  CHECK(r.code == 0);
  CHECK(r.out == "24862\n");
}

TEST_CASE("exit codes and machine readable errors") {
  CHECK(run("").code == 2);
  CHECK(run("count --h 0").code == 2);
  CHECK(run("enumerate --h 1 --threads 0").code == 2);
  CHECK(run("gen l7").code == 2);
  const auto err = nlohmann::json::parse(stderr_of("count --h abc"));
  CHECK(err.at("error").contains("code"));
  // A budget violation is a computation error.
  CHECK(run("enumerate --h 3 --limit 10").code == 1);
  CHECK(nlohmann::json::parse(stderr_of("enumerate --h 3 --limit 10"))["error"]["code"] == "budget_exceeded");
  CHECK(run("dataset audit /nonexistent.jsonl").code == 1);
}

TEST_CASE("enumerate writes sorted points and a sidecar report") {
  const fs::path dir = scratch() / "nested";
  const auto r = run("enumerate --h 1 --out " + (dir / "points.jsonl").string());
  REQUIRE(r.code == 0);
  std::istringstream in(slurp(dir / "points.jsonl"));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  CHECK(lines.size() == 54);
  const auto report = nlohmann::json::parse(slurp(dir / "points.jsonl.report.json"));
  CHECK(report["report"]["classes"] == 27);
  CHECK(report["metadata"]["runConfig"]["command"] == "enumerate");
  CHECK(run("scan-l2 --h 3/2 --strict false").out.empty());
  fs::remove_all(dir.parent_path());
}

TEST_CASE("generation is byte deterministic and reproducible from its own config") {
  const fs::path dir = scratch();
  const auto a = run("gen l5 --n 10 --seed 7");
  const auto b = run("gen l5 --n 10 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != run("gen l5 --n 10 --seed 8").out);
  {
    std::ofstream(dir / "a.jsonl") << a.out;
  }
  CHECK(run("gen l5 --config " + (dir / "a.jsonl").string()).out == a.out);
  {
    std::ofstream(dir / "run.ini") << "# key=value settings\nseed = 7\nn=10\n";
  }
  CHECK(run("gen l5 --config " + (dir / "run.ini").string()).out == a.out);
  // Flags override the file.
  CHECK(run("gen l5 --config " + (dir / "run.ini").string() + " --seed 8").out ==
        run("gen l5 --n 10 --seed 8").out);
  {
    std::ofstream(dir / "bad.ini") << "sed=7\n";
  }
  CHECK(run("gen l5 --config " + (dir / "bad.ini").string()).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("dataset pipeline through plot") {
  const fs::path dir = scratch();
  const std::string ds = (dir / "ds.jsonl").string();
  REQUIRE(run("dataset build --l2 200 --l3 200 --other 200 --l5 20 --out " + ds).code == 0);
  CHECK(run("dataset audit " + ds).code == 0);
  REQUIRE(run("gen l2 --n 5 --out " + (dir / "l2.jsonl").string()).code == 0);
  REQUIRE(run("dataset merge " + ds + " " + (dir / "l2.jsonl").string() + " --out " + (dir / "m.jsonl").string())
              .code == 0);
  CHECK(run("dataset audit " + (dir / "m.jsonl").string()).code == 0);
  const auto csv = run("dataset features " + ds);
  CHECK(csv.out.rfind("J2,J4,J6,J10,class\n", 0) == 0);
  const std::string model = (dir / "model.json").string();
  REQUIRE(run("ml train --data " + ds + " --model forest --trees 10 --out " + model).code == 0);
  const auto eval = run("ml eval --data " + ds + " --model-file " + model + " --out " + (dir / "eval.json").string());
  CHECK(eval.code == 0);
  CHECK(eval.out.find("weighted avg") != std::string::npos);
  const auto metrics = nlohmann::json::parse(slurp(dir / "eval.json"));
  CHECK(metrics["metrics"]["accuracy"].get<double>() > 0.9);
  CHECK(run("ml cluster --data " + ds + " --clusters 3").out.find("gmm ARI") != std::string::npos);
  const auto svg = run("plot " + ds);
  CHECK(svg.code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);
  CHECK(svg.out.find("<metadata>") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("report tables prints one verdict per table") {
  const auto r = run("report tables");
  CHECK(r.code == 0);
  CHECK(r.out.find("Table 1 PASS") != std::string::npos);
  CHECK(r.out.find("Table 2 PASS") != std::string::npos);
  CHECK(r.out.find("Table 3 ") != std::string::npos);
  CHECK(r.out.find("Table 4 REPORT") != std::string::npos);
}
