#pragma once

// Run configuration shared by every subcommand, and helpers that write
// output files with the configuration embedded.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2ml/arith.hpp"
#include "g2ml/dataset.hpp"

namespace g2ml::cli {

inline constexpr const char* kToolName = "g2ml";

struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  // Counting and scans.
  std::string weights = "1,2,3,5";
  std::string height = "1";
  bool strict = false;
  double candidate_limit = 1e10;

  // Generation quotas and parameter ranges ("num_max/den_max").
  std::uint64_t n = 10;
  std::uint64_t l2 = 10000;
  std::uint64_t l3 = 10000;
  std::uint64_t l5 = 0;
  std::uint64_t other = 10000;
  std::string l2_range = "1000000/1";
  std::string l3_range = "1000000/1";
  std::string l5_s_range = "1000000/1";
  std::string l5_t_range = "1000000/1";
  long other_height = 2;
  long enum_height = 0;

  // Machine learning.
  std::string scheme = "3";
  std::string model = "knn";
  int k = 5;
  std::string metric = "manhattan";
  int trees = 200;
  double test_fraction = 0.3;
  int clusters = 4;
  std::string algorithm = "both";
  int restarts = 10;
  std::string sizes = "0.1,0.25,0.5,1";

  // Plot.
  std::string axes = "1,2";

  std::vector<std::string> inputs;
  std::string model_path;
  std::string out;
};

/// Applies one key=value setting; keys are the long flag names. Throws
/// invalid_argument on an unknown key or a malformed value.
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);

/// Reads a config file: key=value lines ('#' comments), or a JSON object
/// holding a run config directly, under "runConfig", or in the metadata of
/// an artifact header line.
void load_config(RunConfig& c, const std::filesystem::path& path);

/// Checks ranges and parses every textual field once; throws invalid_argument.
void validate(const RunConfig& c);

nlohmann::json to_json(const RunConfig& c);
/// {"tool", "version", "runConfig"}.
nlohmann::json provenance(const RunConfig& c);

Rational height_of(const RunConfig& c);
RationalRange parse_range(const std::string& text);
std::vector<unsigned> parse_unsigned_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
Composition composition_of(const RunConfig& c);

/// Writes to a temporary sibling and renames it into place, creating the
/// parent directory first.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace g2ml::cli
