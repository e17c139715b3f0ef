#pragma once

// Labeled moduli-point records keyed by absolute invariants, with JSONL
// persistence and feature export.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2ml/igusa.hpp"
#include "g2ml/rng.hpp"
#include "g2ml/wproj.hpp"

namespace g2ml {

inline constexpr const char* kSchemaVersion = "g2ml/1";

enum class Provenance { enumerated, l2_param, l3_param, l5_param, random };

std::string provenance_name(Provenance p);
Provenance parse_provenance(const std::string& name);

/// Known automorphism information. `extra` means an involution beyond the
/// hyperelliptic one (J30 = 0); `c10` is the curve y^2 = x^5 - 1.
enum class AutLabel { unknown, extra, c10 };

using TriState = std::optional<bool>;

struct DatasetRecord {
  AbsoluteTriple key;
  ModuliPoint p;
  WeightedPoint p_abs;
  double wh = 0;
  double awh = 0;
  Integer gcd;
  TriState fine;
  AutLabel aut = AutLabel::unknown;
  bool in_l2 = false;
  TriState in_l3;
  TriState in_l5;
  Provenance provenance = Provenance::enumerated;

  bool operator==(const DatasetRecord& o) const;
};

DatasetRecord build_record(const ModuliPoint& p, Provenance provenance);

/// Label-wise union of two records of the same class; throws label_conflict.
DatasetRecord merge_records(const DatasetRecord& a, const DatasetRecord& b);

nlohmann::json to_json(const DatasetRecord& r);
DatasetRecord record_from_json(const nlohmann::json& j);

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(nlohmann::json metadata) : metadata_(std::move(metadata)) {}

  /// Adds a record, merging labels when its class is already present.
  void insert(const DatasetRecord& r);
  void insert(const ModuliPoint& p, Provenance provenance) { insert(build_record(p, provenance)); }

  std::size_t size() const noexcept { return records_.size(); }
  bool contains(const AbsoluteTriple& key) const { return records_.count(key) != 0; }
  const DatasetRecord& at(const AbsoluteTriple& key) const;
  const std::map<AbsoluteTriple, DatasetRecord>& records() const noexcept { return records_; }

  const nlohmann::json& metadata() const noexcept { return metadata_; }
  nlohmann::json& metadata() noexcept { return metadata_; }

  bool operator==(const Dataset& o) const {
    return metadata_ == o.metadata_ && records_ == o.records_;
  }

 private:
  nlohmann::json metadata_ = nlohmann::json::object();
  std::map<AbsoluteTriple, DatasetRecord> records_;
};

/// Union by key. Metadata of `a` wins; `b`'s is kept under "merged".
Dataset merge_datasets(const Dataset& a, const Dataset& b);

void export_jsonl(const Dataset& d, std::ostream& out);
Dataset import_jsonl(std::istream& in);
void export_jsonl(const Dataset& d, const std::string& path);
Dataset import_jsonl(const std::string& path);

enum class ClassScheme { three, four };

ClassScheme parse_scheme(const std::string& name);
std::vector<std::string> class_names(ClassScheme scheme);

/// Class label under the scheme, or nothing when the record is ambiguous.
std::optional<std::string> classify(const DatasetRecord& r, ClassScheme scheme);

struct FeatureTable {
  /// (J2, J4, J6, J10) divided by the largest absolute coordinate.
  std::vector<std::array<double, 4>> rows;
  std::vector<std::string> labels;
  std::size_t excluded = 0;
};

FeatureTable feature_table(const Dataset& d, ClassScheme scheme);
void write_features_csv(const FeatureTable& t, std::ostream& out);
FeatureTable read_features_csv(std::istream& in);

struct AuditReport {
  std::size_t records = 0;
  std::vector<std::string> key_mismatches;
  std::vector<std::string> l2_mismatches;
  std::vector<std::string> provenance_violations;

  bool ok() const {
    return key_mismatches.empty() && l2_mismatches.empty() && provenance_violations.empty();
  }
};

AuditReport audit(const Dataset& d);
nlohmann::json to_json(const AuditReport& r);

struct Composition {
  std::size_t l2 = 0;
  std::size_t l3 = 0;
  std::size_t l5 = 0;
  std::size_t other = 0;
  RationalRange l2_range{1000000, 1};
  RationalRange l3_range{1000000, 1};
  RationalRange l5_s_range{1000000, 1};
  RationalRange l5_t_range{1000000, 1};
  /// Height of the box "other" points are drawn from.
  long other_height = 2;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

nlohmann::json to_json(const Composition& c);

/// Draws the requested number of distinct classes per source. Each source
/// uses its own seeded streams, so counts of one do not shift another.
Dataset generate_dataset(const Composition& c);

}  // namespace g2ml
