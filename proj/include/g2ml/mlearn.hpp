#pragma once

// Classifiers, clusterers and metrics over dense feature matrices.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "g2ml/dataset.hpp"
#include "g2ml/error.hpp"

namespace g2ml::ml {

using Matrix = Eigen::MatrixXd;
using Labels = std::vector<int>;

enum class RowNorm { none, unit_euclidean };

/// Rows scaled to unit Euclidean norm; throws invalid_argument on a zero row.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> normalize_rows(
    const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = x;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const Scalar n = out.row(i).norm();
    if (n == Scalar(0)) {
      throw Error(ErrorCode::invalid_argument, "row " + std::to_string(i) + " is zero");
    }
    out.row(i) /= n;
  }
  return out;
}

enum class Metric { manhattan, euclidean };

Metric parse_metric(const std::string& name);
std::string metric_name(Metric m);

template <class A, class B>
typename A::Scalar distance(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, Metric m) {
  if (m == Metric::manhattan) return (a - b).template lpNorm<1>();
  return (a - b).norm();
}

struct FeatureMatrix {
  Matrix rows;
  Labels labels;
  std::vector<std::string> class_names;
  RowNorm norm = RowNorm::none;

  Eigen::Index size() const { return rows.rows(); }
  int num_classes() const { return static_cast<int>(class_names.size()); }
};

/// Label strings become indices into class_names; rows are unit-normalized
/// when requested.
FeatureMatrix from_table(const FeatureTable& t, const std::vector<std::string>& class_names,
                         RowNorm norm = RowNorm::unit_euclidean);

FeatureMatrix subset(const FeatureMatrix& x, const std::vector<std::size_t>& index);

struct Split {
  FeatureMatrix train;
  FeatureMatrix test;
  std::vector<std::size_t> train_index;
  std::vector<std::size_t> test_index;
};

/// Stratified: each class contributes round(fraction * count) rows to the
/// test side, chosen by a seeded shuffle.
Split train_test_split(const FeatureMatrix& x, double test_fraction, std::uint64_t seed);

Labels knn_predict(const FeatureMatrix& train, const Matrix& query, int k, Metric metric,
                   unsigned threads = 1);

struct TreeNode {
  int feature = -1;
  double threshold = 0;
  int left = -1;
  int right = -1;
  int label = -1;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  template <class Row>
  int predict(const Row& x) const {
    int i = 0;
    while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
      const TreeNode& n = nodes[static_cast<std::size_t>(i)];
      i = x(n.feature) <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(i)].label;
  }
};

struct ForestOptions {
  int trees = 200;
  /// Candidate features per split.
  int max_features = 2;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct RandomForest {
  std::vector<DecisionTree> trees;
  int num_classes = 0;
  std::vector<std::string> class_names;
};

RandomForest random_forest_train(const FeatureMatrix& train, const ForestOptions& options = {});
Labels random_forest_predict(const RandomForest& model, const Matrix& rows, unsigned threads = 1);

struct KMeansResult {
  Labels labels;
  Matrix centroids;
  double wcss = 0;
};

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  unsigned threads = 1;
};

KMeansResult kmeans(const Matrix& x, int k, std::uint64_t seed, const KMeansOptions& options = {});

struct GmmOptions {
  double variance_floor = 1e-10;
  /// Stop when the mean log-likelihood per row improves by less than this.
  double tolerance = 1e-8;
  int max_iter = 500;
  KMeansOptions init;
};

struct GmmResult {
  Labels labels;
  Matrix means;
  Eigen::VectorXd variances;
  Eigen::VectorXd weights;
  double log_likelihood = 0;
  int iterations = 0;
  bool converged = false;
};

GmmResult gmm_spherical(const Matrix& x, int k, std::uint64_t seed, const GmmOptions& options = {});

/// Rows are true classes, columns predicted classes.
using ConfusionMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::int64_t support = 0;
};

struct MetricsReport {
  double accuracy = 0;
  std::vector<ClassMetrics> per_class;
  ClassMetrics macro;
  ClassMetrics weighted;
};

double f1_score(double precision, double recall);
ConfusionMatrix confusion_matrix(const Labels& predicted, const Labels& truth, int num_classes);
MetricsReport metrics_from_confusion(const ConfusionMatrix& c);
MetricsReport evaluate(const Labels& predicted, const Labels& truth, int num_classes,
                       ConfusionMatrix* confusion = nullptr);

double adjusted_rand_index(const Labels& a, const Labels& b);

/// Minimum-cost assignment of rows to distinct columns (rows <= cols);
/// result[i] is the column of row i.
std::vector<int> hungarian(const Matrix& cost);
/// Accuracy after the best one-to-one renaming of clusters to classes.
double matched_accuracy(const Labels& clusters, const Labels& truth);

/// Aligned text in the usual precision/recall/f1/support layout.
std::string format_report(const MetricsReport& r, const std::vector<std::string>& class_names);

nlohmann::json to_json(const MetricsReport& r, const std::vector<std::string>& class_names);
nlohmann::json to_json(const ConfusionMatrix& c);
nlohmann::json to_json(const RandomForest& f);
RandomForest forest_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GmmResult& g);

/// A KNN model is its training set.
struct KnnModel {
  FeatureMatrix train;
  int k = 5;
  Metric metric = Metric::manhattan;
};
nlohmann::json to_json(const KnnModel& m);
KnnModel knn_from_json(const nlohmann::json& j);

}  // namespace g2ml::ml
