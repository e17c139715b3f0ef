#include "g2ml/mlearn.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "g2ml/rng.hpp"

namespace g2ml::ml {

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

int argmax_lowest(const std::vector<int>& counts) {
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double comb2(double n) { return n * (n - 1) / 2; }

}  // namespace

Metric parse_metric(const std::string& name) {
  if (name == "manhattan") return Metric::manhattan;
  if (name == "euclidean") return Metric::euclidean;
  throw Error(ErrorCode::invalid_argument, "unknown metric '" + name + "'");
}

std::string metric_name(Metric m) { return m == Metric::manhattan ? "manhattan" : "euclidean"; }

FeatureMatrix from_table(const FeatureTable& t, const std::vector<std::string>& class_names, RowNorm norm) {
  FeatureMatrix x;
  x.class_names = class_names;
  x.norm = norm;
  x.rows.resize(static_cast<Eigen::Index>(t.rows.size()), 4);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (int j = 0; j < 4; ++j) x.rows(static_cast<Eigen::Index>(i), j) = t.rows[i][static_cast<std::size_t>(j)];
    const auto it = std::find(class_names.begin(), class_names.end(), t.labels[i]);
    if (it == class_names.end()) {
      throw Error(ErrorCode::invalid_argument, "label '" + t.labels[i] + "' is not in the class list");
    }
    x.labels.push_back(static_cast<int>(it - class_names.begin()));
  }
  if (norm == RowNorm::unit_euclidean) x.rows = normalize_rows(x.rows);
  return x;
}

FeatureMatrix subset(const FeatureMatrix& x, const std::vector<std::size_t>& index) {
  FeatureMatrix out;
  out.class_names = x.class_names;
  out.norm = x.norm;
  out.rows.resize(static_cast<Eigen::Index>(index.size()), x.rows.cols());
  for (std::size_t i = 0; i < index.size(); ++i) {
    out.rows.row(static_cast<Eigen::Index>(i)) = x.rows.row(static_cast<Eigen::Index>(index[i]));
    if (!x.labels.empty()) out.labels.push_back(x.labels[index[i]]);
  }
  return out;
}

Split train_test_split(const FeatureMatrix& x, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0 && test_fraction < 1)) {
    throw Error(ErrorCode::invalid_argument, "test fraction must lie in (0, 1)");
  }
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(x.num_classes()));
  for (std::size_t i = 0; i < x.labels.size(); ++i) by_class[static_cast<std::size_t>(x.labels[i])].push_back(i);
  Split s;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 2) {
      throw Error(ErrorCode::invalid_argument, "class '" + x.class_names[c] + "' has fewer than 2 rows");
    }
    Rng rng = stream(seed, c);
    std::shuffle(members.begin(), members.end(), rng);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(members.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
    s.test_index.insert(s.test_index.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train_index.insert(s.train_index.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
  }
  std::sort(s.train_index.begin(), s.train_index.end());
  std::sort(s.test_index.begin(), s.test_index.end());
  s.train = subset(x, s.train_index);
  s.test = subset(x, s.test_index);
  return s;
}

Labels knn_predict(const FeatureMatrix& train, const Matrix& query, int k, Metric metric, unsigned threads) {
  const auto n = static_cast<std::size_t>(train.size());
  if (n == 0) throw Error(ErrorCode::invalid_argument, "empty training set");
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw Error(ErrorCode::invalid_argument, "k must lie in [1, training size]");
  }
  const int classes = std::max(train.num_classes(), *std::max_element(train.labels.begin(), train.labels.end()) + 1);
  Labels out(static_cast<std::size_t>(query.rows()));
  parallel_for(out.size(), threads, [&](std::size_t q) {
    std::vector<std::pair<double, std::size_t>> d(n);
    const auto row = query.row(static_cast<Eigen::Index>(q));
    for (std::size_t i = 0; i < n; ++i) d[i] = {distance(row, train.rows.row(static_cast<Eigen::Index>(i)), metric), i};
    std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
    std::sort(d.begin(), d.begin() + k);
    std::vector<int> votes(static_cast<std::size_t>(classes), 0);
    std::vector<double> dist(static_cast<std::size_t>(classes), 0);
    for (int j = 0; j < k; ++j) {
      const auto c = static_cast<std::size_t>(train.labels[d[static_cast<std::size_t>(j)].second]);
      ++votes[c];
      dist[c] += d[static_cast<std::size_t>(j)].first;
    }
    const int top = *std::max_element(votes.begin(), votes.end());
    int best = -1;
    for (int c = 0; c < classes; ++c) {
      if (votes[static_cast<std::size_t>(c)] != top) continue;
      if (best < 0 || dist[static_cast<std::size_t>(c)] < dist[static_cast<std::size_t>(best)]) best = c;
    }
    out[q] = best;
  });
  return out;
}

namespace {

struct TreeBuilder {
  const Matrix& x;
  const Labels& y;
  int classes;
  int max_features;
  Rng rng;
  DecisionTree tree;

  static double gini(const std::vector<int>& counts, int total) {
    if (total == 0) return 0;
    double s = 0;
    for (int c : counts) s += static_cast<double>(c) * c;
    return 1.0 - s / (static_cast<double>(total) * total);
  }

  int leaf(const std::vector<int>& counts) {
    TreeNode n;
    n.label = argmax_lowest(counts);
    tree.nodes.push_back(n);
    return static_cast<int>(tree.nodes.size() - 1);
  }

  // Best threshold on one feature: (impurity decrease, threshold), or a
  // negative decrease when every value is equal.
  std::pair<double, double> best_split(std::vector<std::size_t>& idx, int feature, const std::vector<int>& counts,
                                       double parent) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const double va = x(static_cast<Eigen::Index>(a), feature), vb = x(static_cast<Eigen::Index>(b), feature);
      return va < vb || (va == vb && a < b);
    });
    const int total = static_cast<int>(idx.size());
    std::vector<int> left(static_cast<std::size_t>(classes), 0);
    std::vector<int> right = counts;
    double best = -1;
    double threshold = 0;
    for (int i = 0; i + 1 < total; ++i) {
      const auto c = static_cast<std::size_t>(y[idx[static_cast<std::size_t>(i)]]);
      ++left[c];
      --right[c];
      const double v = x(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]), feature);
      const double w = x(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i + 1)]), feature);
      if (v == w) continue;
      const int nl = i + 1;
      const int nr = total - nl;
      const double g = parent - (nl * gini(left, nl) + nr * gini(right, nr)) / total;
      if (g > best) {
        best = g;
        threshold = v + (w - v) / 2;
        if (threshold >= w) threshold = v;
      }
    }
    return {best, threshold};
  }

  int build(std::vector<std::size_t>& idx) {
    std::vector<int> counts(static_cast<std::size_t>(classes), 0);
    for (std::size_t i : idx) ++counts[static_cast<std::size_t>(y[i])];
    const int total = static_cast<int>(idx.size());
    if (*std::max_element(counts.begin(), counts.end()) == total) return leaf(counts);
    const double parent = gini(counts, total);

    std::vector<int> features(static_cast<std::size_t>(x.cols()));
    std::iota(features.begin(), features.end(), 0);
    std::shuffle(features.begin(), features.end(), rng);
    int feature = -1;
    double threshold = 0;
    double gain = -1;
    // Draw max_features candidates; keep drawing only if none can split.
    for (std::size_t f = 0; f < features.size(); ++f) {
      if (static_cast<int>(f) >= max_features && feature >= 0) break;
      const auto [g, t] = best_split(idx, features[f], counts, parent);
      if (g > gain) {
        gain = g;
        feature = features[f];
        threshold = t;
      }
    }
    if (feature < 0) return leaf(counts);

    std::vector<std::size_t> l, r;
    for (std::size_t i : idx) (x(static_cast<Eigen::Index>(i), feature) <= threshold ? l : r).push_back(i);
    idx.clear();
    idx.shrink_to_fit();
    const int self = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{feature, threshold, -1, -1, -1});
    const int li = build(l);
    const int ri = build(r);
    tree.nodes[static_cast<std::size_t>(self)].left = li;
    tree.nodes[static_cast<std::size_t>(self)].right = ri;
    return self;
  }
};

}  // namespace

RandomForest random_forest_train(const FeatureMatrix& train, const ForestOptions& options) {
  const auto n = static_cast<std::size_t>(train.size());
  if (n == 0) throw Error(ErrorCode::invalid_argument, "empty training set");
  if (options.trees < 1) throw Error(ErrorCode::invalid_argument, "need at least one tree");
  RandomForest forest;
  forest.class_names = train.class_names;
  forest.num_classes = std::max(train.num_classes(), *std::max_element(train.labels.begin(), train.labels.end()) + 1);
  forest.trees.resize(static_cast<std::size_t>(options.trees));
  parallel_for(forest.trees.size(), options.threads, [&](std::size_t t) {
    TreeBuilder b{train.rows, train.labels, forest.num_classes, std::max(1, options.max_features),
                  stream(options.seed, t), {}};
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = pick(b.rng);
    b.build(sample);
    forest.trees[t] = std::move(b.tree);
  });
  return forest;
}

Labels random_forest_predict(const RandomForest& model, const Matrix& rows, unsigned threads) {
  Labels out(static_cast<std::size_t>(rows.rows()));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    std::vector<int> votes(static_cast<std::size_t>(model.num_classes), 0);
    const auto row = rows.row(static_cast<Eigen::Index>(i));
    for (const auto& t : model.trees) ++votes[static_cast<std::size_t>(t.predict(row))];
    out[i] = argmax_lowest(votes);
  });
  return out;
}

namespace {

KMeansResult kmeans_once(const Matrix& x, int k, Rng rng, int max_iter) {
  const Eigen::Index n = x.rows();
  Matrix centroids(k, x.cols());
  // k-means++ seeding.
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centroids.row(0) = x.row(first(rng));
  Eigen::VectorXd d2 = (x.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index chosen = 0;
    if (total > 0) {
      double r = std::uniform_real_distribution<double>(0, total)(rng);
      for (chosen = 0; chosen < n - 1; ++chosen) {
        r -= d2(chosen);
        if (r < 0) break;
      }
    } else {
      chosen = first(rng);
    }
    centroids.row(c) = x.row(chosen);
    d2 = d2.cwiseMin((x.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }

  KMeansResult res;
  res.labels.assign(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      (centroids.rowwise() - x.row(i)).rowwise().squaredNorm().minCoeff(&best);
      if (res.labels[static_cast<std::size_t>(i)] != static_cast<int>(best)) {
        res.labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
        changed = true;
      }
    }
    if (!changed) break;
    Matrix sums = Matrix::Zero(k, x.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(res.labels[static_cast<std::size_t>(i)]) += x.row(i);
      counts(res.labels[static_cast<std::size_t>(i)]) += 1;
    }
    for (int c = 0; c < k; ++c) {
      if (counts(c) > 0) centroids.row(c) = sums.row(c) / counts(c);
    }
  }
  res.centroids = centroids;
  res.wcss = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    res.wcss += (x.row(i) - centroids.row(res.labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return res;
}

}  // namespace

KMeansResult kmeans(const Matrix& x, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  if (k > x.rows()) throw Error(ErrorCode::invalid_argument, "k exceeds the number of rows");
  const int restarts = std::max(1, options.restarts);
  std::vector<KMeansResult> runs(static_cast<std::size_t>(restarts));
  parallel_for(runs.size(), options.threads,
               [&](std::size_t r) { runs[r] = kmeans_once(x, k, stream(seed, r), options.max_iter); });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].wcss < runs[best].wcss) best = r;
  }
  return runs[best];
}

GmmResult gmm_spherical(const Matrix& x, int k, std::uint64_t seed, const GmmOptions& options) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  if (k > x.rows()) throw Error(ErrorCode::invalid_argument, "k exceeds the number of rows");
  const Eigen::Index n = x.rows();
  const auto d = static_cast<double>(x.cols());
  const KMeansResult init = kmeans(x, k, seed, options.init);

  GmmResult g;
  g.means = init.centroids;
  g.variances = Eigen::VectorXd::Zero(k);
  g.weights = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = init.labels[static_cast<std::size_t>(i)];
    g.variances(c) += (x.row(i) - g.means.row(c)).squaredNorm();
    g.weights(c) += 1;
  }
  for (int c = 0; c < k; ++c) {
    g.variances(c) = std::max(options.variance_floor, g.weights(c) > 0 ? g.variances(c) / (d * g.weights(c)) : 1.0);
    g.weights(c) /= static_cast<double>(n);
  }

  Matrix resp(n, k);
  auto e_step = [&]() {
    double ll = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int c = 0; c < k; ++c) {
        const double sq = (x.row(i) - g.means.row(c)).squaredNorm();
        resp(i, c) = std::log(std::max(g.weights(c), std::numeric_limits<double>::min())) -
                     0.5 * d * std::log(2 * M_PI * g.variances(c)) - sq / (2 * g.variances(c));
      }
      const double m = resp.row(i).maxCoeff();
      const double lse = m + std::log((resp.row(i).array() - m).exp().sum());
      resp.row(i) = (resp.row(i).array() - lse).exp();
      ll += lse;
    }
    return ll / static_cast<double>(n);
  };

  double ll = e_step();
  for (g.iterations = 1; g.iterations <= options.max_iter; ++g.iterations) {
    const Eigen::VectorXd nk = resp.colwise().sum().transpose();
    for (int c = 0; c < k; ++c) {
      if (nk(c) <= 0) continue;
      g.means.row(c) = (resp.col(c).transpose() * x) / nk(c);
      const double ss = ((x.rowwise() - g.means.row(c)).rowwise().squaredNorm().array() * resp.col(c).array()).sum();
      g.variances(c) = std::max(options.variance_floor, ss / (d * nk(c)));
      g.weights(c) = nk(c) / static_cast<double>(n);
    }
    const double next = e_step();
    const double gain = next - ll;
    ll = next;
    if (std::abs(gain) < options.tolerance) {
      g.converged = true;
      break;
    }
  }
  g.iterations = std::min(g.iterations, options.max_iter);
  g.log_likelihood = ll;
  g.labels.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    resp.row(i).maxCoeff(&best);
    g.labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return g;
}

double f1_score(double precision, double recall) {
  return precision + recall == 0 ? 0.0 : 2 * precision * recall / (precision + recall);
}

ConfusionMatrix confusion_matrix(const Labels& predicted, const Labels& truth, int num_classes) {
  if (predicted.size() != truth.size()) throw Error(ErrorCode::invalid_argument, "label vectors differ in length");
  ConfusionMatrix c = ConfusionMatrix::Zero(num_classes, num_classes);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= num_classes || predicted[i] < 0 || predicted[i] >= num_classes) {
      throw Error(ErrorCode::invalid_argument, "label out of range");
    }
    ++c(truth[i], predicted[i]);
  }
  return c;
}

MetricsReport metrics_from_confusion(const ConfusionMatrix& c) {
  MetricsReport r;
  const auto k = c.rows();
  const auto total = static_cast<double>(c.sum());
  r.accuracy = total > 0 ? static_cast<double>(c.trace()) / total : 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    ClassMetrics m;
    const auto tp = static_cast<double>(c(i, i));
    const auto predicted = static_cast<double>(c.col(i).sum());
    m.support = c.row(i).sum();
    m.precision = predicted > 0 ? tp / predicted : 0;
    m.recall = m.support > 0 ? tp / static_cast<double>(m.support) : 0;
    m.f1 = f1_score(m.precision, m.recall);
    r.per_class.push_back(m);
    r.macro.precision += m.precision / static_cast<double>(k);
    r.macro.recall += m.recall / static_cast<double>(k);
    r.macro.f1 += m.f1 / static_cast<double>(k);
    if (total > 0) {
      const double w = static_cast<double>(m.support) / total;
      r.weighted.precision += w * m.precision;
      r.weighted.recall += w * m.recall;
      r.weighted.f1 += w * m.f1;
    }
  }
  r.macro.support = r.weighted.support = c.sum();
  return r;
}

MetricsReport evaluate(const Labels& predicted, const Labels& truth, int num_classes, ConfusionMatrix* confusion) {
  const ConfusionMatrix c = confusion_matrix(predicted, truth, num_classes);
  if (confusion != nullptr) *confusion = c;
  return metrics_from_confusion(c);
}

double adjusted_rand_index(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "label vectors differ in length");
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cells[{a[i], b[i]}] += 1;
    rows[a[i]] += 1;
    cols[b[i]] += 1;
  }
  double index = 0, sum_a = 0, sum_b = 0;
  for (const auto& [key, v] : cells) index += comb2(v);
  for (const auto& [key, v] : rows) sum_a += comb2(v);
  for (const auto& [key, v] : cols) sum_b += comb2(v);
  const double pairs = comb2(static_cast<double>(a.size()));
  const double expected = pairs > 0 ? sum_a * sum_b / pairs : 0;
  const double max_index = (sum_a + sum_b) / 2;
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

std::vector<int> hungarian(const Matrix& cost) {
  const auto n = static_cast<int>(cost.rows());
  const auto m = static_cast<int>(cost.cols());
  if (n > m) throw Error(ErrorCode::invalid_argument, "more rows than columns");
  // Potentials method, 1-based with a virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n + 1)), v(static_cast<std::size_t>(m + 1));
  std::vector<int> p(static_cast<std::size_t>(m + 1)), way(static_cast<std::size_t>(m + 1));
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(m + 1), inf);
    std::vector<char> used(static_cast<std::size_t>(m + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= m; ++j) {
    if (p[static_cast<std::size_t>(j)] != 0) assignment[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
  }
  return assignment;
}

double matched_accuracy(const Labels& clusters, const Labels& truth) {
  if (clusters.size() != truth.size()) throw Error(ErrorCode::invalid_argument, "label vectors differ in length");
  if (clusters.empty()) return 0;
  const int kc = *std::max_element(clusters.begin(), clusters.end()) + 1;
  const int kt = *std::max_element(truth.begin(), truth.end()) + 1;
  const int size = std::max(kc, kt);
  Matrix counts = Matrix::Zero(size, size);
  for (std::size_t i = 0; i < clusters.size(); ++i) counts(clusters[i], truth[i]) += 1;
  const Matrix cost = counts.maxCoeff() - counts.array();
  const auto assign = hungarian(cost);
  double hit = 0;
  for (int c = 0; c < size; ++c) hit += counts(c, assign[static_cast<std::size_t>(c)]);
  return hit / static_cast<double>(clusters.size());
}

std::string format_report(const MetricsReport& r, const std::vector<std::string>& class_names) {
  std::size_t width = 12;
  for (const auto& n : class_names) width = std::max(width, n.size());
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << std::string(width, ' ') << std::setw(11) << "precision" << std::setw(10) << "recall" << std::setw(10)
      << "f1-score" << std::setw(10) << "support" << "\n\n";
  auto line = [&](const std::string& name, const ClassMetrics& m) {
    out << std::setw(static_cast<int>(width)) << name << std::setw(11) << m.precision << std::setw(10) << m.recall
        << std::setw(10) << m.f1 << std::setw(10) << m.support << '\n';
  };
  for (std::size_t i = 0; i < r.per_class.size(); ++i) {
    line(i < class_names.size() ? class_names[i] : std::to_string(i), r.per_class[i]);
  }
  out << '\n'
      << std::setw(static_cast<int>(width)) << "accuracy" << std::setw(31) << r.accuracy << std::setw(10)
      << r.macro.support << '\n';
  line("macro avg", r.macro);
  line("weighted avg", r.weighted);
  return out.str();
}

nlohmann::json to_json(const MetricsReport& r, const std::vector<std::string>& class_names) {
  auto m = [](const ClassMetrics& c) {
    return nlohmann::json{{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}};
  };
  nlohmann::json per = nlohmann::json::object();
  for (std::size_t i = 0; i < r.per_class.size(); ++i) {
    per[i < class_names.size() ? class_names[i] : std::to_string(i)] = m(r.per_class[i]);
  }
  return {{"accuracy", r.accuracy}, {"classes", per}, {"macroAvg", m(r.macro)}, {"weightedAvg", m(r.weighted)}};
}

nlohmann::json to_json(const ConfusionMatrix& c) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < c.cols(); ++j) row.push_back(c(i, j));
    out.push_back(row);
  }
  return out;
}

namespace {

nlohmann::json node_json(const DecisionTree& t, int i) {
  const TreeNode& n = t.nodes[static_cast<std::size_t>(i)];
  if (n.feature < 0) return {{"label", n.label}};
  return {{"feature", n.feature},
          {"threshold", n.threshold},
          {"left", node_json(t, n.left)},
          {"right", node_json(t, n.right)}};
}

int node_from_json(DecisionTree& t, const nlohmann::json& j) {
  const int self = static_cast<int>(t.nodes.size());
  t.nodes.emplace_back();
  if (j.contains("label")) {
    t.nodes.back().label = j.at("label").get<int>();
    return self;
  }
  t.nodes[static_cast<std::size_t>(self)].feature = j.at("feature").get<int>();
  t.nodes[static_cast<std::size_t>(self)].threshold = j.at("threshold").get<double>();
  const int l = node_from_json(t, j.at("left"));
  const int r = node_from_json(t, j.at("right"));
  t.nodes[static_cast<std::size_t>(self)].left = l;
  t.nodes[static_cast<std::size_t>(self)].right = r;
  return self;
}

void check_kind(const nlohmann::json& j, const char* kind) {
  if (j.value("schema", "") != "g2ml-model/1" || j.value("kind", "") != kind) {
    throw Error(ErrorCode::schema_mismatch, std::string("expected a g2ml-model/1 ") + kind + " model");
  }
}

}  // namespace

nlohmann::json to_json(const RandomForest& f) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : f.trees) trees.push_back(node_json(t, 0));
  return {{"schema", "g2ml-model/1"},
          {"kind", "forest"},
          {"classes", f.class_names},
          {"numClasses", f.num_classes},
          {"trees", trees}};
}

RandomForest forest_from_json(const nlohmann::json& j) {
  check_kind(j, "forest");
  try {
    RandomForest f;
    f.class_names = j.at("classes").get<std::vector<std::string>>();
    f.num_classes = j.at("numClasses").get<int>();
    for (const auto& t : j.at("trees")) {
      DecisionTree tree;
      node_from_json(tree, t);
      f.trees.push_back(std::move(tree));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

nlohmann::json to_json(const GmmResult& g) {
  nlohmann::json means = nlohmann::json::array();
  for (Eigen::Index c = 0; c < g.means.rows(); ++c) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < g.means.cols(); ++j) row.push_back(g.means(c, j));
    means.push_back(row);
  }
  return {{"schema", "g2ml-model/1"},
          {"kind", "gmm-spherical"},
          {"means", means},
          {"variances", std::vector<double>(g.variances.data(), g.variances.data() + g.variances.size())},
          {"weights", std::vector<double>(g.weights.data(), g.weights.data() + g.weights.size())},
          {"logLikelihood", g.log_likelihood},
          {"iterations", g.iterations},
          {"converged", g.converged}};
}

nlohmann::json to_json(const KnnModel& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.train.rows.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.train.rows.cols(); ++j) r.push_back(m.train.rows(i, j));
    rows.push_back(r);
  }
  return {{"schema", "g2ml-model/1"},
          {"kind", "knn"},
          {"k", m.k},
          {"metric", metric_name(m.metric)},
          {"rowNorm", m.train.norm == RowNorm::unit_euclidean ? "unit-euclidean" : "none"},
          {"classes", m.train.class_names},
          {"rows", rows},
          {"labels", m.train.labels}};
}

KnnModel knn_from_json(const nlohmann::json& j) {
  check_kind(j, "knn");
  try {
    KnnModel m;
    m.k = j.at("k").get<int>();
    m.metric = parse_metric(j.at("metric").get<std::string>());
    m.train.norm = j.at("rowNorm") == "unit-euclidean" ? RowNorm::unit_euclidean : RowNorm::none;
    m.train.class_names = j.at("classes").get<std::vector<std::string>>();
    m.train.labels = j.at("labels").get<Labels>();
    const auto& rows = j.at("rows");
    const std::size_t cols = rows.empty() ? 4 : rows.at(0).size();
    m.train.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t c = 0; c < cols; ++c) {
        m.train.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i].at(c).get<double>();
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

}  // namespace g2ml::ml
