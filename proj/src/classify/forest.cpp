#include "sac/classify/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "sac/rng.hpp"

#include "json.hpp"

namespace sac {
namespace classify {

int Tree::vote(const std::vector<double>& x) const {
  size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    i = size_t(x[size_t(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[i].count_pos > nodes[i].count_neg ? 1 : 0;
}

namespace {

struct Matrix {
  const std::vector<std::vector<double>>* rows;
  double at(size_t r, size_t f) const { return (*rows)[r][f]; }
};

double gini(int64_t n0, int64_t n1) {
  const double n = double(n0 + n1);
  if (n == 0.0) return 0.0;
  const double p0 = double(n0) / n;
  const double p1 = double(n1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct SplitChoice {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double decrease = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& X, const std::vector<int>& y, const ForestParams& p,
              size_t n_features, SplitMix64 rng)
      : X_(X), y_(y), params_(p), n_features_(n_features), rng_(rng) {
    m_candidates_ = size_t(std::ceil(std::sqrt(double(n_features))));
    if (m_candidates_ == 0) m_candidates_ = 1;
    if (m_candidates_ > n_features) m_candidates_ = n_features;
  }

  Tree build(const std::vector<size_t>& bootstrap) {
    tree_.nodes.clear();
    grow(bootstrap, 0);
    return std::move(tree_);
  }

 private:
  // Returns the index of the subtree root it created.
  int grow(const std::vector<size_t>& samples, int depth) {
    int64_t n1 = 0;
    for (size_t r : samples) n1 += y_[r];
    const int64_t n0 = int64_t(samples.size()) - n1;

    const int node_index = int(tree_.nodes.size());
    tree_.nodes.push_back({});
    TreeNode& placeholder = tree_.nodes.back();
    placeholder.count_neg = n0;
    placeholder.count_pos = n1;

    const bool depth_capped =
        params_.max_depth && depth >= *params_.max_depth;
    if (n0 == 0 || n1 == 0 || samples.size() < 2 || depth_capped)
      return node_index;

    SplitChoice best = choose_split(samples, gini(n0, n1));
    if (!best.found) return node_index;

    std::vector<size_t> left, right;
    for (size_t r : samples)
      (X_.at(r, size_t(best.feature)) <= best.threshold ? left : right)
          .push_back(r);

    // placeholder reference may dangle after recursion reallocates
    const int left_index = grow(left, depth + 1);
    const int right_index = grow(right, depth + 1);
    TreeNode& node = tree_.nodes[size_t(node_index)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left_index;
    node.right = right_index;
    return node_index;
  }

  SplitChoice choose_split(const std::vector<size_t>& samples, double parent_gini) {
    // Candidate features without replacement, in ascending order so equal
    // decreases resolve to the lowest feature index, then lowest threshold.
    std::vector<size_t> pool(n_features_);
    std::iota(pool.begin(), pool.end(), size_t(0));
    for (size_t i = 0; i < m_candidates_; ++i) {
      size_t j = i + rng_.next_index(n_features_ - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(m_candidates_);
    std::sort(pool.begin(), pool.end());

    const int64_t msl = std::max(params_.min_samples_leaf, 1);
    const int64_t n = int64_t(samples.size());
    int64_t total1 = 0;
    for (size_t r : samples) total1 += y_[r];
    const int64_t total0 = n - total1;

    SplitChoice best;
    std::vector<std::pair<double, int>> column;
    column.reserve(samples.size());
    for (size_t f : pool) {
      column.clear();
      for (size_t r : samples) column.push_back({X_.at(r, f), y_[r]});
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      int64_t l0 = 0, l1 = 0;
      for (size_t i = 0; i + 1 < column.size(); ++i) {
        if (column[i].second == 0) ++l0;
        else ++l1;
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (lo == hi) continue;
        const int64_t nl = l0 + l1;
        const int64_t nr = n - nl;
        if (nl < msl || nr < msl) continue;
        double threshold = lo + (hi - lo) / 2.0;
        if (threshold >= hi) threshold = lo;  // adjacent doubles
        const double weighted = (double(nl) * gini(l0, l1) +
                                 double(nr) * gini(total0 - l0, total1 - l1)) /
                                double(n);
        const double decrease = parent_gini - weighted;
        if (decrease > best.decrease) {
          best.found = true;
          best.feature = int(f);
          best.threshold = threshold;
          best.decrease = decrease;
        }
      }
    }
    return best;
  }

  const Matrix& X_;
  const std::vector<int>& y_;
  const ForestParams& params_;
  size_t n_features_;
  size_t m_candidates_;
  SplitMix64 rng_;
  Tree tree_;
};

Tree train_tree(const Matrix& X, const std::vector<int>& y,
                const ForestParams& params, size_t n_features, uint64_t tree_seed) {
  SplitMix64 rng(tree_seed);
  const size_t n = y.size();
  std::vector<size_t> bootstrap(n);
  for (size_t i = 0; i < n; ++i) bootstrap[i] = rng.next_index(n);
  std::sort(bootstrap.begin(), bootstrap.end());
  TreeBuilder builder(X, y, params, n_features, rng);
  return builder.build(bootstrap);
}

}  // namespace

ForestModel train_forest_with_threads(const std::vector<std::vector<double>>& X,
                                      const std::vector<int>& y,
                                      const ForestParams& params,
                                      unsigned n_threads) {
  if (X.size() != y.size())
    throw std::invalid_argument("train_forest: X and y sizes differ");
  if (X.size() < 2)
    throw std::invalid_argument("train_forest: need at least two samples");
  if (params.n_trees < 1)
    throw std::invalid_argument("train_forest: n_trees must be positive");
  const size_t n_features = X[0].size();
  if (n_features == 0)
    throw std::invalid_argument("train_forest: zero-width samples");
  for (const auto& row : X)
    if (row.size() != n_features)
      throw std::invalid_argument("train_forest: rows have differing widths");
  bool has0 = false, has1 = false;
  for (int label : y) {
    if (label == 0) has0 = true;
    else if (label == 1) has1 = true;
    else throw std::invalid_argument("train_forest: labels must be 0 or 1");
  }
  if (!has0 || !has1)
    throw std::invalid_argument("train_forest: both classes must be present");

  ForestModel model;
  model.params = params;
  model.n_features = n_features;
  model.trees.resize(size_t(params.n_trees));

  const Matrix mat{&X};
  auto build_range = [&](size_t first, size_t step) {
    for (size_t t = first; t < model.trees.size(); t += step)
      model.trees[t] =
          train_tree(mat, y, params, n_features, SplitMix64::derive(params.seed, t));
  };

  if (n_threads <= 1 || model.trees.size() < 2) {
    build_range(0, 1);
  } else {
    const size_t workers = std::min<size_t>(n_threads, model.trees.size());
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back(build_range, w, workers);
    for (auto& th : pool) th.join();
  }
  return model;
}

ForestModel train_forest(const std::vector<std::vector<double>>& X,
                         const std::vector<int>& y, const ForestParams& params) {
  unsigned hw = std::thread::hardware_concurrency();
  return train_forest_with_threads(X, y, params, hw == 0 ? 1 : hw);
}

Prediction predict_vector(const ForestModel& model, const std::vector<double>& x,
                          double threshold) {
  if (x.size() != model.n_features)
    throw std::invalid_argument("predict: vector width does not match the model");
  int64_t votes = 0;
  for (const Tree& tree : model.trees) votes += tree.vote(x);
  Prediction p;
  p.score = model.trees.empty() ? 0.0 : double(votes) / double(model.trees.size());
  p.label = p.score >= threshold ? 1 : 0;
  return p;
}

Prediction predict(const ForestModel& model, const FeatureSpace& fs,
                   const std::string& text, double threshold) {
  if (fs.dim() != model.n_features)
    throw std::invalid_argument(
        "predict: feature space width does not match the model");
  return predict_vector(model, vectorize(fs, text), threshold);
}

std::string model_to_json(const ForestModel& model, const FeatureSpace& fs) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["version"] = 1;
  doc["vocab"] = fs.vocab;
  doc["idf"] = fs.idf;
  json params;
  params["n_trees"] = model.params.n_trees;
  if (model.params.max_depth) params["max_depth"] = *model.params.max_depth;
  else params["max_depth"] = nullptr;
  params["min_samples_leaf"] = model.params.min_samples_leaf;
  params["max_features_rule"] = "sqrt";
  params["seed"] = model.params.seed;
  doc["params"] = std::move(params);
  json trees = json::array();
  for (const Tree& tree : model.trees) {
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes) {
      json jn;
      if (n.is_leaf()) {
        jn["n"] = {n.count_neg, n.count_pos};
      } else {
        jn["f"] = n.feature;
        jn["t"] = n.threshold;
        jn["l"] = n.left;
        jn["r"] = n.right;
      }
      nodes.push_back(std::move(jn));
    }
    trees.push_back(std::move(nodes));
  }
  doc["trees"] = std::move(trees);
  doc["positive_label"] = model.positive_label;
  return doc.dump(2) + "\n";
}

void model_from_json(const std::string& json_text, ForestModel& model,
                     FeatureSpace& fs) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("model file is not valid JSON: ") +
                             e.what());
  }
  if (!doc.is_object() || !doc.contains("version") ||
      !doc["version"].is_number_integer())
    throw std::runtime_error("model file has no version field");
  if (doc["version"].get<int>() != 1)
    throw std::runtime_error("unsupported model version " +
                             doc["version"].dump());

  try {
    fs = FeatureSpace{};
    fs.vocab = doc.at("vocab").get<std::vector<std::string>>();
    fs.idf = doc.at("idf").get<std::vector<double>>();
    if (fs.vocab.size() != fs.idf.size())
      throw std::runtime_error("vocab and idf lengths differ");
    fs.max_terms = std::max(fs.vocab.size(), size_t(1));
    fs.finalize();

    model = ForestModel{};
    const json& params = doc.at("params");
    model.params.n_trees = params.at("n_trees").get<int>();
    if (!params.at("max_depth").is_null())
      model.params.max_depth = params.at("max_depth").get<int>();
    model.params.min_samples_leaf = params.at("min_samples_leaf").get<int>();
    model.params.seed = params.at("seed").get<uint64_t>();
    model.n_features = fs.vocab.size();
    model.positive_label = doc.at("positive_label").get<std::string>();

    for (const json& jt : doc.at("trees")) {
      Tree tree;
      for (const json& jn : jt) {
        TreeNode n;
        if (jn.contains("n")) {
          n.count_neg = jn["n"].at(0).get<int64_t>();
          n.count_pos = jn["n"].at(1).get<int64_t>();
        } else {
          n.feature = jn.at("f").get<int>();
          n.threshold = jn.at("t").get<double>();
          n.left = jn.at("l").get<int>();
          n.right = jn.at("r").get<int>();
          if (n.feature < 0 || size_t(n.feature) >= model.n_features)
            throw std::runtime_error("tree references a feature out of range");
        }
        tree.nodes.push_back(n);
      }
      for (const TreeNode& n : tree.nodes) {
        if (n.is_leaf()) continue;
        if (n.left < 0 || n.right < 0 ||
            size_t(n.left) >= tree.nodes.size() ||
            size_t(n.right) >= tree.nodes.size())
          throw std::runtime_error("tree references a node out of range");
      }
      if (tree.nodes.empty())
        throw std::runtime_error("model contains an empty tree");
      model.trees.push_back(std::move(tree));
    }
    if (int(model.trees.size()) != model.params.n_trees)
      throw std::runtime_error("tree count does not match params.n_trees");
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("model file is malformed: ") + e.what());
  }
}

}  // namespace classify
}  // namespace sac
