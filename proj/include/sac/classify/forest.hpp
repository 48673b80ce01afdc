#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sac/classify/features.hpp"

namespace sac {
namespace classify {

struct ForestParams {
  int n_trees = 100;
  std::optional<int> max_depth;  // absent = unbounded
  int min_samples_leaf = 1;
  uint64_t seed = 42;
  // Per-split candidate features are always ceil(sqrt(F)), drawn without
  // replacement.
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int64_t count_neg = 0;  // leaf class counts, bootstrap sample
  int64_t count_pos = 0;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  /// 1 when the leaf votes positive; count ties go to the negative class.
  int vote(const std::vector<double>& x) const;
};

struct ForestModel {
  ForestParams params;
  size_t n_features = 0;
  std::vector<Tree> trees;
  std::string positive_label = "sec";
};

/// Bootstrapped Gini trees with midpoint thresholds. Split ties resolve to
/// the lowest feature index, then the lowest threshold. Tree i uses a PRNG
/// stream derived from (seed, i), so parallel and sequential training build
/// identical forests. Throws std::invalid_argument on fewer than two
/// samples or a single class.
ForestModel train_forest(const std::vector<std::vector<double>>& X,
                         const std::vector<int>& y, const ForestParams& params);

/// Same result for any thread count.
ForestModel train_forest_with_threads(const std::vector<std::vector<double>>& X,
                                      const std::vector<int>& y,
                                      const ForestParams& params,
                                      unsigned n_threads);

struct Prediction {
  int label = 0;      // 1 = positive class
  double score = 0;   // fraction of trees voting positive
};

/// Majority vote over the forest; label is positive when score >= threshold.
Prediction predict_vector(const ForestModel& model, const std::vector<double>& x,
                          double threshold = 0.5);

/// Convenience: vectorize then vote. Throws std::invalid_argument when the
/// feature space width does not match the model.
Prediction predict(const ForestModel& model, const FeatureSpace& fs,
                   const std::string& text, double threshold = 0.5);

/// Single-document JSON model with the feature space baked in. Loading a
/// different version is an error (std::runtime_error).
std::string model_to_json(const ForestModel& model, const FeatureSpace& fs);
void model_from_json(const std::string& json_text, ForestModel& model,
                     FeatureSpace& fs);

}  // namespace classify
}  // namespace sac
