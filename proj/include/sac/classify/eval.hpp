#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sac/classify/dataset.hpp"
#include "sac/classify/forest.hpp"
#include "sac/classify/metrics.hpp"

namespace sac {
namespace classify {

struct FoldReport {
  std::string project;  // held-out project
  EvalMetrics metrics;
  // Provenance, for leakage checks and the JSON report.
  size_t vocab_size = 0;
  size_t train_pos = 0;        // before SMOTE
  size_t train_neg = 0;
  size_t train_pos_after = 0;  // after SMOTE
  size_t train_neg_after = 0;
  size_t test_size = 0;
};

struct LopoReport {
  std::vector<FoldReport> folds;  // project name order
  EvalMetrics macro;              // unweighted mean of fold percentages
  std::vector<Label> predictions;  // one per input record, input order
};

struct LopoOptions {
  ForestParams forest;
  size_t max_terms = 2000;
  int smote_k = 5;
  double threshold = 0.5;
};

/// Leave-one-project-out evaluation. Per fold: fit the feature space on the
/// training projects only, SMOTE the training vectors only, train, predict
/// the held-out project. Throws std::invalid_argument on fewer than two
/// projects, unlabeled records, or a single-class training fold.
LopoReport lopo_eval(const std::vector<RequirementRecord>& data,
                     const LopoOptions& options);

/// Section-level confusion: a (project, section) is positive when any of
/// its requirements is sec, predicted positive when any prediction is sec.
EvalMetrics section_eval(const std::vector<RequirementRecord>& gold,
                         const std::vector<Label>& predicted);

/// Applies the model to every record of `data`, in order.
std::vector<Label> predict_labels(const ForestModel& model, const FeatureSpace& fs,
                                  const std::vector<RequirementRecord>& data,
                                  double threshold = 0.5);

}  // namespace classify
}  // namespace sac
