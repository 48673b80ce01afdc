#include "sac/classify/eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "sac/classify/smote.hpp"
#include "sac/rng.hpp"

namespace sac {
namespace classify {

LopoReport lopo_eval(const std::vector<RequirementRecord>& data,
                     const LopoOptions& options) {
  std::set<std::string> project_set;
  for (const RequirementRecord& rec : data) {
    if (rec.label == Label::Unlabeled)
      throw std::invalid_argument("record " + rec.project + "/" + rec.req_id +
                                  " is unlabeled");
    project_set.insert(rec.project);
  }
  if (project_set.size() < 2)
    throw std::invalid_argument("leave-one-project-out needs at least two projects");

  const std::vector<std::string> projects(project_set.begin(), project_set.end());
  LopoReport report;
  report.predictions.assign(data.size(), Label::Unlabeled);

  for (size_t fold = 0; fold < projects.size(); ++fold) {
    const std::string& held_out = projects[fold];

    std::vector<const RequirementRecord*> train;
    std::vector<size_t> test;
    for (size_t i = 0; i < data.size(); ++i)
      if (data[i].project == held_out) test.push_back(i);
      else train.push_back(&data[i]);

    std::vector<std::string> train_texts;
    std::vector<int> train_labels;
    for (const RequirementRecord* rec : train) {
      train_texts.push_back(rec->text);
      train_labels.push_back(rec->label == Label::Sec ? 1 : 0);
    }
    const size_t pos = size_t(std::count(train_labels.begin(), train_labels.end(), 1));
    const size_t neg = train_labels.size() - pos;
    if (pos == 0 || neg == 0)
      throw std::invalid_argument("training fold for " + held_out +
                                  " has a single class");

    // The feature space and the oversampling see the training fold only.
    FeatureSpace fs = fit_feature_space(train_texts, options.max_terms);
    std::vector<std::vector<double>> X;
    X.reserve(train_texts.size());
    for (const std::string& text : train_texts) X.push_back(vectorize(fs, text));

    const uint64_t fold_seed = SplitMix64::derive(options.forest.seed, fold);
    SmoteResult balanced =
        smote(X, train_labels, options.smote_k, SplitMix64::derive(fold_seed, 1));

    ForestParams params = options.forest;
    params.seed = SplitMix64::derive(fold_seed, 2);
    ForestModel model = train_forest(balanced.X, balanced.y, params);

    int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (size_t idx : test) {
      const RequirementRecord& rec = data[idx];
      Prediction pred = predict(model, fs, rec.text, options.threshold);
      report.predictions[idx] = pred.label == 1 ? Label::Sec : Label::NonSec;
      const bool gold_sec = rec.label == Label::Sec;
      if (pred.label == 1) (gold_sec ? tp : fp)++;
      else (gold_sec ? fn : tn)++;
    }

    FoldReport fr;
    fr.project = held_out;
    fr.metrics = confusion_metrics(tp, fp, tn, fn);
    fr.vocab_size = fs.dim();
    fr.train_pos = pos;
    fr.train_neg = neg;
    fr.train_pos_after =
        size_t(std::count(balanced.y.begin(), balanced.y.end(), 1));
    fr.train_neg_after = balanced.y.size() - fr.train_pos_after;
    fr.test_size = test.size();
    report.folds.push_back(std::move(fr));
  }

  // Macro rates are unweighted means over folds; counts are pooled sums.
  EvalMetrics& macro = report.macro;
  std::vector<double> acc, prec, rec, f1, fh, f2;
  for (const FoldReport& fr : report.folds) {
    macro.tp += fr.metrics.tp;
    macro.fp += fr.metrics.fp;
    macro.tn += fr.metrics.tn;
    macro.fn += fr.metrics.fn;
    acc.push_back(fr.metrics.accuracy);
    prec.push_back(fr.metrics.precision);
    rec.push_back(fr.metrics.recall);
    f1.push_back(fr.metrics.f1);
    fh.push_back(fr.metrics.f_half);
    f2.push_back(fr.metrics.f2);
  }
  macro.accuracy = macro_average(acc.data(), acc.size());
  macro.precision = macro_average(prec.data(), prec.size());
  macro.recall = macro_average(rec.data(), rec.size());
  macro.f1 = macro_average(f1.data(), f1.size());
  macro.f_half = macro_average(fh.data(), fh.size());
  macro.f2 = macro_average(f2.data(), f2.size());
  return report;
}

EvalMetrics section_eval(const std::vector<RequirementRecord>& gold,
                         const std::vector<Label>& predicted) {
  if (gold.size() != predicted.size())
    throw std::invalid_argument("section_eval: gold and predictions differ in size");
  if (gold.empty()) throw std::invalid_argument("section_eval: empty input");

  struct SectionState {
    bool gold_positive = false;
    bool pred_positive = false;
  };
  std::map<std::pair<std::string, std::string>, SectionState> sections;
  for (size_t i = 0; i < gold.size(); ++i) {
    const RequirementRecord& rec = gold[i];
    if (rec.section.empty())
      throw std::invalid_argument("record " + rec.project + "/" + rec.req_id +
                                  " has no section id");
    if (rec.label == Label::Unlabeled)
      throw std::invalid_argument("record " + rec.project + "/" + rec.req_id +
                                  " is unlabeled");
    if (predicted[i] == Label::Unlabeled)
      throw std::invalid_argument("prediction " + std::to_string(i) +
                                  " is unlabeled");
    SectionState& state = sections[{rec.project, rec.section}];
    if (rec.label == Label::Sec) state.gold_positive = true;
    if (predicted[i] == Label::Sec) state.pred_positive = true;
  }

  int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (const auto& [key, state] : sections) {
    if (state.gold_positive && state.pred_positive) ++tp;
    else if (!state.gold_positive && state.pred_positive) ++fp;
    else if (state.gold_positive && !state.pred_positive) ++fn;
    else ++tn;
  }
  return confusion_metrics(tp, fp, tn, fn);
}

std::vector<Label> predict_labels(const ForestModel& model, const FeatureSpace& fs,
                                  const std::vector<RequirementRecord>& data,
                                  double threshold) {
  std::vector<Label> out;
  out.reserve(data.size());
  for (const RequirementRecord& rec : data) {
    Prediction p = predict(model, fs, rec.text, threshold);
    out.push_back(p.label == 1 ? Label::Sec : Label::NonSec);
  }
  return out;
}

}  // namespace classify
}  // namespace sac
