#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "sac/classify/eval.hpp"
#include "sac/rng.hpp"
#include "test_support.hpp"

using namespace sac::classify;

namespace {

RequirementRecord rec(std::string project, std::string section, std::string id,
                      std::string text, Label label) {
  return {std::move(project), std::move(section), std::move(id), std::move(text),
          label};
}

// Two keyword-separable projects; the classifier should transfer perfectly.
std::vector<RequirementRecord> separable_two_projects() {
  std::vector<RequirementRecord> data;
  static const char* sec_text[] = {
      "the unit shall encrypt traffic with strong keys",
      "the unit shall authenticate peers before any exchange",
      "the unit shall verify signatures on updates",
  };
  static const char* nonsec_text[] = {
      "the unit shall display speed on the cluster",
      "the unit shall archive trip logs for ninety days",
      "the unit shall refresh the screen at ten hertz",
      "the unit shall support twelve user languages",
      "the unit shall store driver seat positions",
      "the unit shall schedule maintenance reminders monthly",
  };
  for (const char* project : {"p1", "p2"}) {
    int id = 0;
    for (const char* t : sec_text)
      data.push_back(rec(project, "S1", "R" + std::to_string(++id), t, Label::Sec));
    for (const char* t : nonsec_text)
      data.push_back(
          rec(project, "S2", "R" + std::to_string(++id), t, Label::NonSec));
  }
  return data;
}

}  // namespace

TEST_CASE("perfectly separable identical projects evaluate to 100%") {
  LopoOptions options;
  options.forest.n_trees = 30;
  options.forest.seed = 42;
  LopoReport report = lopo_eval(separable_two_projects(), options);
  REQUIRE(report.folds.size() == 2);
  for (const FoldReport& fr : report.folds) {
    CHECK(fr.metrics.precision == doctest::Approx(100.0));
    CHECK(fr.metrics.recall == doctest::Approx(100.0));
  }
  CHECK(report.macro.precision == doctest::Approx(100.0));
  CHECK(report.macro.recall == doctest::Approx(100.0));
}

TEST_CASE("lopo is deterministic for a fixed seed") {
  auto data = separable_two_projects();
  LopoOptions options;
  options.forest.n_trees = 15;
  options.forest.seed = 7;
  LopoReport a = lopo_eval(data, options);
  LopoReport b = lopo_eval(data, options);
  REQUIRE(a.folds.size() == b.folds.size());
  for (size_t i = 0; i < a.folds.size(); ++i) {
    CHECK(a.folds[i].metrics.tp == b.folds[i].metrics.tp);
    CHECK(a.folds[i].metrics.fp == b.folds[i].metrics.fp);
    CHECK(a.folds[i].metrics.tn == b.folds[i].metrics.tn);
    CHECK(a.folds[i].metrics.fn == b.folds[i].metrics.fn);
  }
  CHECK(a.predictions == b.predictions);
}

TEST_CASE("no leakage: the fold vocabulary never sees the held-out project") {
  // Project p2 plants a term that exists nowhere else; the fold holding out
  // p2 must fit its feature space without it.
  auto data = separable_two_projects();
  for (auto& r : data)
    if (r.project == "p2") r.text += " zzzuniquezzz";

  LopoOptions options;
  options.forest.n_trees = 10;
  options.forest.seed = 1;
  LopoReport report = lopo_eval(data, options);
  REQUIRE(report.folds.size() == 2);

  // Oracle: fit on p1 texts alone and compare the vocabulary size.
  std::vector<std::string> p1_texts;
  for (const auto& r : data)
    if (r.project == "p1") p1_texts.push_back(r.text);
  FeatureSpace oracle = fit_feature_space(p1_texts, options.max_terms);
  CHECK(oracle.index_of("zzzuniquezzz") == -1);

  const FoldReport& fold_p2 = report.folds[1];
  CHECK(fold_p2.project == "p2");
  CHECK(fold_p2.vocab_size == oracle.dim());

  // SMOTE balanced the training fold only.
  for (const FoldReport& fr : report.folds) {
    CHECK(fr.train_pos_after == fr.train_neg_after);
    CHECK(fr.train_pos_after == std::max(fr.train_pos, fr.train_neg));
    CHECK(fr.test_size == 9);
  }
}

TEST_CASE("lopo rejects degenerate inputs") {
  LopoOptions options;
  std::vector<RequirementRecord> one = {
      rec("p1", "S1", "R1", "encrypt data", Label::Sec),
      rec("p1", "S1", "R2", "show screen", Label::NonSec)};
  CHECK_THROWS_AS(lopo_eval(one, options), std::invalid_argument);

  auto data = separable_two_projects();
  data[0].label = Label::Unlabeled;
  CHECK_THROWS_AS(lopo_eval(data, options), std::invalid_argument);

  // Single-class training fold: p1 all nonsec, so holding out p2 fails.
  std::vector<RequirementRecord> single = {
      rec("p1", "S1", "R1", "show screen", Label::NonSec),
      rec("p1", "S1", "R2", "archive logs", Label::NonSec),
      rec("p2", "S1", "R1", "encrypt data", Label::Sec),
      rec("p2", "S1", "R2", "show menu", Label::NonSec)};
  CHECK_THROWS_AS(lopo_eval(single, options), std::invalid_argument);
}

TEST_CASE("a section is predicted positive when any requirement is") {
  std::vector<RequirementRecord> gold = {
      rec("p", "S1", "R1", "a", Label::NonSec),
      rec("p", "S1", "R2", "b", Label::Sec),
      rec("p", "S1", "R3", "c", Label::NonSec),
      rec("p", "S2", "R4", "d", Label::NonSec),
  };
  std::vector<Label> predicted = {Label::NonSec, Label::NonSec, Label::Sec,
                                  Label::NonSec};
  EvalMetrics m = section_eval(gold, predicted);
  CHECK(m.tp == 1);  // S1 gold-positive, predicted positive via R3
  CHECK(m.tn == 1);  // S2 clean
  CHECK(m.fp == 0);
  CHECK(m.fn == 0);
}

TEST_CASE("all-correct predictions give 100/100 section scores") {
  auto gold = separable_two_projects();
  std::vector<Label> predicted;
  for (const auto& r : gold) predicted.push_back(r.label);
  EvalMetrics m = section_eval(gold, predicted);
  CHECK(m.precision == doctest::Approx(100.0));
  CHECK(m.recall == doctest::Approx(100.0));
  CHECK(m.f1 == doctest::Approx(100.0));
}

TEST_CASE("property: section_eval equals a brute-force regroup oracle") {
  sac::SplitMix64 rng(2718);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<RequirementRecord> gold;
    std::vector<Label> predicted;
    const size_t n = 1 + rng.next_index(40);
    for (size_t i = 0; i < n; ++i) {
      std::string project = "p" + std::to_string(rng.next_index(3));
      std::string section = "s" + std::to_string(rng.next_index(4));
      gold.push_back(rec(project, section, "r" + std::to_string(i), "text",
                         rng.next_index(2) ? Label::Sec : Label::NonSec));
      predicted.push_back(rng.next_index(2) ? Label::Sec : Label::NonSec);
    }
    EvalMetrics m = section_eval(gold, predicted);

    // Independent regroup-and-count.
    std::map<std::pair<std::string, std::string>, std::pair<bool, bool>> acc;
    for (size_t i = 0; i < n; ++i) {
      auto& [g, p] = acc[{gold[i].project, gold[i].section}];
      g = g || gold[i].label == Label::Sec;
      p = p || predicted[i] == Label::Sec;
    }
    int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (const auto& [key, gp] : acc) {
      if (gp.first && gp.second) ++tp;
      else if (!gp.first && gp.second) ++fp;
      else if (gp.first && !gp.second) ++fn;
      else ++tn;
    }
    CHECK(m.tp == tp);
    CHECK(m.fp == fp);
    CHECK(m.tn == tn);
    CHECK(m.fn == fn);
  }
}

TEST_CASE("section_eval validates its inputs") {
  std::vector<RequirementRecord> gold = {rec("p", "", "R1", "a", Label::Sec)};
  CHECK_THROWS_AS(section_eval(gold, {Label::Sec}), std::invalid_argument);
  std::vector<RequirementRecord> ok = {rec("p", "S1", "R1", "a", Label::Sec)};
  CHECK_THROWS_AS(section_eval(ok, {}), std::invalid_argument);
  CHECK_THROWS_AS(section_eval(ok, {Label::Unlabeled}), std::invalid_argument);
}

TEST_CASE("predict_labels applies the model to every record in order") {
  auto data = separable_two_projects();
  std::vector<std::string> texts;
  std::vector<int> labels;
  for (const auto& r : data) {
    texts.push_back(r.text);
    labels.push_back(r.label == Label::Sec ? 1 : 0);
  }
  FeatureSpace fs = fit_feature_space(texts, 2000);
  std::vector<std::vector<double>> X;
  for (const auto& t : texts) X.push_back(vectorize(fs, t));
  ForestParams params;
  params.n_trees = 20;
  params.seed = 3;
  ForestModel model = train_forest(X, labels, params);
  auto predicted = predict_labels(model, fs, data);
  REQUIRE(predicted.size() == data.size());
  size_t hits = 0;
  for (size_t i = 0; i < data.size(); ++i)
    if (predicted[i] == data[i].label) ++hits;
  CHECK(hits == data.size());  // training data, fully separable
}

TEST_CASE("load_dataset parses the bundled corpus and rejects bad rows") {
  auto records = load_dataset(sactest::read_fixture("synth.csv"));
  CHECK(records.size() == 360);
  std::set<std::string> projects;
  std::map<std::string, int> sec_counts;
  for (const auto& r : records) {
    projects.insert(r.project);
    if (r.label == Label::Sec) ++sec_counts[r.project];
  }
  CHECK(projects.size() == 6);
  for (const auto& [project, count] : sec_counts) CHECK(count == 12);

  CHECK_THROWS_AS(load_dataset("nope\n"), std::runtime_error);
  CHECK_THROWS_AS(
      load_dataset("project,section,req_id,text,label\np,s,r,text,maybe\n"),
      std::runtime_error);
  CHECK_THROWS_AS(
      load_dataset("project,section,req_id,text,label\np,s,r,t,sec\np,s,r,t,sec\n"),
      std::runtime_error);
}
