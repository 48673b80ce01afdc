#include "sac/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sac/casefile.hpp"
#include "sac/cascade.hpp"
#include "sac/classify/eval.hpp"
#include "sac/classify/smote.hpp"
#include "sac/evidence.hpp"
#include "sac/quality.hpp"
#include "sac/render.hpp"
#include "sac/rng.hpp"

namespace sac {
namespace cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
  if (!out) throw UsageError("write to " + path + " failed");
}

// Writes the report to the -o file when given, stdout otherwise.
void emit_report(const std::string& report, const std::string& out_path,
                 std::ostream& out) {
  if (out_path.empty()) out << report;
  else write_file(out_path, report);
}

struct LoadedCase {
  std::optional<AssuranceCase> assurance_case;
  int exit_code = kExitOk;
};

LoadedCase load_case(const std::string& path, std::ostream& err) {
  LoadedCase result;
  const std::string text = read_file(path);
  casefile::ParseResult parsed = casefile::parse(text);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors)
      err << path << ":" << casefile::format_error(e) << "\n";
    for (const auto& f : parsed.build_findings) err << format_finding(f) << "\n";
    result.exit_code = kExitFindings;
    return result;
  }
  result.assurance_case = std::move(parsed.assurance_case);
  return result;
}

// Structure findings, then cascade findings once the structure is clean.
std::vector<Finding> validate_all(const AssuranceCase& c) {
  std::vector<Finding> findings = validate_structure(c);
  if (!has_errors(findings)) {
    auto cascade = validate_cascade(c);
    findings.insert(findings.end(), cascade.begin(), cascade.end());
    sort_findings(findings);
  }
  return findings;
}

int report_findings(const std::vector<Finding>& findings, std::ostream& err) {
  for (const Finding& f : findings) err << format_finding(f) << "\n";
  return findings.empty() ? kExitOk : kExitFindings;
}

json metrics_json(const classify::EvalMetrics& m) {
  json j;
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["tn"] = m.tn;
  j["fn"] = m.fn;
  j["accuracy"] = round1(m.accuracy);
  j["precision"] = round1(m.precision);
  j["recall"] = round1(m.recall);
  j["f1"] = round1(m.f1);
  j["f_half"] = round1(m.f_half);
  j["f2"] = round1(m.f2);
  return j;
}

std::string metrics_row(const std::string& name, const classify::EvalMetrics& m) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-12s %5lld %5lld %5lld %5lld  %6.1f %6.1f %6.1f %6.1f %6.1f %6.1f\n",
                name.c_str(), static_cast<long long>(m.tp),
                static_cast<long long>(m.fp), static_cast<long long>(m.tn),
                static_cast<long long>(m.fn), round1(m.accuracy),
                round1(m.precision), round1(m.recall), round1(m.f1),
                round1(m.f_half), round1(m.f2));
  return buf;
}

std::string metrics_header() {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %5s %5s %5s %5s  %6s %6s %6s %6s %6s %6s\n",
                "project", "tp", "fp", "tn", "fn", "acc", "prec", "rec", "f1",
                "f0.5", "f2");
  return buf;
}

int cmd_validate(const std::string& case_path, std::ostream& err) {
  LoadedCase loaded = load_case(case_path, err);
  if (!loaded.assurance_case) return loaded.exit_code;
  return report_findings(validate_all(*loaded.assurance_case), err);
}

int cmd_quality(const std::string& case_path, bool as_json,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
  LoadedCase loaded = load_case(case_path, err);
  if (!loaded.assurance_case) return loaded.exit_code;
  QualityReport report = quality_summary(*loaded.assurance_case);

  if (as_json) {
    json doc;
    doc["findings"] = json::array();
    for (const Finding& f : report.findings) {
      json jf;
      jf["code"] = to_string(f.code);
      jf["severity"] = to_string(f.severity);
      jf["subject"] = f.subject;
      jf["message"] = f.message;
      doc["findings"].push_back(std::move(jf));
    }
    json jm;
    jm["strategies_total"] = report.metrics.strategies_total;
    jm["strategies_with_completeness"] = report.metrics.strategies_with_completeness;
    jm["evidence_backed_claims"] = report.metrics.evidence_backed_claims;
    jm["claims_with_confidence"] = report.metrics.claims_with_confidence;
    jm["undeveloped_goals"] = report.metrics.undeveloped_goals;
    jm["solutions_total"] = report.metrics.solutions_total;
    doc["metrics"] = std::move(jm);
    emit_report(doc.dump(2) + "\n", out_path, out);
  } else {
    for (const Finding& f : report.findings) err << format_finding(f) << "\n";
    std::ostringstream table;
    const QualityMetrics& m = report.metrics;
    table << "strategies_total             " << m.strategies_total << "\n"
          << "strategies_with_completeness " << m.strategies_with_completeness << "\n"
          << "evidence_backed_claims       " << m.evidence_backed_claims << "\n"
          << "claims_with_confidence       " << m.claims_with_confidence << "\n"
          << "undeveloped_goals            " << m.undeveloped_goals << "\n"
          << "solutions_total              " << m.solutions_total << "\n";
    emit_report(table.str(), out_path, out);
  }
  return report.findings.empty() ? kExitOk : kExitFindings;
}

int cmd_render(const std::string& case_path, const std::string& out_path,
               bool blocks, const std::string& rankdir, std::ostream& err) {
  LoadedCase loaded = load_case(case_path, err);
  if (!loaded.assurance_case) return loaded.exit_code;
  std::vector<Finding> findings = validate_all(*loaded.assurance_case);
  if (has_errors(findings)) return report_findings(findings, err);

  RenderOptions opts;
  opts.show_blocks = blocks;
  opts.rankdir = rankdir == "LR" ? RankDir::LR : RankDir::TB;
  write_file(out_path, to_dot(*loaded.assurance_case, opts));
  return report_findings(findings, err);
}

int cmd_coverage(const std::string& case_path, const std::string& map_path,
                 bool as_json, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  LoadedCase loaded = load_case(case_path, err);
  if (!loaded.assurance_case) return loaded.exit_code;
  std::vector<StandardMapEntry> map;
  try {
    map = load_standard_map(read_file(map_path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(map_path + ": " + e.what());
  }

  CoverageReport report = coverage_report(*loaded.assurance_case, map);

  if (as_json) {
    json doc;
    doc["clauses"] = json::array();
    for (const ClauseCoverage& cc : report.clauses) {
      json jc;
      jc["clause_id"] = cc.entry.clause_id;
      jc["title"] = cc.entry.title;
      jc["expected"] = to_string(cc.entry.expected);
      jc["status"] = to_string(cc.status);
      jc["nodes"] = cc.matching_nodes;
      doc["clauses"].push_back(std::move(jc));
    }
    json js;
    js["covered"] = report.covered;
    js["mismatched"] = report.mismatched;
    js["uncovered"] = report.uncovered;
    js["total"] = report.total();
    js["percent"] = report.percent();
    doc["summary"] = std::move(js);
    emit_report(doc.dump(2) + "\n", out_path, out);
  } else {
    std::ostringstream table;
    for (const ClauseCoverage& cc : report.clauses) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%-12s %-11s ", cc.entry.clause_id.c_str(),
                    to_string(cc.status));
      table << buf;
      if (cc.matching_nodes.empty()) {
        table << "-";
      } else {
        for (size_t i = 0; i < cc.matching_nodes.size(); ++i)
          table << (i ? "," : "") << cc.matching_nodes[i];
      }
      table << "\n";
    }
    table << "covered " << report.covered << "/" << report.total() << " ("
          << format_percent(100.0 * report.covered /
                            std::max(report.total(), 1))
          << "%)\n";
    emit_report(table.str(), out_path, out);
    for (const ClauseCoverage& cc : report.clauses)
      if (cc.status != ClauseStatus::Covered)
        err << format_finding({FindingCode::UncoveredClause, Severity::Warning,
                               cc.entry.clause_id,
                               std::string("clause is ") + to_string(cc.status)})
            << "\n";
  }
  return report.covered == report.total() ? kExitOk : kExitFindings;
}

int cmd_evidence_report(const std::string& registry_path,
                        const std::string& case_path, const std::string& as_of_text,
                        std::ostream& out, std::ostream& err) {
  EvidenceRegistry registry;
  try {
    registry = load_registry(read_file(registry_path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(registry_path + ": " + e.what());
  }
  LoadedCase loaded = load_case(case_path, err);
  if (!loaded.assurance_case) return loaded.exit_code;

  Date as_of = Date::today_utc();
  if (!as_of_text.empty()) {
    auto parsed = Date::parse(as_of_text);
    if (!parsed) throw UsageError("--as-of must be a YYYY-MM-DD date");
    as_of = *parsed;
  }

  std::vector<Finding> findings = link_report(*loaded.assurance_case, registry);
  std::vector<Finding> stale = staleness_report(registry, as_of);
  findings.insert(findings.end(), stale.begin(), stale.end());
  sort_findings(findings);

  out << "registry items " << registry.size() << ", solutions "
      << loaded.assurance_case->nodes_of_kind(NodeKind::Solution).size()
      << ", as of " << as_of.to_string() << "\n";
  return report_findings(findings, err);
}

struct ClassifyCommon {
  uint64_t seed = 42;
  int trees = 100;
  size_t max_terms = 2000;
};

classify::LopoOptions lopo_options(const ClassifyCommon& common) {
  classify::LopoOptions options;
  options.forest.n_trees = common.trees;
  options.forest.seed = common.seed;
  options.max_terms = common.max_terms;
  return options;
}

int cmd_classify_train(const std::string& data_path, const std::string& out_path,
                       const ClassifyCommon& common, std::ostream& out) {
  std::vector<classify::RequirementRecord> records;
  try {
    records = classify::load_dataset(read_file(data_path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(data_path + ": " + e.what());
  }

  std::vector<std::string> texts;
  std::vector<int> labels;
  for (const auto& rec : records) {
    if (rec.label == classify::Label::Unlabeled)
      throw UsageError("training data contains unlabeled records");
    texts.push_back(rec.text);
    labels.push_back(rec.label == classify::Label::Sec ? 1 : 0);
  }
  if (texts.empty()) throw UsageError("training data is empty");

  classify::FeatureSpace fs;
  classify::ForestModel model;
  try {
    fs = classify::fit_feature_space(texts, common.max_terms);
    std::vector<std::vector<double>> X;
    for (const std::string& text : texts) X.push_back(classify::vectorize(fs, text));
    classify::SmoteResult balanced =
        classify::smote(X, labels, 5, SplitMix64::derive(common.seed, 1));

    classify::ForestParams params;
    params.n_trees = common.trees;
    params.seed = SplitMix64::derive(common.seed, 2);
    model = classify::train_forest(balanced.X, balanced.y, params);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  write_file(out_path, classify::model_to_json(model, fs));
  out << "trained " << model.trees.size() << " trees on " << texts.size()
      << " requirements, vocabulary " << fs.dim() << ", model written to "
      << out_path << "\n";
  return kExitOk;
}

int cmd_classify_eval(const std::string& data_path, bool lopo, bool sections,
                      bool as_json, const ClassifyCommon& common,
                      const std::string& out_path, std::ostream& out) {
  if (!lopo) throw UsageError("classify eval requires --lopo");
  std::vector<classify::RequirementRecord> records;
  classify::LopoReport report;
  classify::EvalMetrics section_metrics;
  try {
    records = classify::load_dataset(read_file(data_path));
    report = classify::lopo_eval(records, lopo_options(common));
    if (sections) section_metrics = classify::section_eval(records, report.predictions);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  if (as_json) {
    json doc;
    doc["folds"] = json::array();
    for (const classify::FoldReport& fr : report.folds) {
      json jf;
      jf["project"] = fr.project;
      jf["metrics"] = metrics_json(fr.metrics);
      jf["vocab_size"] = fr.vocab_size;
      jf["train_pos"] = fr.train_pos;
      jf["train_neg"] = fr.train_neg;
      jf["train_pos_after_smote"] = fr.train_pos_after;
      jf["train_neg_after_smote"] = fr.train_neg_after;
      jf["test_size"] = fr.test_size;
      doc["folds"].push_back(std::move(jf));
    }
    doc["macro"] = metrics_json(report.macro);
    if (sections) doc["sections"] = metrics_json(section_metrics);
    emit_report(doc.dump(2) + "\n", out_path, out);
  } else {
    std::ostringstream table;
    table << metrics_header();
    for (const classify::FoldReport& fr : report.folds)
      table << metrics_row(fr.project, fr.metrics);
    table << metrics_row("macro", report.macro);
    if (sections) table << metrics_row("sections", section_metrics);
    emit_report(table.str(), out_path, out);
  }
  return kExitOk;
}

int cmd_classify_predict(const std::string& model_path, const std::string& data_path,
                         double threshold, std::ostream& out) {
  classify::ForestModel model;
  classify::FeatureSpace fs;
  std::vector<classify::RequirementRecord> records;
  try {
    classify::model_from_json(read_file(model_path), model, fs);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(model_path + ": " + e.what());
  }
  try {
    records = classify::load_dataset(read_file(data_path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(data_path + ": " + e.what());
  }

  out << "project,section,req_id,label,score\n";
  for (const auto& rec : records) {
    classify::Prediction p = classify::predict(model, fs, rec.text, threshold);
    char score[32];
    std::snprintf(score, sizeof score, "%.4f", p.score);
    out << rec.project << "," << rec.section << "," << rec.req_id << ","
        << (p.label == 1 ? "sec" : "nonsec") << "," << score << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CASCADE security assurance case toolkit"};
  app.require_subcommand(1);

  std::string case_path, map_path, registry_path, out_path, data_path, model_path;
  std::string as_of, rankdir = "TB";
  bool as_json = false, blocks = false, lopo = false, sections = false;
  double threshold = 0.5;
  ClassifyCommon common;

  auto* validate = app.add_subcommand("validate", "structure and block checks");
  validate->add_option("case", case_path, "case file")->required();

  auto* quality = app.add_subcommand("quality", "quality report with metrics");
  quality->add_option("case", case_path, "case file")->required();
  quality->add_flag("--json", as_json, "machine-readable output");
  quality->add_option("-o,--output", out_path, "write the report to a file");

  auto* render = app.add_subcommand("render", "emit a DOT diagram");
  render->add_option("case", case_path, "case file")->required();
  render->add_option("-o,--output", out_path, "output .dot file")->required();
  render->add_flag("--blocks", blocks, "cluster nodes by block");
  render->add_option("--rankdir", rankdir, "TB or LR")
      ->check(CLI::IsMember({"TB", "LR"}));

  auto* coverage = app.add_subcommand("coverage", "standard coverage report");
  coverage->add_option("case", case_path, "case file")->required();
  coverage->add_option("--map", map_path, "standard map CSV")->required();
  coverage->add_flag("--json", as_json, "machine-readable output");
  coverage->add_option("-o,--output", out_path, "write the report to a file");

  auto* evidence = app.add_subcommand("evidence", "evidence registry tools");
  evidence->require_subcommand(1);
  auto* evidence_report = evidence->add_subcommand("report", "link and staleness");
  evidence_report->add_option("--registry", registry_path, "registry CSV")
      ->required();
  evidence_report->add_option("--case", case_path, "case file")->required();
  evidence_report->add_option("--as-of", as_of, "YYYY-MM-DD, default today");

  auto* classify_cmd = app.add_subcommand("classify", "requirements classifier");
  classify_cmd->require_subcommand(1);

  auto* train = classify_cmd->add_subcommand("train", "train a forest");
  train->add_option("--data", data_path, "corpus CSV")->required();
  train->add_option("--out", model_path, "model JSON output")->required();
  train->add_option("--seed", common.seed, "PRNG seed");
  train->add_option("--trees", common.trees, "number of trees")
      ->check(CLI::PositiveNumber);
  train->add_option("--max-terms", common.max_terms, "vocabulary cap")
      ->check(CLI::PositiveNumber);

  auto* eval = classify_cmd->add_subcommand("eval", "cross-project evaluation");
  eval->add_option("--data", data_path, "corpus CSV")->required();
  eval->add_flag("--lopo", lopo, "leave-one-project-out");
  eval->add_flag("--sections", sections, "add section-level metrics");
  eval->add_flag("--json", as_json, "machine-readable output");
  eval->add_option("--seed", common.seed, "PRNG seed");
  eval->add_option("--trees", common.trees, "number of trees")
      ->check(CLI::PositiveNumber);
  eval->add_option("--max-terms", common.max_terms, "vocabulary cap")
      ->check(CLI::PositiveNumber);
  eval->add_option("-o,--output", out_path, "write the report to a file");

  auto* predict = classify_cmd->add_subcommand("predict", "label a CSV of requirements");
  predict->add_option("--model", model_path, "model JSON")->required();
  predict->add_option("--data", data_path, "requirements CSV")->required();
  predict->add_option("--threshold", threshold, "sec vote threshold")
      ->check(CLI::Range(0.0, 1.0));

  // CLI11 consumes the vector back to front.
  std::vector<std::string> argv_copy(args.rbegin(), args.rend());
  try {
    app.parse(argv_copy);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(case_path, err);
    if (quality->parsed()) return cmd_quality(case_path, as_json, out_path, out, err);
    if (render->parsed()) return cmd_render(case_path, out_path, blocks, rankdir, err);
    if (coverage->parsed())
      return cmd_coverage(case_path, map_path, as_json, out_path, out, err);
    if (evidence_report->parsed())
      return cmd_evidence_report(registry_path, case_path, as_of, out, err);
    if (train->parsed())
      return cmd_classify_train(data_path, model_path, common, out);
    if (eval->parsed())
      return cmd_classify_eval(data_path, lopo, sections, as_json, common,
                               out_path, out);
    if (predict->parsed())
      return cmd_classify_predict(model_path, data_path, threshold, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace cli
}  // namespace sac
