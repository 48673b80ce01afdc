#include "sac/quality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "sac/cascade.hpp"
#include "sac/csv.hpp"

namespace sac {

const char* to_string(ExpectedElement e) {
  switch (e) {
    case ExpectedElement::Assumption: return "assumption";
    case ExpectedElement::Claim: return "claim";
    case ExpectedElement::QualityClaim: return "quality-claim";
    case ExpectedElement::QualityEvidence: return "quality-evidence";
    case ExpectedElement::Context: return "context";
    case ExpectedElement::Evidence: return "evidence";
  }
  return "?";
}

std::optional<ExpectedElement> expected_element_from(const std::string& token) {
  if (token == "assumption") return ExpectedElement::Assumption;
  if (token == "claim") return ExpectedElement::Claim;
  if (token == "quality-claim") return ExpectedElement::QualityClaim;
  if (token == "quality-evidence") return ExpectedElement::QualityEvidence;
  if (token == "context") return ExpectedElement::Context;
  if (token == "evidence") return ExpectedElement::Evidence;
  return std::nullopt;
}

const char* to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::Covered: return "covered";
    case ClauseStatus::Mismatched: return "mismatched";
    case ClauseStatus::Uncovered: return "uncovered";
  }
  return "?";
}

double round1(double percent) { return std::floor(percent * 10.0 + 0.5) / 10.0; }

std::string format_percent(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round1(percent));
  return buf;
}

double CoverageReport::percent() const {
  int t = total();
  if (t == 0) return 0.0;
  return round1(100.0 * covered / t);
}

namespace {

bool is_quality_block(std::optional<CascadeBlock> b) {
  return b == CascadeBlock::QualityCompleteness ||
         b == CascadeBlock::QualityConfidence;
}

bool is_solution_node(const Node& n) { return n.kind == NodeKind::Solution; }

std::vector<const Node*> goals_with_block(const AssuranceCase& c, CascadeBlock b) {
  std::vector<const Node*> out;
  for (const Node& n : c.nodes())
    if (n.kind == NodeKind::Goal && n.block == b) out.push_back(&n);
  return out;
}

}  // namespace

std::vector<Finding> check_completeness(const AssuranceCase& c) {
  std::vector<Finding> findings;
  auto claims = goals_with_block(c, CascadeBlock::QualityCompleteness);

  std::set<NodeId> covered_strategies;
  for (const Node* claim : claims) {
    auto about = claim->attr("about");
    const Node* target = about ? c.find(*about) : nullptr;
    if (!target || target->kind != NodeKind::Strategy) {
      findings.push_back({FindingCode::KindMismatch, Severity::Error, claim->id,
                          "completeness claim " + claim->id +
                              " must reference a strategy via about="});
    } else {
      covered_strategies.insert(target->id);
    }
    if (!c.has_supported_descendant(claim->id, is_solution_node) &&
        !claim->undeveloped())
      findings.push_back({FindingCode::UnsupportedQualityClaim, Severity::Warning,
                          claim->id,
                          "completeness claim " + claim->id +
                              " has no supporting solution"});
  }

  for (const Node* s : c.nodes_of_kind(NodeKind::Strategy))
    if (!covered_strategies.count(s->id))
      findings.push_back({FindingCode::MissingCompleteness, Severity::Error, s->id,
                          "strategy " + s->id + " has no completeness claim"});

  sort_findings(findings);
  return findings;
}

std::vector<Finding> check_confidence(const AssuranceCase& c) {
  std::vector<Finding> findings;
  auto claims = goals_with_block(c, CascadeBlock::QualityConfidence);

  std::set<NodeId> covered_goals;
  for (const Node* claim : claims) {
    auto about = claim->attr("about");
    const Node* target = about ? c.find(*about) : nullptr;
    if (!target || target->kind != NodeKind::Goal) {
      findings.push_back({FindingCode::KindMismatch, Severity::Error, claim->id,
                          "confidence claim " + claim->id +
                              " must reference a goal via about="});
    } else {
      covered_goals.insert(target->id);
    }
    // Confidence claims always need direct evidence; an undeveloped marker
    // does not excuse them.
    if (c.direct_solutions(claim->id).empty())
      findings.push_back({FindingCode::UnsupportedQualityClaim, Severity::Error,
                          claim->id,
                          "confidence claim " + claim->id +
                              " is not supported by a solution"});
  }

  for (const Node& n : c.nodes()) {
    if (n.kind != NodeKind::Goal || is_quality_block(n.block)) continue;
    if (c.direct_solutions(n.id).empty()) continue;
    if (!covered_goals.count(n.id))
      findings.push_back({FindingCode::MissingConfidence, Severity::Error, n.id,
                          "goal " + n.id +
                              " is evidence-backed but has no confidence claim"});
  }

  sort_findings(findings);
  return findings;
}

namespace {

bool node_matches(const AssuranceCase& c, const Node& n, ExpectedElement expected) {
  switch (expected) {
    case ExpectedElement::Claim:
      return n.kind == NodeKind::Goal && !is_quality_block(n.block);
    case ExpectedElement::QualityClaim:
      return n.kind == NodeKind::Goal && is_quality_block(n.block);
    case ExpectedElement::Evidence:
      return n.kind == NodeKind::Solution;
    case ExpectedElement::QualityEvidence: {
      if (n.kind != NodeKind::Solution) return false;
      for (const Edge* e : c.edges_to(n.id, EdgeKind::SupportedBy)) {
        const Node* parent = c.find(e->source);
        if (parent && parent->kind == NodeKind::Goal &&
            is_quality_block(parent->block))
          return true;
      }
      return false;
    }
    case ExpectedElement::Context:
      return n.kind == NodeKind::Context;
    case ExpectedElement::Assumption:
      return n.kind == NodeKind::Assumption;
  }
  return false;
}

}  // namespace

CoverageReport coverage_report(const AssuranceCase& c,
                               const std::vector<StandardMapEntry>& map) {
  if (map.empty()) throw std::invalid_argument("standard map is empty");
  std::set<std::string> ids;
  for (const StandardMapEntry& e : map)
    if (!ids.insert(e.clause_id).second)
      throw std::invalid_argument("duplicate clause id " + e.clause_id);

  // clause -> nodes carrying it, in node order
  std::map<std::string, std::vector<const Node*>> carriers;
  for (const Node& n : c.nodes())
    for (const std::string& clause : n.covered_clauses())
      carriers[clause].push_back(&n);

  CoverageReport report;
  for (const StandardMapEntry& entry : map) {
    ClauseCoverage cov;
    cov.entry = entry;
    auto it = carriers.find(entry.clause_id);
    if (it == carriers.end()) {
      cov.status = ClauseStatus::Uncovered;
      ++report.uncovered;
    } else {
      bool any_match = false;
      for (const Node* n : it->second) {
        cov.matching_nodes.push_back(n->id);
        if (node_matches(c, *n, entry.expected)) any_match = true;
      }
      std::sort(cov.matching_nodes.begin(), cov.matching_nodes.end());
      cov.status = any_match ? ClauseStatus::Covered : ClauseStatus::Mismatched;
      ++(any_match ? report.covered : report.mismatched);
    }
    report.clauses.push_back(std::move(cov));
  }
  return report;
}

QualityReport quality_summary(const AssuranceCase& c) {
  QualityReport report;
  report.findings = validate_structure(c);
  if (!has_errors(report.findings)) {
    auto append = [&](std::vector<Finding> more) {
      report.findings.insert(report.findings.end(), more.begin(), more.end());
    };
    append(validate_cascade(c));
    append(check_completeness(c));
    append(check_confidence(c));
    sort_findings(report.findings);
  }

  QualityMetrics& m = report.metrics;
  std::set<NodeId> strategies_with_completeness;
  for (const Node& n : c.nodes()) {
    if (n.kind == NodeKind::Goal && n.block == CascadeBlock::QualityCompleteness) {
      auto about = n.attr("about");
      const Node* target = about ? c.find(*about) : nullptr;
      if (target && target->kind == NodeKind::Strategy)
        strategies_with_completeness.insert(target->id);
    }
  }
  std::set<NodeId> goals_with_confidence;
  for (const Node& n : c.nodes()) {
    if (n.kind == NodeKind::Goal && n.block == CascadeBlock::QualityConfidence) {
      auto about = n.attr("about");
      const Node* target = about ? c.find(*about) : nullptr;
      if (target && target->kind == NodeKind::Goal)
        goals_with_confidence.insert(target->id);
    }
  }
  for (const Node& n : c.nodes()) {
    switch (n.kind) {
      case NodeKind::Strategy:
        ++m.strategies_total;
        if (strategies_with_completeness.count(n.id))
          ++m.strategies_with_completeness;
        break;
      case NodeKind::Solution:
        ++m.solutions_total;
        break;
      case NodeKind::Goal: {
        if (n.undeveloped()) ++m.undeveloped_goals;
        if (!is_quality_block(n.block) && !c.direct_solutions(n.id).empty()) {
          ++m.evidence_backed_claims;
          if (goals_with_confidence.count(n.id)) ++m.claims_with_confidence;
        }
        break;
      }
      default:
        break;
    }
  }
  return report;
}

std::vector<StandardMapEntry> load_standard_map(const std::string& csv_text) {
  auto rows = csv::parse(csv_text);
  if (rows.empty() || rows[0] != csv::Row{"clause_id", "title", "expected"})
    throw std::runtime_error(
        "standard map must start with header clause_id,title,expected");

  std::vector<StandardMapEntry> map;
  std::set<std::string> seen;
  for (size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    if (row.size() != 3)
      throw std::runtime_error("standard map row " + std::to_string(i + 1) +
                               " has " + std::to_string(row.size()) +
                               " fields, expected 3");
    StandardMapEntry entry;
    entry.clause_id = row[0];
    entry.title = row[1];
    auto expected = expected_element_from(row[2]);
    if (entry.clause_id.empty() || !expected)
      throw std::runtime_error("standard map row " + std::to_string(i + 1) +
                               " is malformed");
    if (!seen.insert(entry.clause_id).second)
      throw std::runtime_error("duplicate clause id " + entry.clause_id);
    entry.expected = *expected;
    map.push_back(std::move(entry));
  }
  return map;
}

}  // namespace sac
