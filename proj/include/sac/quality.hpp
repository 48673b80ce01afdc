#pragma once

#include <string>
#include <vector>

#include "sac/argument_graph.hpp"

namespace sac {

enum class ExpectedElement {
  Assumption,
  Claim,
  QualityClaim,
  QualityEvidence,
  Context,
  Evidence,
};

const char* to_string(ExpectedElement e);
std::optional<ExpectedElement> expected_element_from(const std::string& token);

struct StandardMapEntry {
  std::string clause_id;
  std::string title;
  ExpectedElement expected = ExpectedElement::Claim;
};

enum class ClauseStatus { Covered, Mismatched, Uncovered };

const char* to_string(ClauseStatus s);

struct ClauseCoverage {
  StandardMapEntry entry;
  ClauseStatus status = ClauseStatus::Uncovered;
  std::vector<NodeId> matching_nodes;  // nodes carrying the clause id
};

struct CoverageReport {
  std::vector<ClauseCoverage> clauses;  // map order preserved
  int covered = 0;
  int mismatched = 0;
  int uncovered = 0;

  int total() const { return covered + mismatched + uncovered; }
  /// covered/total as a percentage, one decimal, round half up.
  double percent() const;
};

struct QualityMetrics {
  int strategies_total = 0;
  int strategies_with_completeness = 0;
  int evidence_backed_claims = 0;
  int claims_with_confidence = 0;
  int undeveloped_goals = 0;
  int solutions_total = 0;
};

struct QualityReport {
  std::vector<Finding> findings;
  QualityMetrics metrics;
};

/// Every strategy needs a quality.completeness goal with about=<strategy>.
/// Completeness claims without a supporting solution anywhere below them
/// and without an undeveloped marker are flagged as warnings.
std::vector<Finding> check_completeness(const AssuranceCase& c);

/// Every non-quality goal backed directly by a solution needs a
/// quality.confidence goal with about=<goal>; confidence claims themselves
/// must be backed directly by a solution.
std::vector<Finding> check_confidence(const AssuranceCase& c);

/// Throws std::invalid_argument on duplicate clause ids or an empty map.
CoverageReport coverage_report(const AssuranceCase& c,
                               const std::vector<StandardMapEntry>& map);

/// Structure, cascade, completeness and confidence findings plus counters.
/// Cascade/quality checks run only when the structure is error-free.
QualityReport quality_summary(const AssuranceCase& c);

/// CSV with header `clause_id,title,expected`. Throws std::runtime_error on
/// malformed rows.
std::vector<StandardMapEntry> load_standard_map(const std::string& csv_text);

/// Round half up to one decimal, e.g. 74.25 -> 74.3.
double round1(double percent);
/// Fixed "%.1f" rendering of round1(percent).
std::string format_percent(double percent);

}  // namespace sac
