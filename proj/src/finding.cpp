#include "sac/finding.hpp"

#include <algorithm>
#include <cstring>
#include <tuple>

namespace sac {

const char* to_string(FindingCode code) {
  switch (code) {
    case FindingCode::BadEdge: return "BAD_EDGE";
    case FindingCode::Cycle: return "CYCLE";
    case FindingCode::DanglingRef: return "DANGLING_REF";
    case FindingCode::DuplicateId: return "DUPLICATE_ID";
    case FindingCode::EmptyStrategy: return "EMPTY_STRATEGY";
    case FindingCode::KindMismatch: return "KIND_MISMATCH";
    case FindingCode::LevelInversion: return "LEVEL_INVERSION";
    case FindingCode::MissingCompleteness: return "MISSING_COMPLETENESS";
    case FindingCode::MissingConfidence: return "MISSING_CONFIDENCE";
    case FindingCode::MultiRoot: return "MULTI_ROOT";
    case FindingCode::OrphanSolution: return "ORPHAN_SOLUTION";
    case FindingCode::StaleEvidence: return "STALE_EVIDENCE";
    case FindingCode::UncoveredClause: return "UNCOVERED_CLAUSE";
    case FindingCode::UndevelopedGoal: return "UNDEVELOPED_GOAL";
    case FindingCode::UnknownBlock: return "UNKNOWN_BLOCK";
    case FindingCode::Unreachable: return "UNREACHABLE";
    case FindingCode::UnsupportedQualityClaim: return "UNSUPPORTED_QUALITY_CLAIM";
  }
  return "UNKNOWN";
}

const char* to_string(Severity sev) {
  return sev == Severity::Error ? "error" : "warning";
}

void sort_findings(std::vector<Finding>& findings) {
  std::sort(findings.begin(), findings.end(),
            [](const Finding& a, const Finding& b) {
              int c = std::strcmp(to_string(a.code), to_string(b.code));
              if (c != 0) return c < 0;
              return std::tie(a.subject, a.message) < std::tie(b.subject, b.message);
            });
}

bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Error; });
}

std::string format_finding(const Finding& f) {
  std::string s = to_string(f.code);
  s += " ";
  s += to_string(f.severity);
  s += " ";
  s += f.subject;
  s += ": ";
  s += f.message;
  return s;
}

}  // namespace sac
