#pragma once

#include <string>
#include <vector>

namespace sac {

enum class FindingCode {
  BadEdge,
  Cycle,
  DanglingRef,
  DuplicateId,
  EmptyStrategy,
  KindMismatch,
  LevelInversion,
  MissingCompleteness,
  MissingConfidence,
  MultiRoot,
  OrphanSolution,
  StaleEvidence,
  UncoveredClause,
  UndevelopedGoal,
  UnknownBlock,
  Unreachable,
  UnsupportedQualityClaim,
};

enum class Severity { Error, Warning };

const char* to_string(FindingCode code);
const char* to_string(Severity sev);

/// One validation or quality-check result. `subject` is a node id or a
/// clause id, depending on the check that produced it.
struct Finding {
  FindingCode code;
  Severity severity;
  std::string subject;
  std::string message;

  bool operator==(const Finding&) const = default;
};

/// Canonical order: (code token, subject, message). Keeps reports diffable.
void sort_findings(std::vector<Finding>& findings);

bool has_errors(const std::vector<Finding>& findings);

/// "CODE severity subject: message"
std::string format_finding(const Finding& f);

}  // namespace sac
