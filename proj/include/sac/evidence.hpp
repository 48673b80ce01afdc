#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sac/argument_graph.hpp"
#include "sac/date.hpp"

namespace sac {

enum class EvidenceType {
  RiskAnalysis,
  GapAnalysis,
  Verification,
  SecurityTraining,
  AwarenessProgram,
  IncidentLog,
  Other,
};

enum class Role {
  Developer,
  ProductOwner,
  RiskOwner,
  Auditor,
  Management,
  SecurityOfficer,
  LegalTeam,
};

enum class Responsibility { Creation, Ownership, Collection, Maintenance, Governance };

const char* to_string(EvidenceType t);
const char* to_string(Role r);
const char* to_string(Responsibility r);
std::optional<EvidenceType> evidence_type_from(const std::string& token);
std::optional<Role> role_from(const std::string& token);

struct EvidenceItem {
  std::string id;
  std::string title;
  EvidenceType etype = EvidenceType::Other;
  std::string uri;
  Date created_at;
  std::optional<int> valid_days;  // absent = unlimited validity
  Role owner_role = Role::Developer;
};

/// Value-semantic registry; iteration is always in id order.
class EvidenceRegistry {
 public:
  /// Throws std::invalid_argument on a duplicate id or valid_days < 1.
  void add(EvidenceItem item);

  bool contains(const std::string& id) const { return items_.count(id) > 0; }
  const EvidenceItem* find(const std::string& id) const;
  size_t size() const { return items_.size(); }

  std::vector<const EvidenceItem*> items() const;  // id order

 private:
  std::map<std::string, EvidenceItem> items_;
};

/// Warnings for solutions without a resolvable item= link and for registry
/// items no solution references.
std::vector<Finding> link_report(const AssuranceCase& c,
                                 const EvidenceRegistry& registry);

/// STALE_EVIDENCE for every bounded item with created_at + valid_days
/// strictly before as_of.
std::vector<Finding> staleness_report(const EvidenceRegistry& registry, Date as_of);

/// The fixed role/responsibility table.
const std::map<Role, std::set<Responsibility>>& responsibility_matrix();

/// CSV with header `id,title,type,uri,created_at,valid_days,owner_role`;
/// empty valid_days means unlimited. Throws std::runtime_error on bad rows.
EvidenceRegistry load_registry(const std::string& csv_text);

std::string registry_to_csv(const EvidenceRegistry& registry);

}  // namespace sac
