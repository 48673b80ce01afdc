#include "sac/evidence.hpp"

#include <algorithm>
#include <stdexcept>

#include "sac/csv.hpp"

namespace sac {

const char* to_string(EvidenceType t) {
  switch (t) {
    case EvidenceType::RiskAnalysis: return "risk_analysis";
    case EvidenceType::GapAnalysis: return "gap_analysis";
    case EvidenceType::Verification: return "verification";
    case EvidenceType::SecurityTraining: return "security_training";
    case EvidenceType::AwarenessProgram: return "awareness_program";
    case EvidenceType::IncidentLog: return "incident_log";
    case EvidenceType::Other: return "other";
  }
  return "?";
}

const char* to_string(Role r) {
  switch (r) {
    case Role::Developer: return "developer";
    case Role::ProductOwner: return "product_owner";
    case Role::RiskOwner: return "risk_owner";
    case Role::Auditor: return "auditor";
    case Role::Management: return "management";
    case Role::SecurityOfficer: return "security_officer";
    case Role::LegalTeam: return "legal_team";
  }
  return "?";
}

const char* to_string(Responsibility r) {
  switch (r) {
    case Responsibility::Creation: return "creation";
    case Responsibility::Ownership: return "ownership";
    case Responsibility::Collection: return "collection";
    case Responsibility::Maintenance: return "maintenance";
    case Responsibility::Governance: return "governance";
  }
  return "?";
}

std::optional<EvidenceType> evidence_type_from(const std::string& token) {
  for (EvidenceType t :
       {EvidenceType::RiskAnalysis, EvidenceType::GapAnalysis,
        EvidenceType::Verification, EvidenceType::SecurityTraining,
        EvidenceType::AwarenessProgram, EvidenceType::IncidentLog,
        EvidenceType::Other})
    if (token == to_string(t)) return t;
  return std::nullopt;
}

std::optional<Role> role_from(const std::string& token) {
  for (Role r : {Role::Developer, Role::ProductOwner, Role::RiskOwner,
                 Role::Auditor, Role::Management, Role::SecurityOfficer,
                 Role::LegalTeam})
    if (token == to_string(r)) return r;
  return std::nullopt;
}

void EvidenceRegistry::add(EvidenceItem item) {
  if (item.valid_days && *item.valid_days < 1)
    throw std::invalid_argument("valid_days must be at least 1 for " + item.id);
  if (items_.count(item.id))
    throw std::invalid_argument("duplicate evidence id " + item.id);
  items_.emplace(item.id, std::move(item));
}

const EvidenceItem* EvidenceRegistry::find(const std::string& id) const {
  auto it = items_.find(id);
  return it == items_.end() ? nullptr : &it->second;
}

std::vector<const EvidenceItem*> EvidenceRegistry::items() const {
  std::vector<const EvidenceItem*> out;
  for (const auto& [id, item] : items_) out.push_back(&item);
  return out;
}

std::vector<Finding> link_report(const AssuranceCase& c,
                                 const EvidenceRegistry& registry) {
  std::vector<Finding> findings;
  std::set<std::string> referenced;
  for (const Node* sol : c.nodes_of_kind(NodeKind::Solution)) {
    auto item = sol->attr("item");
    if (!item) {
      findings.push_back({FindingCode::OrphanSolution, Severity::Warning, sol->id,
                          "solution " + sol->id + " links no evidence item"});
    } else if (!registry.contains(*item)) {
      findings.push_back({FindingCode::OrphanSolution, Severity::Warning, sol->id,
                          "solution " + sol->id + " links unknown evidence item " +
                              *item});
    } else {
      referenced.insert(*item);
    }
  }
  for (const EvidenceItem* item : registry.items())
    if (!referenced.count(item->id))
      findings.push_back({FindingCode::OrphanSolution, Severity::Warning, item->id,
                          "evidence item " + item->id +
                              " is referenced by no solution"});
  sort_findings(findings);
  return findings;
}

std::vector<Finding> staleness_report(const EvidenceRegistry& registry, Date as_of) {
  std::vector<Finding> findings;
  for (const EvidenceItem* item : registry.items()) {
    if (!item->valid_days) continue;
    Date expiry = item->created_at.plus_days(*item->valid_days);
    if (expiry < as_of)
      findings.push_back({FindingCode::StaleEvidence, Severity::Warning, item->id,
                          "evidence item " + item->id + " expired " +
                              expiry.to_string()});
  }
  sort_findings(findings);
  return findings;
}

const std::map<Role, std::set<Responsibility>>& responsibility_matrix() {
  using R = Responsibility;
  static const std::map<Role, std::set<R>> table = {
      {Role::Developer, {R::Creation, R::Maintenance}},
      {Role::ProductOwner, {R::Ownership, R::Governance}},
      {Role::RiskOwner, {R::Ownership}},
      {Role::Auditor, {R::Governance}},
      {Role::Management, {R::Governance}},
      {Role::SecurityOfficer,
       {R::Creation, R::Collection, R::Maintenance, R::Governance}},
      {Role::LegalTeam, {R::Collection}},
  };
  return table;
}

EvidenceRegistry load_registry(const std::string& csv_text) {
  auto rows = csv::parse(csv_text);
  const csv::Row header = {"id",         "title",      "type",      "uri",
                           "created_at", "valid_days", "owner_role"};
  if (rows.empty() || rows[0] != header)
    throw std::runtime_error(
        "registry must start with header "
        "id,title,type,uri,created_at,valid_days,owner_role");

  EvidenceRegistry registry;
  for (size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    const std::string where = "registry row " + std::to_string(i + 1);
    if (row.size() != 7)
      throw std::runtime_error(where + " has " + std::to_string(row.size()) +
                               " fields, expected 7");
    EvidenceItem item;
    item.id = row[0];
    item.title = row[1];
    auto etype = evidence_type_from(row[2]);
    auto created = Date::parse(row[4]);
    auto role = role_from(row[6]);
    if (item.id.empty() || !etype || !created || !role)
      throw std::runtime_error(where + " is malformed");
    item.etype = *etype;
    item.uri = row[3];
    item.created_at = *created;
    if (!row[5].empty()) {
      try {
        size_t pos = 0;
        int days = std::stoi(row[5], &pos);
        if (pos != row[5].size() || days < 1) throw std::invalid_argument("");
        item.valid_days = days;
      } catch (const std::exception&) {
        throw std::runtime_error(where + ": valid_days must be a positive integer");
      }
    }
    item.owner_role = *role;
    registry.add(std::move(item));
  }
  return registry;
}

std::string registry_to_csv(const EvidenceRegistry& registry) {
  std::vector<csv::Row> rows;
  rows.push_back({"id", "title", "type", "uri", "created_at", "valid_days",
                  "owner_role"});
  for (const EvidenceItem* item : registry.items()) {
    rows.push_back({item->id, item->title, to_string(item->etype), item->uri,
                    item->created_at.to_string(),
                    item->valid_days ? std::to_string(*item->valid_days) : "",
                    to_string(item->owner_role)});
  }
  return csv::write(rows);
}

}  // namespace sac
