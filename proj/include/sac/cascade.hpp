#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sac/argument_graph.hpp"

namespace sac {

enum class SecurityProperty { Confidentiality, Integrity, Availability };

const char* to_string(SecurityProperty p);
char cia_letter(SecurityProperty p);
std::optional<SecurityProperty> security_property_from(char letter);

enum class RiskTreatment { Accept, Mitigate, Transfer };

const char* to_string(RiskTreatment t);
std::optional<RiskTreatment> risk_treatment_from(const std::string& token);

struct AssetRelation {
  std::string target_id;
  std::string label;

  bool operator==(const AssetRelation&) const = default;
};

struct Asset {
  std::string id;
  std::string name;
  std::set<SecurityProperty> properties;
  std::vector<AssetRelation> relations;
};

/// Block-level rules layered on top of a structurally valid case:
///  - SupportedBy edges must not decrease the block rank; strategies
///    inherit the rank of their parent goals
///  - goals and solutions outside generic subtrees need a block
///  - generic subtrees hang directly beneath the top claim, through at
///    most one strategy
///  - nodes inside generic subtrees are exempt from rank checks
///  - solutions must carry the evidence block; the root carries top_claim
std::vector<Finding> validate_cascade(const AssuranceCase& c);

/// One goal per (asset, CIA property), "Asset <name> preserves <property>",
/// ordered by (asset id, C, I, A). Throws std::invalid_argument for an
/// asset without properties or a relation to an unknown asset.
std::vector<Node> derive_security_goals(const std::vector<Asset>& assets);

enum class CounterLevel { Threats, Paths };

/// Counter claims for threat scenarios or attack paths below `goal`.
/// Throws std::invalid_argument when the goal sits at the wrong block or a
/// scenario is empty.
std::vector<Node> derive_counter_claims(const Node& goal,
                                        const std::vector<std::string>& scenarios,
                                        CounterLevel level,
                                        std::optional<RiskTreatment> treatment);

}  // namespace sac
