#include "sac/cascade.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sac {

const char* to_string(SecurityProperty p) {
  switch (p) {
    case SecurityProperty::Confidentiality: return "Confidentiality";
    case SecurityProperty::Integrity: return "Integrity";
    case SecurityProperty::Availability: return "Availability";
  }
  return "?";
}

char cia_letter(SecurityProperty p) {
  switch (p) {
    case SecurityProperty::Confidentiality: return 'C';
    case SecurityProperty::Integrity: return 'I';
    case SecurityProperty::Availability: return 'A';
  }
  return '?';
}

std::optional<SecurityProperty> security_property_from(char letter) {
  switch (letter) {
    case 'C': return SecurityProperty::Confidentiality;
    case 'I': return SecurityProperty::Integrity;
    case 'A': return SecurityProperty::Availability;
    default: return std::nullopt;
  }
}

const char* to_string(RiskTreatment t) {
  switch (t) {
    case RiskTreatment::Accept: return "accept";
    case RiskTreatment::Mitigate: return "mitigate";
    case RiskTreatment::Transfer: return "transfer";
  }
  return "?";
}

std::optional<RiskTreatment> risk_treatment_from(const std::string& token) {
  if (token == "accept") return RiskTreatment::Accept;
  if (token == "mitigate") return RiskTreatment::Mitigate;
  if (token == "transfer") return RiskTreatment::Transfer;
  return std::nullopt;
}

namespace {

// Every node of a generic sub-case: generic-blocked nodes and their
// SupportedBy descendants.
std::set<NodeId> generic_members(const AssuranceCase& c) {
  std::set<NodeId> members;
  std::vector<NodeId> stack;
  for (const Node& n : c.nodes())
    if (n.block == CascadeBlock::Generic) {
      members.insert(n.id);
      stack.push_back(n.id);
    }
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (const Edge* e : c.edges_from(cur, EdgeKind::SupportedBy))
      if (members.insert(e->target).second) stack.push_back(e->target);
  }
  return members;
}

const Node* find_root(const AssuranceCase& c) {
  std::set<NodeId> has_incoming;
  for (const Edge& e : c.edges())
    if (e.kind == EdgeKind::SupportedBy) has_incoming.insert(e.target);
  const Node* root = nullptr;
  for (const Node& n : c.nodes()) {
    if (n.kind != NodeKind::Goal || has_incoming.count(n.id)) continue;
    if (!root || (n.block == CascadeBlock::TopClaim &&
                  root->block != CascadeBlock::TopClaim) ||
        ((n.block == CascadeBlock::TopClaim) ==
             (root->block == CascadeBlock::TopClaim) &&
         n.id < root->id))
      root = &n;
  }
  return root;
}

}  // namespace

std::vector<Finding> validate_cascade(const AssuranceCase& c) {
  std::vector<Finding> findings;
  const std::set<NodeId> generics = generic_members(c);
  const Node* root = find_root(c);

  if (root && root->block && root->block != CascadeBlock::TopClaim)
    findings.push_back({FindingCode::UnknownBlock, Severity::Error, root->id,
                        "root goal must carry the top_claim block"});

  // Generic sub-cases hang off the top claim, through at most one strategy.
  for (const Node& n : c.nodes()) {
    if (n.block != CascadeBlock::Generic) continue;
    bool is_generic_root = true;
    for (const Edge* e : c.edges_to(n.id, EdgeKind::SupportedBy))
      if (generics.count(e->source)) is_generic_root = false;
    if (!is_generic_root) continue;
    for (const Edge* e : c.edges_to(n.id, EdgeKind::SupportedBy)) {
      const Node* parent = c.find(e->source);
      bool ok = false;
      if (root && parent) {
        if (parent->id == root->id) {
          ok = true;
        } else if (parent->kind == NodeKind::Strategy) {
          auto grand = c.edges_to(parent->id, EdgeKind::SupportedBy);
          ok = !grand.empty() &&
               std::all_of(grand.begin(), grand.end(),
                           [&](const Edge* g) { return g->source == root->id; });
        }
      }
      if (!ok)
        findings.push_back(
            {FindingCode::BadEdge, Severity::Error, n.id,
             "generic sub-case " + n.id +
                 " must attach directly beneath the top claim"});
    }
  }

  // Effective ranks. Strategies inherit the highest rank among their parent
  // goals so that rank order holds across every path through them. Solutions
  // always rank as evidence; a wrong block on one is KIND_MISMATCH territory
  // and must not double-report as an inversion.
  std::map<NodeId, int> eff;
  for (const Node& n : c.nodes()) {
    if (generics.count(n.id)) continue;
    if (n.kind == NodeKind::Solution) {
      eff[n.id] = *rank_of(CascadeBlock::Evidence);
    } else if (n.block) {
      if (auto r = rank_of(*n.block)) eff[n.id] = *r;
    }
  }
  for (const Node& n : c.nodes()) {
    if (n.kind != NodeKind::Strategy || generics.count(n.id)) continue;
    std::optional<int> inherited;
    for (const Edge* e : c.edges_to(n.id, EdgeKind::SupportedBy)) {
      auto it = eff.find(e->source);
      if (it != eff.end())
        inherited = inherited ? std::max(*inherited, it->second) : it->second;
    }
    if (inherited) eff[n.id] = *inherited;
  }

  for (const Edge& e : c.edges()) {
    if (e.kind != EdgeKind::SupportedBy) continue;
    if (generics.count(e.source) || generics.count(e.target)) continue;
    auto ru = eff.find(e.source);
    auto rv = eff.find(e.target);
    if (ru == eff.end() || rv == eff.end()) continue;
    if (rv->second < ru->second)
      findings.push_back({FindingCode::LevelInversion, Severity::Error, e.target,
                          "edge " + e.source + " -> " + e.target +
                              " moves up the block order"});
  }

  for (const Node& n : c.nodes()) {
    switch (n.kind) {
      case NodeKind::Goal:
        if (!n.block && !generics.count(n.id))
          findings.push_back({FindingCode::UnknownBlock, Severity::Error, n.id,
                              "goal " + n.id + " carries no block"});
        break;
      case NodeKind::Solution:
        if (!n.block)
          findings.push_back({FindingCode::UnknownBlock, Severity::Error, n.id,
                              "solution " + n.id + " carries no block"});
        else if (*n.block != CascadeBlock::Evidence)
          findings.push_back({FindingCode::KindMismatch, Severity::Error, n.id,
                              "solution " + n.id +
                                  " must carry the evidence block"});
        break;
      case NodeKind::Strategy:
        if (n.block)
          findings.push_back({FindingCode::KindMismatch, Severity::Error, n.id,
                              "strategy " + n.id +
                                  " must not carry a block; it inherits its "
                                  "parent goal's level"});
        break;
      default:
        break;
    }
  }

  sort_findings(findings);
  return findings;
}

std::vector<Node> derive_security_goals(const std::vector<Asset>& assets) {
  std::set<std::string> known;
  for (const Asset& a : assets) known.insert(a.id);
  for (const Asset& a : assets) {
    if (a.properties.empty())
      throw std::invalid_argument("asset " + a.id + " has no security properties");
    for (const AssetRelation& r : a.relations)
      if (!known.count(r.target_id))
        throw std::invalid_argument("asset " + a.id + " relates to unknown asset " +
                                    r.target_id);
  }

  std::vector<const Asset*> sorted;
  for (const Asset& a : assets) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(),
            [](const Asset* x, const Asset* y) { return x->id < y->id; });

  static constexpr SecurityProperty kCiaOrder[] = {
      SecurityProperty::Confidentiality, SecurityProperty::Integrity,
      SecurityProperty::Availability};

  std::vector<Node> goals;
  for (const Asset* a : sorted) {
    for (SecurityProperty p : kCiaOrder) {
      if (!a->properties.count(p)) continue;
      Node g;
      g.id = a->id + "." + cia_letter(p);
      g.kind = NodeKind::Goal;
      g.text = "Asset " + a->name + " preserves " + to_string(p);
      g.block = CascadeBlock::WhiteHatGoals;
      g.attrs["asset"] = a->id;
      g.attrs["cia"] = std::string(1, cia_letter(p));
      goals.push_back(std::move(g));
    }
  }
  return goals;
}

std::vector<Node> derive_counter_claims(const Node& goal,
                                        const std::vector<std::string>& scenarios,
                                        CounterLevel level,
                                        std::optional<RiskTreatment> treatment) {
  if (goal.kind != NodeKind::Goal)
    throw std::invalid_argument("counter claims derive from a goal node");
  const CascadeBlock expected = level == CounterLevel::Threats
                                    ? CascadeBlock::WhiteHatGoals
                                    : CascadeBlock::BlackHatThreats;
  if (goal.block != expected)
    throw std::invalid_argument(std::string("goal ") + goal.id +
                                " sits at the wrong block for this level");

  std::vector<Node> claims;
  size_t k = 0;
  for (const std::string& scenario : scenarios) {
    if (scenario.empty())
      throw std::invalid_argument("empty scenario text");
    ++k;
    Node n;
    n.kind = NodeKind::Goal;
    if (level == CounterLevel::Threats) {
      n.id = goal.id + ".t" + std::to_string(k);
      n.text = "Threat scenario '" + scenario + "' does not compromise " + goal.text;
      n.block = CascadeBlock::BlackHatThreats;
    } else {
      n.id = goal.id + ".p" + std::to_string(k);
      n.text = "Attack path '" + scenario + "' is not realizable";
      n.block = CascadeBlock::BlackHatPaths;
    }
    if (treatment) n.attrs["risk"] = to_string(*treatment);
    claims.push_back(std::move(n));
  }
  return claims;
}

}  // namespace sac
