#include "sac/argument_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace sac {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Goal: return "goal";
    case NodeKind::Strategy: return "strategy";
    case NodeKind::Solution: return "solution";
    case NodeKind::Context: return "context";
    case NodeKind::Assumption: return "assumption";
  }
  return "?";
}

const char* to_string(EdgeKind kind) {
  return kind == EdgeKind::SupportedBy ? "supported_by" : "in_context_of";
}

std::optional<NodeKind> node_kind_from(const std::string& token) {
  if (token == "goal") return NodeKind::Goal;
  if (token == "strategy") return NodeKind::Strategy;
  if (token == "solution") return NodeKind::Solution;
  if (token == "context") return NodeKind::Context;
  if (token == "assumption") return NodeKind::Assumption;
  return std::nullopt;
}

std::optional<EdgeKind> edge_kind_from(const std::string& token) {
  if (token == "supported_by") return EdgeKind::SupportedBy;
  if (token == "in_context_of") return EdgeKind::InContextOf;
  return std::nullopt;
}

const char* to_string(CascadeBlock block) {
  switch (block) {
    case CascadeBlock::TopClaim: return "top_claim";
    case CascadeBlock::Generic: return "generic";
    case CascadeBlock::WhiteHatAssets: return "white_hat.assets";
    case CascadeBlock::WhiteHatDecomp: return "white_hat.decomp";
    case CascadeBlock::WhiteHatGoals: return "white_hat.goals";
    case CascadeBlock::BlackHatThreats: return "black_hat.threats";
    case CascadeBlock::BlackHatPaths: return "black_hat.paths";
    case CascadeBlock::ResolverTreatment: return "resolver.treatment";
    case CascadeBlock::ResolverRequirements: return "resolver.requirements";
    case CascadeBlock::Evidence: return "evidence";
    case CascadeBlock::QualityCompleteness: return "quality.completeness";
    case CascadeBlock::QualityConfidence: return "quality.confidence";
  }
  return "?";
}

std::optional<CascadeBlock> block_from(const std::string& token) {
  static const std::map<std::string, CascadeBlock> table = {
      {"top_claim", CascadeBlock::TopClaim},
      {"generic", CascadeBlock::Generic},
      {"white_hat.assets", CascadeBlock::WhiteHatAssets},
      {"white_hat.decomp", CascadeBlock::WhiteHatDecomp},
      {"white_hat.goals", CascadeBlock::WhiteHatGoals},
      {"black_hat.threats", CascadeBlock::BlackHatThreats},
      {"black_hat.paths", CascadeBlock::BlackHatPaths},
      {"resolver.treatment", CascadeBlock::ResolverTreatment},
      {"resolver.requirements", CascadeBlock::ResolverRequirements},
      {"evidence", CascadeBlock::Evidence},
      {"quality.completeness", CascadeBlock::QualityCompleteness},
      {"quality.confidence", CascadeBlock::QualityConfidence},
  };
  auto it = table.find(token);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::optional<int> rank_of(CascadeBlock block) {
  switch (block) {
    case CascadeBlock::TopClaim: return 0;
    case CascadeBlock::WhiteHatAssets: return 1;
    case CascadeBlock::WhiteHatDecomp: return 2;
    case CascadeBlock::WhiteHatGoals: return 3;
    case CascadeBlock::BlackHatThreats: return 4;
    case CascadeBlock::BlackHatPaths: return 5;
    case CascadeBlock::ResolverTreatment: return 6;
    case CascadeBlock::ResolverRequirements: return 7;
    case CascadeBlock::Evidence: return 8;
    case CascadeBlock::Generic:
    case CascadeBlock::QualityCompleteness:
    case CascadeBlock::QualityConfidence:
      return std::nullopt;
  }
  return std::nullopt;
}

bool Node::undeveloped() const {
  auto it = attrs.find("undeveloped");
  return it != attrs.end() && it->second == "true";
}

std::vector<std::string> Node::covered_clauses() const {
  std::vector<std::string> out;
  auto it = attrs.find("covers");
  if (it == attrs.end()) return out;
  const std::string& v = it->second;
  size_t start = 0;
  while (start <= v.size()) {
    size_t comma = v.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(v.substr(start));
      break;
    }
    out.push_back(v.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::optional<std::string> Node::attr(const std::string& key) const {
  auto it = attrs.find(key);
  if (it == attrs.end()) return std::nullopt;
  return it->second;
}

AssuranceCase::AssuranceCase(std::string name, std::vector<Node> nodes,
                             std::vector<Edge> edges)
    : name_(std::move(name)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].id, i);
}

const Node* AssuranceCase::find(const NodeId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

std::vector<const Node*> AssuranceCase::nodes_of_kind(NodeKind kind) const {
  std::vector<const Node*> out;
  for (const Node& n : nodes_)
    if (n.kind == kind) out.push_back(&n);
  return out;
}

std::vector<const Edge*> AssuranceCase::edges_from(const NodeId& id,
                                                   std::optional<EdgeKind> kind) const {
  std::vector<const Edge*> out;
  for (const Edge& e : edges_)
    if (e.source == id && (!kind || e.kind == *kind)) out.push_back(&e);
  return out;
}

std::vector<const Edge*> AssuranceCase::edges_to(const NodeId& id,
                                                 std::optional<EdgeKind> kind) const {
  std::vector<const Edge*> out;
  for (const Edge& e : edges_)
    if (e.target == id && (!kind || e.kind == *kind)) out.push_back(&e);
  return out;
}

std::vector<const Node*> AssuranceCase::direct_solutions(const NodeId& id) const {
  std::vector<const Node*> out;
  for (const Edge* e : edges_from(id, EdgeKind::SupportedBy)) {
    const Node* n = find(e->target);
    if (n && n->kind == NodeKind::Solution) out.push_back(n);
  }
  return out;
}

bool AssuranceCase::has_supported_descendant(const NodeId& id,
                                             bool (*pred)(const Node&)) const {
  std::set<NodeId> seen;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (const Edge* e : edges_from(cur, EdgeKind::SupportedBy)) {
      if (!seen.insert(e->target).second) continue;
      const Node* n = find(e->target);
      if (!n) continue;
      if (pred(*n)) return true;
      stack.push_back(e->target);
    }
  }
  return false;
}

BuildResult build_case(std::string name, std::vector<Node> nodes,
                       std::vector<Edge> edges) {
  std::vector<Finding> findings;
  std::set<NodeId> ids;
  for (const Node& n : nodes) {
    if (!ids.insert(n.id).second)
      findings.push_back({FindingCode::DuplicateId, Severity::Error, n.id,
                          "node id declared more than once"});
  }
  for (const Edge& e : edges) {
    for (const NodeId& end : {e.source, e.target}) {
      if (!ids.count(end))
        findings.push_back({FindingCode::DanglingRef, Severity::Error, end,
                            "edge " + e.source + " -> " + e.target +
                                " references an unknown node"});
    }
  }
  sort_findings(findings);
  findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
  if (!findings.empty()) return {std::nullopt, std::move(findings)};
  return {AssuranceCase(std::move(name), std::move(nodes), std::move(edges)), {}};
}

namespace {

bool edge_legal(NodeKind src, NodeKind dst, EdgeKind kind) {
  if (kind == EdgeKind::SupportedBy) {
    if (src == NodeKind::Goal)
      return dst == NodeKind::Goal || dst == NodeKind::Strategy ||
             dst == NodeKind::Solution;
    if (src == NodeKind::Strategy) return dst == NodeKind::Goal;
    return false;
  }
  if (src == NodeKind::Goal || src == NodeKind::Strategy)
    return dst == NodeKind::Context || dst == NodeKind::Assumption;
  return false;
}

}  // namespace

std::vector<Finding> validate_structure(const AssuranceCase& c) {
  std::vector<Finding> findings;

  // Edge legality; one finding per offending edge.
  for (const Edge& e : c.edges()) {
    const Node* src = c.find(e.source);
    const Node* dst = c.find(e.target);
    if (!src || !dst) continue;  // build_case guards this
    if (!edge_legal(src->kind, dst->kind, e.kind))
      findings.push_back({FindingCode::BadEdge, Severity::Error, e.source,
                          std::string(to_string(e.kind)) + " edge " + e.source +
                              " -> " + e.target + " is not allowed between " +
                              to_string(src->kind) + " and " + to_string(dst->kind)});
  }

  // Adjacency over SupportedBy in target-id order, for deterministic DFS.
  std::map<NodeId, std::vector<NodeId>> support;
  for (const Edge& e : c.edges())
    if (e.kind == EdgeKind::SupportedBy) support[e.source].push_back(e.target);
  for (auto& [id, targets] : support) std::sort(targets.begin(), targets.end());

  // Cycle detection: one CYCLE per back edge, naming the re-entered node.
  std::map<NodeId, int> color;  // 0 white, 1 gray, 2 black
  std::vector<NodeId> order;
  for (const Node& n : c.nodes()) order.push_back(n.id);
  std::sort(order.begin(), order.end());
  for (const NodeId& start : order) {
    if (color[start] != 0) continue;
    // Explicit stack of (node, next child index).
    std::vector<std::pair<NodeId, size_t>> stack{{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      const auto& targets = support[cur];
      if (next >= targets.size()) {
        color[cur] = 2;
        stack.pop_back();
        continue;
      }
      NodeId child = targets[next++];
      if (color[child] == 0) {
        color[child] = 1;
        stack.push_back({child, 0});
      } else if (color[child] == 1) {
        findings.push_back({FindingCode::Cycle, Severity::Error, child,
                            "supported_by cycle re-enters " + child});
      }
    }
  }

  // Root goals: goals without incoming SupportedBy. Exactly one expected.
  std::set<NodeId> has_incoming_support;
  for (const Edge& e : c.edges())
    if (e.kind == EdgeKind::SupportedBy) has_incoming_support.insert(e.target);
  std::vector<const Node*> roots;
  for (const Node& n : c.nodes())
    if (n.kind == NodeKind::Goal && !has_incoming_support.count(n.id))
      roots.push_back(&n);
  std::sort(roots.begin(), roots.end(), [](const Node* a, const Node* b) {
    bool ta = a->block == CascadeBlock::TopClaim;
    bool tb = b->block == CascadeBlock::TopClaim;
    if (ta != tb) return ta;
    return a->id < b->id;
  });
  if (roots.empty()) {
    if (!c.nodes().empty())
      findings.push_back({FindingCode::MultiRoot, Severity::Error, "",
                          "case has no root goal"});
  } else {
    for (size_t i = 1; i < roots.size(); ++i)
      findings.push_back({FindingCode::MultiRoot, Severity::Error, roots[i]->id,
                          "more than one root goal; " + roots[i]->id +
                              " also has no incoming supported_by edge"});
  }

  // Reachability from the root set, across both edge kinds.
  std::set<NodeId> reachable;
  std::vector<NodeId> stack;
  for (const Node* r : roots) {
    reachable.insert(r->id);
    stack.push_back(r->id);
  }
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : c.edges()) adj[e.source].push_back(e.target);
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (const NodeId& next : adj[cur])
      if (reachable.insert(next).second) stack.push_back(next);
  }
  for (const Node& n : c.nodes())
    if (!reachable.count(n.id))
      findings.push_back({FindingCode::Unreachable, Severity::Error, n.id,
                          n.id + " is not reachable from the root goal"});

  // Per-node rules.
  for (const Node& n : c.nodes()) {
    bool has_support_child = !support[n.id].empty();
    if (n.kind == NodeKind::Goal && !has_support_child && !n.undeveloped())
      findings.push_back({FindingCode::UndevelopedGoal, Severity::Error, n.id,
                          "goal " + n.id +
                              " has no support and is not marked undeveloped"});
    if (n.kind == NodeKind::Strategy && !has_support_child)
      findings.push_back({FindingCode::EmptyStrategy, Severity::Error, n.id,
                          "strategy " + n.id + " does not support any goal"});
    if (n.kind != NodeKind::Goal && n.attrs.count("undeveloped"))
      findings.push_back({FindingCode::KindMismatch, Severity::Error, n.id,
                          "undeveloped marker is only meaningful on goals"});
  }

  sort_findings(findings);
  return findings;
}

bool structurally_equal(const AssuranceCase& a, const AssuranceCase& b) {
  if (a.name() != b.name()) return false;
  if (a.nodes().size() != b.nodes().size()) return false;
  if (a.edges().size() != b.edges().size()) return false;

  auto nodes_sorted = [](const AssuranceCase& c) {
    std::vector<Node> v = c.nodes();
    std::sort(v.begin(), v.end(),
              [](const Node& x, const Node& y) { return x.id < y.id; });
    return v;
  };
  auto edges_sorted = [](const AssuranceCase& c) {
    std::vector<Edge> v = c.edges();
    std::sort(v.begin(), v.end(), [](const Edge& x, const Edge& y) {
      return std::tie(x.source, x.target, x.kind) <
             std::tie(y.source, y.target, y.kind);
    });
    return v;
  };
  return nodes_sorted(a) == nodes_sorted(b) && edges_sorted(a) == edges_sorted(b);
}

}  // namespace sac
