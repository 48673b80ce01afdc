#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sac/finding.hpp"

namespace sac {

using NodeId = std::string;

enum class NodeKind { Goal, Strategy, Solution, Context, Assumption };
enum class EdgeKind { SupportedBy, InContextOf };

const char* to_string(NodeKind kind);
const char* to_string(EdgeKind kind);
std::optional<NodeKind> node_kind_from(const std::string& token);
std::optional<EdgeKind> edge_kind_from(const std::string& token);

enum class CascadeBlock {
  TopClaim,
  Generic,
  WhiteHatAssets,
  WhiteHatDecomp,
  WhiteHatGoals,
  BlackHatThreats,
  BlackHatPaths,
  ResolverTreatment,
  ResolverRequirements,
  Evidence,
  QualityCompleteness,
  QualityConfidence,
};

const char* to_string(CascadeBlock block);
std::optional<CascadeBlock> block_from(const std::string& token);

/// Rank in the block ordering, top claim first, evidence last.
/// Generic and quality blocks sit outside the ordering.
std::optional<int> rank_of(CascadeBlock block);

// Attribute keys a node may carry. Values are free tokens; the casefile
// parser enforces per-key vocabularies.
inline constexpr const char* kAttrKeys[] = {
    "covers", "asset", "cia", "risk", "about", "undeveloped", "item"};

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::Goal;
  std::string text;
  std::optional<CascadeBlock> block;
  std::map<std::string, std::string> attrs;

  bool undeveloped() const;
  /// `covers` split at commas; empty when absent.
  std::vector<std::string> covered_clauses() const;
  std::optional<std::string> attr(const std::string& key) const;

  bool operator==(const Node&) const = default;
};

struct Edge {
  NodeId source;
  NodeId target;
  EdgeKind kind = EdgeKind::SupportedBy;

  bool operator==(const Edge&) const = default;
};

/// A GSN argument graph. Immutable after build_case; all checks are pure.
class AssuranceCase {
 public:
  AssuranceCase() = default;
  AssuranceCase(std::string name, std::vector<Node> nodes, std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Node* find(const NodeId& id) const;
  std::vector<const Node*> nodes_of_kind(NodeKind kind) const;

  /// Outgoing edges of `id`, optionally restricted to one edge kind.
  std::vector<const Edge*> edges_from(const NodeId& id,
                                      std::optional<EdgeKind> kind = {}) const;
  std::vector<const Edge*> edges_to(const NodeId& id,
                                    std::optional<EdgeKind> kind = {}) const;

  /// Solutions directly attached below `id` via SupportedBy.
  std::vector<const Node*> direct_solutions(const NodeId& id) const;

  /// True when a SupportedBy descendant of `id` (excluding `id`) satisfies
  /// the predicate.
  bool has_supported_descendant(const NodeId& id,
                                bool (*pred)(const Node&)) const;

 private:
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::map<NodeId, size_t> index_;
};

struct BuildResult {
  std::optional<AssuranceCase> assurance_case;
  std::vector<Finding> findings;

  bool ok() const { return assurance_case.has_value(); }
};

/// Checks id uniqueness and edge endpoint existence; anything deeper is
/// validate_structure's job.
BuildResult build_case(std::string name, std::vector<Node> nodes,
                       std::vector<Edge> edges);

/// Structural well-formedness of the GSN graph:
///  - SupportedBy subgraph acyclic
///  - exactly one root goal (no incoming SupportedBy)
///  - edge legality: SupportedBy is Goal->{Goal,Strategy,Solution} or
///    Strategy->Goal; InContextOf is {Goal,Strategy}->{Context,Assumption}
///  - Solutions, Contexts and Assumptions have no outgoing edges
///  - every non-root node reachable from a root
///  - every leaf goal carries undeveloped=true; strategies have children
///  - undeveloped only on goals
/// Returns findings in canonical order; pure.
std::vector<Finding> validate_structure(const AssuranceCase& c);

/// Order-insensitive node/edge set comparison (round-trip oracle).
bool structurally_equal(const AssuranceCase& a, const AssuranceCase& b);

}  // namespace sac
