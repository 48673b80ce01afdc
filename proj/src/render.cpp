#include "sac/render.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>

namespace sac {

std::string wrap_text(const std::string& text, size_t width) {
  std::string out;
  size_t line_len = 0;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    size_t end = text.find(' ', i);
    if (end == std::string::npos) end = text.size();
    const size_t word_len = end - i;
    if (line_len > 0 && line_len + 1 + word_len > width) {
      out.push_back('\n');
      line_len = 0;
    } else if (line_len > 0) {
      out.push_back(' ');
      ++line_len;
    }
    out.append(text, i, word_len);
    line_len += word_len;
    i = end;
  }
  return out;
}

namespace {

constexpr size_t kLabelWidth = 32;

bool plain_dot_id(const std::string& id) {
  if (id.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(id[0])) && id[0] != '_') return false;
  return std::all_of(id.begin() + 1, id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string dot_id(const std::string& id) {
  if (plain_dot_id(id)) return id;
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// DOT label literal: quotes/backslashes escaped, newlines as \n sequences.
std::string dot_label(const std::string& raw) {
  std::string out = "\"";
  for (char c : raw) {
    if (c == '\n') {
      out += "\\n";
    } else {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string node_statement(const Node& n) {
  std::string label_text = wrap_text(n.text, kLabelWidth);
  if (n.kind == NodeKind::Assumption) label_text += " [A]";
  std::string label = n.id + "\n" + label_text;

  std::string shape;
  std::string style;
  switch (n.kind) {
    case NodeKind::Goal:
      shape = "box";
      if (n.undeveloped()) style = "dashed";
      break;
    case NodeKind::Strategy: shape = "parallelogram"; break;
    case NodeKind::Solution: shape = "circle"; break;
    case NodeKind::Context:
      shape = "box";
      style = "rounded";
      break;
    case NodeKind::Assumption: shape = "ellipse"; break;
  }

  std::string stmt = dot_id(n.id) + " [shape=" + shape;
  if (!style.empty()) stmt += ", style=" + style;
  stmt += ", label=" + dot_label(label) + "];";
  return stmt;
}

}  // namespace

std::string to_dot(const AssuranceCase& c, const RenderOptions& opts) {
  std::string out = "digraph " + dot_label(c.name()) + " {\n";
  out += "  rankdir=";
  out += opts.rankdir == RankDir::TB ? "TB" : "LR";
  out += ";\n";

  std::vector<const Node*> nodes;
  for (const Node& n : c.nodes()) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(),
            [](const Node* a, const Node* b) { return a->id < b->id; });

  if (opts.show_blocks) {
    static constexpr CascadeBlock kBlockOrder[] = {
        CascadeBlock::TopClaim,         CascadeBlock::WhiteHatAssets,
        CascadeBlock::WhiteHatDecomp,   CascadeBlock::WhiteHatGoals,
        CascadeBlock::BlackHatThreats,  CascadeBlock::BlackHatPaths,
        CascadeBlock::ResolverTreatment, CascadeBlock::ResolverRequirements,
        CascadeBlock::Evidence,         CascadeBlock::Generic,
        CascadeBlock::QualityCompleteness, CascadeBlock::QualityConfidence};
    for (CascadeBlock block : kBlockOrder) {
      std::vector<const Node*> members;
      for (const Node* n : nodes)
        if (n->block == block) members.push_back(n);
      if (members.empty()) continue;
      std::string cluster_id = to_string(block);
      std::replace(cluster_id.begin(), cluster_id.end(), '.', '_');
      out += "  subgraph cluster_" + cluster_id + " {\n";
      out += "    label=" + dot_label(to_string(block)) + ";\n";
      for (const Node* n : members) out += "    " + node_statement(*n) + "\n";
      out += "  }\n";
    }
    for (const Node* n : nodes)
      if (!n->block) out += "  " + node_statement(*n) + "\n";
  } else {
    for (const Node* n : nodes) out += "  " + node_statement(*n) + "\n";
  }

  std::vector<const Edge*> edges;
  for (const Edge& e : c.edges()) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
    int cmp = a->source.compare(b->source);
    if (cmp != 0) return cmp < 0;
    cmp = a->target.compare(b->target);
    if (cmp != 0) return cmp < 0;
    return std::strcmp(to_string(a->kind), to_string(b->kind)) < 0;
  });
  for (const Edge* e : edges) {
    const char* arrow = e->kind == EdgeKind::SupportedBy ? "normal" : "empty";
    out += "  " + dot_id(e->source) + " -> " + dot_id(e->target) +
           " [arrowhead=" + std::string(arrow) + "];\n";
  }

  out += "}\n";
  return out;
}

}  // namespace sac
