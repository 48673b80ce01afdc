#pragma once

#include <string>

#include "sac/argument_graph.hpp"

namespace sac {

enum class RankDir { TB, LR };

struct RenderOptions {
  bool show_blocks = false;
  RankDir rankdir = RankDir::TB;
};

/// DOT text for the case: goals as boxes, strategies as parallelograms,
/// solutions as circles, contexts as rounded boxes, assumptions as ellipses
/// tagged " [A]". Undeveloped goals are dashed. Nodes in id order, edges in
/// (source, target, rel) order; byte-stable, LF endings.
std::string to_dot(const AssuranceCase& c, const RenderOptions& opts = {});

/// Greedy word wrap used for node labels; lines joined with '\n'.
std::string wrap_text(const std::string& text, size_t width);

}  // namespace sac
