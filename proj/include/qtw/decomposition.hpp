#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtw/graph.hpp"
#include "qtw/ordering_dp.hpp"

namespace qtw {

struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> tree_edges;

  /// Largest bag size minus one; -1 when every bag is empty.
  Width width() const;
};

/// Elimination-tree construction: bag(v) = {v} + the later vertices counted by R_pi(v); each node
/// hangs off the earliest-eliminated vertex of its bag. Bags contained in a neighbour are merged
/// away afterwards. Width equals ordering_width(g, pi).
TreeDecomposition ordering_to_decomposition(const Graph& g, const EliminationOrdering& pi);

enum class TdViolation {
  kNone,
  kBadBag,          // bag mentions a vertex outside V
  kVertexCoverage,  // some vertex in no bag
  kEdgeCoverage,    // some edge in no bag
  kNotATree,        // tree_edges do not form a tree on the nodes
  kNotConnected,    // some vertex's nodes are not a connected subtree
};

const char* to_string(TdViolation v);

struct TdCheck {
  bool ok = false;
  Width width = -1;
  TdViolation violation = TdViolation::kNone;
  std::string detail;
};

TdCheck validate_decomposition(const Graph& g, const TreeDecomposition& td);

/// PACE `.td`: `s td <bags> <width+1> <n>`, `b <id> <v...>`, then `i j` tree edges (1-based).
std::string serialize_td(const TreeDecomposition& td, int n);
/// Throws ParseError on malformed input. Returns the vertex count from the header.
std::pair<TreeDecomposition, int> parse_td(std::string_view text);

}  // namespace qtw
