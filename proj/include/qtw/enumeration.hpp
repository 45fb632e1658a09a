#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtw/combinatorics.hpp"
#include "qtw/graph.hpp"

namespace qtw {

/// Connected B with anchor in B, |B| = extra + 1 and |N(B)| = boundary.
struct ConnectedSetQuery {
  Vertex anchor = 0;
  int extra = 0;     // b
  int boundary = 0;  // f

  /// Throws std::invalid_argument unless extra, boundary >= 0 and anchor < n.
  void validate(int n) const;
};

/// C(b + f, b): the leaf count of the branching tree, saturating with a flag.
Count count_bound(int extra, int boundary);

/// One node of the branching tree. The tree is the one behind the count bound: at a node with budget
/// (b, f) the still-undecided neighbours w_1 < w_2 < ... of the partial set are candidates; child i
/// adds w_i, marks w_1..w_{i-1} as boundary vertices, and has budget (b - 1, f - i + 1).
struct BranchNode {
  VertexSet partial;
  VertexSet forbidden;  // vertices decided to lie in N(B)
  int extra = 0;
  int boundary = 0;     // boundary vertices still allowed beyond `forbidden`

  /// Leaf budget U(b, f) of this node.
  std::uint64_t leaf_bound() const { return count_bound(extra, boundary).value; }
  /// Leaf budget of child i (1-based); zero for i > f + 1.
  std::uint64_t child_bound(int i) const;
  /// Number of children with a non-zero budget (f + 1 when b > 0, else 0).
  int child_slots() const { return extra == 0 ? 0 : boundary + 1; }
  /// Candidate vertices for the next addition, ascending.
  VertexSet candidates(const Graph& g) const { return neighborhood(g, partial) - forbidden; }
  /// Child i, or nothing when fewer than i candidates exist.
  std::optional<BranchNode> child(const Graph& g, int i) const;
  /// The set this leaf represents, if it satisfies the query (only meaningful when extra == 0).
  std::optional<VertexSet> leaf_value(const Graph& g, int total_boundary) const;

  static BranchNode root(const ConnectedSetQuery& q);
};

/// Single-pass depth-first listing of the sets matching a query; O(n) frames of working memory.
class ConnectedSetEnumerator {
 public:
  ConnectedSetEnumerator(const Graph& g, ConnectedSetQuery q);

  std::optional<VertexSet> next();

 private:
  struct Frame {
    BranchNode node;
    int next_child = 1;
  };
  const Graph& g_;
  ConnectedSetQuery q_;
  std::vector<Frame> stack_;
};

std::vector<VertexSet> enumerate_connected_sets(const Graph& g, const ConnectedSetQuery& q);

/// Set at leaf `index` of the branching tree, or nothing for a pruned/infeasible leaf.
/// Throws std::out_of_range unless index < count_bound(b, f).
std::optional<VertexSet> unrank_connected_set(const Graph& g, const ConnectedSetQuery& q, std::uint64_t index);

/// Whether G[V - omega] has a connected component of exactly `component_size` vertices
/// (size 0 means V - omega is empty).
bool has_component_of_size(const Graph& g, VertexSet omega, int component_size);

/// Every omega with |omega| = p whose removal leaves a component of exactly c vertices, in
/// increasing colex order. A superset of the potential maximal cliques of that shape.
std::vector<VertexSet> enumerate_bag_candidates(const Graph& g, int p, int c);

}  // namespace qtw
