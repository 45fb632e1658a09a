#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qtw/vertex_set.hpp"

namespace qtw {

/// Simple undirected graph on at most 63 vertices; adjacency rows are vertex sets.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int size() const { return static_cast<int>(adj_.size()); }
  VertexSet vertices() const { return VertexSet::range(size()); }
  VertexSet neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return adj_[v].size(); }
  int edge_count() const;

  /// Adds {u,v}; repeated edges are ignored. Self-loops and out-of-range endpoints throw.
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const { return adj_[u].contains(v); }

  /// Edges as (u, v) pairs with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<VertexSet> adj_;
};

/// Permutation of a vertex subset; position i holds the i-th eliminated vertex.
class EliminationOrdering {
 public:
  EliminationOrdering() = default;
  /// Throws std::invalid_argument on repeated or out-of-range vertices.
  EliminationOrdering(std::vector<Vertex> order, int n);

  const std::vector<Vertex>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  VertexSet members() const { return members_; }
  /// Position of v, or -1.
  int position(Vertex v) const;
  /// Vertices strictly before v.
  VertexSet before(Vertex v) const;

 private:
  std::vector<Vertex> order_;
  VertexSet members_;
};

/// N(S): vertices outside S adjacent to some member of S.
VertexSet neighborhood(const Graph& g, VertexSet s);

/// The connected component of G[within] containing `start` (start must be in `within`).
VertexSet component_of(const Graph& g, VertexSet within, Vertex start);

/// Components of G[S], ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g, VertexSet s);

bool is_connected(const Graph& g, VertexSet s);

/// |Q_G(S, v)|: vertices w outside S+v joined to v by a path whose interior lies in S.
/// Throws std::invalid_argument if v is in S.
int q_value(const Graph& g, VertexSet s, Vertex v);

/// Same as q_value without the precondition check; for inner loops.
inline int q_value_unchecked(const Graph& g, VertexSet s, Vertex v) {
  return neighborhood(g, component_of(g, s.with(v), v)).size();
}

struct InducedSubgraph {
  Graph graph;
  /// new index -> old index
  std::vector<Vertex> to_parent;
  /// old index -> new index, -1 if dropped
  std::vector<Vertex> from_parent;

  VertexSet lift(VertexSet local) const;
  VertexSet project(VertexSet parent) const;
};

/// G[S] relabeled to 0..|S|-1 in increasing order of the original index.
InducedSubgraph induced_subgraph(const Graph& g, VertexSet s);

}  // namespace qtw
