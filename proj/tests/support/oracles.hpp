#pragma once

// Graph generators and brute-force reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls into the solvers under test.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "qtw/graph.hpp"

namespace qtw::testing {

inline VertexSet vs(std::initializer_list<int> members) {
  VertexSet s;
  for (int v : members) s.insert(v);
  return s;
}

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
/// Centre 0, leaves 1..leaves.
Graph star_graph(int leaves);
/// rows x cols grid, vertex r * cols + c.
Graph grid_graph(int rows, int cols);
/// Outer cycle 0..4, spokes i -> i + 5, inner pentagram.
Graph petersen_graph();
Graph random_graph(int n, double p, std::uint64_t seed);
/// Uniform random labelled tree (Pruefer sequence).
Graph random_tree(int n, std::uint64_t seed);
Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

/// Every labelled graph on n vertices (n <= 5).
std::vector<Graph> all_labelled_graphs(int n);
/// One representative per isomorphism class of graphs on n vertices (n <= 6).
std::vector<Graph> graphs_up_to_iso(int n, bool connected_only);
inline std::vector<Graph> connected_graphs_up_to_iso(int n) { return graphs_up_to_iso(n, true); }

struct NamedGraph {
  std::string name;
  Graph graph;
};
/// Fixed test suite: named families plus seeded random graphs, up to 16 vertices.
std::vector<NamedGraph> graph_suite();

/// Adjacency-list BFS version of |Q_G(S, v)|.
int brute_q(const Graph& g, VertexSet s, Vertex v);
/// R_pi(v): later vertices reachable from v through earlier ones, by BFS.
int brute_r(const Graph& g, const std::vector<Vertex>& order, std::size_t pos);
int brute_ordering_width(const Graph& g, const std::vector<Vertex>& order);
/// Minimum ordering width over all n! permutations; -1 for n = 0.
int brute_treewidth(const Graph& g);
/// min over orderings of S of max_i |Q(L + first i of S, s_i)|, by permutation search.
int brute_twr(const Graph& g, VertexSet prefix, VertexSet s);
/// Subsets B with anchor in B, |B| = b + 1, G[B] connected and |N(B)| = f, by filtering.
std::vector<VertexSet> brute_connected_sets(const Graph& g, Vertex anchor, int b, int f);

}  // namespace qtw::testing
