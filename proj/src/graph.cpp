#include "qtw/graph.hpp"

#include <sstream>
#include <string>

namespace qtw {

std::string VertexSet::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first_item = true;
  for (Vertex v : *this) {
    if (!first_item) out << ',';
    out << v;
    first_item = false;
  }
  out << '}';
  return out.str();
}

Graph::Graph(int n) {
  if (n < 0 || n > kMaxVertices) {
    throw std::invalid_argument("vertex count must be in [0, 63], got " + std::to_string(n));
  }
  adj_.resize(n);
}

int Graph::edge_count() const {
  int twice = 0;
  for (VertexSet row : adj_) twice += row.size();
  return twice / 2;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= size() || v >= size()) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
  adj_[u].insert(v);
  adj_[v].insert(u);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

EliminationOrdering::EliminationOrdering(std::vector<Vertex> order, int n) : order_(std::move(order)) {
  for (Vertex v : order_) {
    if (v < 0 || v >= n) throw std::invalid_argument("ordering vertex out of range");
    if (members_.contains(v)) throw std::invalid_argument("ordering repeats a vertex");
    members_.insert(v);
  }
}

int EliminationOrdering::position(Vertex v) const {
  for (int i = 0; i < size(); ++i) {
    if (order_[i] == v) return i;
  }
  return -1;
}

VertexSet EliminationOrdering::before(Vertex v) const {
  VertexSet out;
  for (Vertex u : order_) {
    if (u == v) return out;
    out.insert(u);
  }
  throw std::invalid_argument("vertex not in ordering");
}

VertexSet neighborhood(const Graph& g, VertexSet s) {
  VertexSet out;
  for (Vertex v : s) out |= g.neighbors(v);
  return out - s;
}

VertexSet component_of(const Graph& g, VertexSet within, Vertex start) {
  VertexSet reached = VertexSet::single(start);
  VertexSet frontier = reached;
  while (!frontier.empty()) {
    VertexSet next;
    for (Vertex v : frontier) next |= g.neighbors(v);
    next &= within;
    next -= reached;
    reached |= next;
    frontier = next;
  }
  return reached;
}

std::vector<VertexSet> connected_components(const Graph& g, VertexSet s) {
  std::vector<VertexSet> out;
  VertexSet rest = s;
  while (!rest.empty()) {
    const VertexSet comp = component_of(g, rest, rest.first());
    out.push_back(comp);
    rest -= comp;
  }
  return out;
}

bool is_connected(const Graph& g, VertexSet s) {
  return s.empty() || component_of(g, s, s.first()) == s;
}

int q_value(const Graph& g, VertexSet s, Vertex v) {
  if (v < 0 || v >= g.size()) throw std::invalid_argument("q_value: vertex out of range");
  if (s.contains(v)) throw std::invalid_argument("q_value: v must not belong to S");
  if (!s.subset_of(g.vertices())) throw std::invalid_argument("q_value: S not a vertex subset");
  return q_value_unchecked(g, s, v);
}

VertexSet InducedSubgraph::lift(VertexSet local) const {
  VertexSet out;
  for (Vertex v : local) out.insert(to_parent[v]);
  return out;
}

VertexSet InducedSubgraph::project(VertexSet parent) const {
  VertexSet out;
  for (Vertex v : parent) {
    if (v < static_cast<int>(from_parent.size()) && from_parent[v] >= 0) out.insert(from_parent[v]);
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, VertexSet s) {
  InducedSubgraph sub;
  sub.from_parent.assign(g.size(), -1);
  for (Vertex v : s) {
    sub.from_parent[v] = static_cast<Vertex>(sub.to_parent.size());
    sub.to_parent.push_back(v);
  }
  sub.graph = Graph(static_cast<int>(sub.to_parent.size()));
  for (Vertex nv = 0; nv < sub.graph.size(); ++nv) {
    for (Vertex w : g.neighbors(sub.to_parent[nv]) & s) {
      const Vertex nw = sub.from_parent[w];
      if (nv < nw) sub.graph.add_edge(nv, nw);
    }
  }
  return sub;
}

}  // namespace qtw
