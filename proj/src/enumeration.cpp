#include "qtw/enumeration.hpp"

#include <stdexcept>
#include <string>

namespace qtw {

void ConnectedSetQuery::validate(int n) const {
  if (extra < 0 || boundary < 0) throw std::invalid_argument("query: b and f must be non-negative");
  if (anchor < 0 || anchor >= n) throw std::invalid_argument("query: anchor out of range");
}

Count count_bound(int extra, int boundary) {
  if (extra < 0 || boundary < 0) return {};
  return binomial(extra + boundary, extra);
}

std::uint64_t BranchNode::child_bound(int i) const {
  if (extra == 0 || i < 1) return 0;
  return count_bound(extra - 1, boundary - i + 1).value;
}

std::optional<BranchNode> BranchNode::child(const Graph& g, int i) const {
  if (extra == 0 || i < 1 || i > boundary + 1) return std::nullopt;
  VertexSet cand = candidates(g);
  VertexSet skipped;
  for (int j = 1; j < i; ++j) {
    if (cand.empty()) return std::nullopt;
    const Vertex w = cand.first();
    skipped.insert(w);
    cand.erase(w);
  }
  if (cand.empty()) return std::nullopt;
  BranchNode c;
  c.partial = partial.with(cand.first());
  c.forbidden = forbidden | skipped;
  c.extra = extra - 1;
  c.boundary = boundary - (i - 1);
  return c;
}

std::optional<VertexSet> BranchNode::leaf_value(const Graph& g, int total_boundary) const {
  if (extra != 0) return std::nullopt;
  if (neighborhood(g, partial).size() != total_boundary) return std::nullopt;
  return partial;
}

BranchNode BranchNode::root(const ConnectedSetQuery& q) {
  BranchNode r;
  r.partial = VertexSet::single(q.anchor);
  r.extra = q.extra;
  r.boundary = q.boundary;
  return r;
}

ConnectedSetEnumerator::ConnectedSetEnumerator(const Graph& g, ConnectedSetQuery q) : g_(g), q_(q) {
  q_.validate(g.size());
  stack_.push_back({BranchNode::root(q_), 1});
}

std::optional<VertexSet> ConnectedSetEnumerator::next() {
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    if (top.node.extra == 0) {
      const auto value = top.node.leaf_value(g_, q_.boundary);
      stack_.pop_back();
      if (value) return value;
      continue;
    }
    if (top.next_child > top.node.child_slots()) {
      stack_.pop_back();
      continue;
    }
    auto child = top.node.child(g_, top.next_child++);
    if (!child) {
      // Later children need even more candidates; none of them exist either.
      top.next_child = top.node.child_slots() + 1;
      continue;
    }
    stack_.push_back({*child, 1});
  }
  return std::nullopt;
}

std::vector<VertexSet> enumerate_connected_sets(const Graph& g, const ConnectedSetQuery& q) {
  std::vector<VertexSet> out;
  ConnectedSetEnumerator it(g, q);
  while (auto s = it.next()) out.push_back(*s);
  return out;
}

std::optional<VertexSet> unrank_connected_set(const Graph& g, const ConnectedSetQuery& q, std::uint64_t index) {
  q.validate(g.size());
  const Count bound = count_bound(q.extra, q.boundary);
  if (index >= bound.value) {
    throw std::out_of_range("unrank_connected_set: index " + std::to_string(index) + " >= bound " +
                            std::to_string(bound.value));
  }
  BranchNode node = BranchNode::root(q);
  while (node.extra > 0) {
    int i = 1;
    for (; i <= node.child_slots(); ++i) {
      const std::uint64_t span = node.child_bound(i);
      if (index < span) break;
      index -= span;
    }
    auto child = node.child(g, i);
    if (!child) return std::nullopt;
    node = *child;
  }
  return node.leaf_value(g, q.boundary);
}

bool has_component_of_size(const Graph& g, VertexSet omega, int component_size) {
  const VertexSet rest = g.vertices() - omega;
  if (component_size == 0) return rest.empty();
  VertexSet todo = rest;
  while (!todo.empty()) {
    const VertexSet comp = component_of(g, rest, todo.first());
    if (comp.size() == component_size) return true;
    todo -= comp;
  }
  return false;
}

std::vector<VertexSet> enumerate_bag_candidates(const Graph& g, int p, int c) {
  std::vector<VertexSet> out;
  const int n = g.size();
  if (p < 1 || p > n || c < 0 || c > n - p) return out;
  for_each_subset_of_size(g.vertices(), p, [&](VertexSet omega) {
    if (has_component_of_size(g, omega, c)) out.push_back(omega);
  });
  return out;
}

}  // namespace qtw
