#include "qtw/decomposition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "qtw/graph_io.hpp"

namespace qtw {

Width TreeDecomposition::width() const {
  Width w = -1;
  for (VertexSet b : bags) w = std::max(w, b.size() - 1);
  return w;
}

TreeDecomposition ordering_to_decomposition(const Graph& g, const EliminationOrdering& pi) {
  if (pi.members() != g.vertices()) throw std::invalid_argument("ordering_to_decomposition: not a permutation of V");
  TreeDecomposition td;
  const int n = g.size();
  if (n == 0) {
    td.bags.push_back(VertexSet{});
    return td;
  }

  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(pi.order()[static_cast<std::size_t>(i)])] = i;

  // Node i belongs to the i-th eliminated vertex.
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  td.bags.resize(static_cast<std::size_t>(n));
  VertexSet prefix;
  for (int i = 0; i < n; ++i) {
    const Vertex v = pi.order()[static_cast<std::size_t>(i)];
    const VertexSet witnesses = neighborhood(g, component_of(g, prefix.with(v), v));
    td.bags[static_cast<std::size_t>(i)] = witnesses.with(v);
    if (!witnesses.empty()) {
      int earliest = n;
      for (Vertex w : witnesses) earliest = std::min(earliest, pos[static_cast<std::size_t>(w)]);
      parent[static_cast<std::size_t>(i)] = earliest;
    } else if (i + 1 < n) {
      // Root of its own elimination tree; chaining to the next node keeps one tree overall.
      parent[static_cast<std::size_t>(i)] = i + 1;
    }
    prefix.insert(v);
  }

  // Contract edges whose endpoint bags are nested.
  std::vector<int> alive(static_cast<std::size_t>(n));
  std::iota(alive.begin(), alive.end(), 0);
  auto find = [&](int x) {
    while (alive[static_cast<std::size_t>(x)] != x) x = alive[static_cast<std::size_t>(x)];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    const int p = parent[static_cast<std::size_t>(i)];
    if (p < 0) continue;
    const int a = find(i);
    const int b = find(p);
    const VertexSet ba = td.bags[static_cast<std::size_t>(a)];
    const VertexSet bb = td.bags[static_cast<std::size_t>(b)];
    if (ba.subset_of(bb)) {
      alive[static_cast<std::size_t>(a)] = b;
    } else if (bb.subset_of(ba)) {
      alive[static_cast<std::size_t>(b)] = a;
    }
  }

  std::vector<int> id(static_cast<std::size_t>(n), -1);
  TreeDecomposition out;
  for (int i = 0; i < n; ++i) {
    if (find(i) == i) {
      id[static_cast<std::size_t>(i)] = static_cast<int>(out.bags.size());
      out.bags.push_back(td.bags[static_cast<std::size_t>(i)]);
    }
  }
  for (int i = 0; i < n; ++i) {
    const int p = parent[static_cast<std::size_t>(i)];
    if (p < 0) continue;
    const int a = id[static_cast<std::size_t>(find(i))];
    const int b = id[static_cast<std::size_t>(find(p))];
    if (a != b) out.tree_edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return out;
}

const char* to_string(TdViolation v) {
  switch (v) {
    case TdViolation::kNone: return "none";
    case TdViolation::kBadBag: return "bad-bag";
    case TdViolation::kVertexCoverage: return "vertex-coverage";
    case TdViolation::kEdgeCoverage: return "edge-coverage";
    case TdViolation::kNotATree: return "not-a-tree";
    case TdViolation::kNotConnected: return "subtree-connectivity";
  }
  return "unknown";
}

TdCheck validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  auto fail = [](TdViolation v, std::string detail) {
    TdCheck c;
    c.violation = v;
    c.detail = std::move(detail);
    return c;
  };
  const int nodes = static_cast<int>(td.bags.size());
  if (nodes == 0) return fail(TdViolation::kNotATree, "no nodes");

  VertexSet covered;
  for (VertexSet b : td.bags) {
    if (!b.subset_of(g.vertices())) return fail(TdViolation::kBadBag, "bag " + b.to_string());
    covered |= b;
  }
  if (covered != g.vertices()) {
    return fail(TdViolation::kVertexCoverage, "uncovered " + (g.vertices() - covered).to_string());
  }
  for (auto [u, v] : g.edges()) {
    const VertexSet e = VertexSet::single(u).with(v);
    const bool inside = std::any_of(td.bags.begin(), td.bags.end(), [&](VertexSet b) { return e.subset_of(b); });
    if (!inside) return fail(TdViolation::kEdgeCoverage, "edge " + std::to_string(u) + "-" + std::to_string(v));
  }

  // Tree: nodes-1 edges, valid endpoints, connected.
  if (static_cast<int>(td.tree_edges.size()) != nodes - 1) return fail(TdViolation::kNotATree, "edge count");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) return fail(TdViolation::kNotATree, "bad endpoint");
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  // Per-vertex connectivity by a search restricted to nodes holding the vertex; the same search
  // with no restriction checks tree connectivity.
  auto reach = [&](int start, auto&& keep) {
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (!seen[static_cast<std::size_t>(y)] && keep(y)) {
          seen[static_cast<std::size_t>(y)] = 1;
          ++count;
          stack.push_back(y);
        }
      }
    }
    return count;
  };
  if (reach(0, [](int) { return true; }) != nodes) return fail(TdViolation::kNotATree, "disconnected");
  for (Vertex v : g.vertices()) {
    int first_node = -1;
    int holders = 0;
    for (int i = 0; i < nodes; ++i) {
      if (td.bags[static_cast<std::size_t>(i)].contains(v)) {
        if (first_node < 0) first_node = i;
        ++holders;
      }
    }
    const int reached = reach(first_node, [&](int y) { return td.bags[static_cast<std::size_t>(y)].contains(v); });
    if (reached != holders) return fail(TdViolation::kNotConnected, "vertex " + std::to_string(v));
  }

  TdCheck ok;
  ok.ok = true;
  ok.width = td.width();
  return ok;
}

std::string serialize_td(const TreeDecomposition& td, int n) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

std::pair<TreeDecomposition, int> parse_td(std::string_view text) {
  TreeDecomposition td;
  int n = -1;
  long declared_bags = -1;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  auto to_int = [&](const std::string& tok) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError(line_no, "bad integer '" + tok + "'");
    return value;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "s") {
      if (tok.size() != 5 || tok[1] != "td") throw ParseError(line_no, "malformed solution line");
      declared_bags = to_int(tok[2]);
      n = static_cast<int>(to_int(tok[4]));
      if (declared_bags < 0 || n < 0 || n > kMaxVertices) throw ParseError(line_no, "bad solution header");
      td.bags.assign(static_cast<std::size_t>(declared_bags), VertexSet{});
      continue;
    }
    if (n < 0) throw ParseError(line_no, "content before solution line");
    if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError(line_no, "bag line without id");
      const long id = to_int(tok[1]);
      if (id < 1 || id > declared_bags) throw ParseError(line_no, "bag id out of range");
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const long v = to_int(tok[i]);
        if (v < 1 || v > n) throw ParseError(line_no, "bag vertex out of range");
        td.bags[static_cast<std::size_t>(id - 1)].insert(static_cast<Vertex>(v - 1));
      }
      continue;
    }
    if (tok.size() != 2) throw ParseError(line_no, "tree edge must have two endpoints");
    const long a = to_int(tok[0]);
    const long b = to_int(tok[1]);
    if (a < 1 || b < 1 || a > declared_bags || b > declared_bags) throw ParseError(line_no, "tree edge out of range");
    td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  if (n < 0) throw ParseError(line_no, "missing solution line");
  return {std::move(td), n};
}

}  // namespace qtw
