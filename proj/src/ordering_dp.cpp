#include "qtw/ordering_dp.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "qtw/combinatorics.hpp"

namespace qtw {

int WidthTable::at(VertexSet s) const {
  if (!covers(s)) throw std::out_of_range("WidthTable: set " + s.to_string() + " not covered");
  return width[compress(s, scope)];
}

Vertex WidthTable::last_vertex(VertexSet s) const {
  if (!covers(s)) throw std::out_of_range("WidthTable: set " + s.to_string() + " not covered");
  return last[compress(s, scope)];
}

int r_value(const Graph& g, const EliminationOrdering& pi, Vertex v) {
  if (pi.position(v) < 0) throw std::invalid_argument("r_value: vertex not in ordering");
  return q_value(g, pi.before(v), v);
}

Width ordering_width(const Graph& g, const EliminationOrdering& pi) {
  if (pi.members() != g.vertices()) throw std::invalid_argument("ordering_width: not a permutation of V");
  Width w = -1;
  VertexSet prefix;
  for (Vertex v : pi.order()) {
    w = std::max(w, q_value_unchecked(g, prefix, v));
    prefix.insert(v);
  }
  return w;
}

namespace {

// Fills one cell: TWR(L, S) = min over v in S of max(TWR(L, S - v), |Q(L + S - v, v)|).
// The component of v in G[L + S] determines Q, so each component is resolved once.
inline std::uint64_t fill_cell(const Graph& g, VertexSet prefix, VertexSet scope, const std::array<int, 64>& local,
                               std::uint64_t index, std::uint8_t* width, std::int8_t* last) {
  const VertexSet s = expand(index, scope);
  const VertexSet live = prefix | s;
  int best = 255;
  Vertex best_v = -1;
  std::uint64_t cells = 0;
  VertexSet todo = s;
  while (!todo.empty()) {
    const VertexSet comp = component_of(g, live, todo.first());
    const int q = neighborhood(g, comp).size();
    for (Vertex v : comp & s) {
      const int cand = std::max<int>(width[index & ~(std::uint64_t{1} << local[v])], q);
      ++cells;
      if (cand < best || (cand == best && v < best_v)) {
        best = cand;
        best_v = v;
      }
    }
    todo -= comp;
  }
  width[index] = static_cast<std::uint8_t>(best);
  last[index] = static_cast<std::int8_t>(best_v);
  return cells;
}

}  // namespace

WidthTable twr_table(const Graph& g, VertexSet prefix, VertexSet scope, const DpOptions& opts) {
  if (prefix.intersects(scope)) throw std::invalid_argument("twr_table: prefix and scope overlap");
  const int m = scope.size();
  if (m > 40) throw std::invalid_argument("twr_table: scope too large for a dense table");
  const std::size_t entries = std::size_t{1} << m;
  TableLease lease(opts.monitor, entries);

  WidthTable table;
  table.scope = scope;
  table.prefix = prefix;
  table.width.assign(entries, 0);
  table.last.assign(entries, -1);

  std::array<int, 64> local{};
  int idx = 0;
  for (Vertex v : scope) local[v] = idx++;

  std::uint8_t* width = table.width.data();
  std::int8_t* last = table.last.data();

  if (opts.kernel == DpKernel::kSerial || m < 4) {
    // Numeric order visits every S - v before S.
    for (std::uint64_t i = 1; i < entries; ++i) fill_cell(g, prefix, scope, local, i, width, last);
    return table;
  }

  for (int k = 1; k <= m; ++k) {
    const auto layer = static_cast<std::int64_t>(choose(m, k));
#pragma omp parallel
    {
      int threads = 1;
      int tid = 0;
#ifdef _OPENMP
      threads = omp_get_num_threads();
      tid = omp_get_thread_num();
#endif
      const std::int64_t lo = layer * tid / threads;
      const std::int64_t hi = layer * (tid + 1) / threads;
      if (lo < hi) {
        std::uint64_t x = unrank_colex(k, static_cast<std::uint64_t>(lo));
        for (std::int64_t r = lo; r < hi; ++r) {
          fill_cell(g, prefix, scope, local, x, width, last);
          if (r + 1 < hi) x = next_same_popcount(x);
        }
      }
    }
  }
  return table;
}

DpResult tw_dp(const Graph& g, VertexSet chi, const DpOptions& opts) {
  if (!chi.subset_of(g.vertices())) throw std::invalid_argument("tw_dp: chi is not a vertex subset");
  DpResult out;
  const VertexSet rest = g.vertices() - chi;
  out.table = twr_table(g, VertexSet{}, rest, opts);
  if (rest.empty()) {
    out.width = chi.size() - 1;
  } else {
    out.width = std::max<Width>(out.table.width.back(), chi.size() - 1);
  }
  return out;
}

Width twr_dp(const Graph& g, VertexSet prefix, VertexSet s, const DpOptions& opts) {
  if (prefix.intersects(s)) throw std::invalid_argument("twr_dp: L and S overlap");
  if (s.empty()) return 0;
  return twr_table(g, prefix, s, opts).width.back();
}

Width DncSolver::twr(VertexSet prefix, VertexSet s) {
  if (prefix.intersects(s)) throw std::invalid_argument("twr_dnc: L and S overlap");
  const Entry e = solve(prefix, s);
  counters_.q_evaluations += e.cost.q_evaluations;
  counters_.splits += e.cost.splits;
  return e.value;
}

DncSolver::Entry DncSolver::solve(VertexSet prefix, VertexSet s) {
  const int size = s.size();
  if (size == 0) return {0, {}};
  if (size == 1) return {q_value_unchecked(g_, prefix, s.first()), {1, 0}};

  const std::pair<std::uint64_t, std::uint64_t> key{prefix.bits(), s.bits()};
  if (opts_.memo) {
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }

  const int k = (size + 1) / 2;
  Entry best{255, {}};
  for_each_subset_of_size(s, k, [&](VertexSet head) {
    ++best.cost.splits;
    const Entry left = solve(prefix, head);
    best.cost.q_evaluations += left.cost.q_evaluations;
    best.cost.splits += left.cost.splits;
    if (opts_.prune && left.value >= best.value) return;
    const Entry right = solve(prefix | head, s - head);
    best.cost.q_evaluations += right.cost.q_evaluations;
    best.cost.splits += right.cost.splits;
    best.value = std::min(best.value, std::max(left.value, right.value));
  });

  if (opts_.memo && (opts_.memo_limit == 0 || memo_.size() < opts_.memo_limit)) memo_.emplace(key, best);
  return best;
}

Width twr_dnc(const Graph& g, VertexSet prefix, VertexSet s) {
  DncSolver solver(g);
  return solver.twr(prefix, s);
}

Width tw_fixed_bag(const Graph& g, VertexSet chi, const FixedBagOptions& opts) {
  if (!chi.subset_of(g.vertices())) throw std::invalid_argument("tw_fixed_bag: chi is not a vertex subset");
  const VertexSet rest = g.vertices() - chi;
  if (rest.empty()) return chi.size() - 1;
  Width inner = 0;
  if (opts.inner == InnerSolver::kDp) {
    inner = twr_dp(g, VertexSet{}, rest, opts.dp);
    if (opts.dp_cells) *opts.dp_cells += (std::uint64_t{1} << rest.size()) * rest.size() / 2;
  } else {
    DncSolver solver(g, opts.dnc);
    inner = solver.twr(VertexSet{}, rest);
    if (opts.dnc_counters) {
      opts.dnc_counters->q_evaluations += solver.counters().q_evaluations;
      opts.dnc_counters->splits += solver.counters().splits;
    }
  }
  return std::max<Width>(inner, chi.size() - 1);
}

Width tw_split_components(const Graph& g, VertexSet chi, const FixedBagOptions& opts, Width give_up_at) {
  if (!chi.subset_of(g.vertices())) throw std::invalid_argument("tw_split_components: chi is not a vertex subset");
  Width best = chi.size() - 1;
  const auto comps = connected_components(g, g.vertices() - chi);
  for (VertexSet comp : comps) {
    if (give_up_at >= -1 && best >= give_up_at) return best;
    const InducedSubgraph sub = induced_subgraph(g, comp | chi);
    best = std::max(best, tw_fixed_bag(sub.graph, sub.project(chi), opts));
  }
  return best;
}

EliminationOrdering reconstruct_ordering(const WidthTable& table, const Graph& g, VertexSet chi) {
  const VertexSet rest = g.vertices() - chi;
  if (!table.complete() || table.scope != rest || !table.prefix.empty()) {
    throw std::invalid_argument("reconstruct_ordering: table does not cover V - chi");
  }
  std::vector<Vertex> order(static_cast<std::size_t>(g.size()));
  int pos = rest.size();
  VertexSet s = rest;
  while (!s.empty()) {
    const Vertex v = table.last_vertex(s);
    if (v < 0 || !s.contains(v)) throw std::invalid_argument("reconstruct_ordering: corrupt argmin entry");
    order[static_cast<std::size_t>(--pos)] = v;
    s.erase(v);
  }
  pos = rest.size();
  for (Vertex v : chi) order[static_cast<std::size_t>(pos++)] = v;
  return EliminationOrdering(std::move(order), g.size());
}

EliminationOrdering fixed_bag_ordering(const Graph& g, VertexSet chi, const DpOptions& opts) {
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(g.size()));
  for (VertexSet comp : connected_components(g, g.vertices() - chi)) {
    const InducedSubgraph sub = induced_subgraph(g, comp | chi);
    const VertexSet local_chi = sub.project(chi);
    const DpResult dp = tw_dp(sub.graph, local_chi, opts);
    const EliminationOrdering local = reconstruct_ordering(dp.table, sub.graph, local_chi);
    for (Vertex v : local.order()) {
      if (!local_chi.contains(v)) order.push_back(sub.to_parent[v]);
    }
  }
  for (Vertex v : chi) order.push_back(v);
  return EliminationOrdering(std::move(order), g.size());
}

}  // namespace qtw
