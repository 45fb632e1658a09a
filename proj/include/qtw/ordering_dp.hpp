#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qtw/graph.hpp"
#include "qtw/parallel.hpp"

namespace qtw {

/// Width of an elimination prefix problem. -1 only for the empty graph.
using Width = int;

enum class InnerSolver { kDp, kDnc };

/// Dense table of TWR_G(L, S) for every S inside `scope`, indexed by compress(S, scope).
struct WidthTable {
  VertexSet scope;
  VertexSet prefix;  // L; empty for plain TW_G
  std::vector<std::uint8_t> width;
  /// Vertex placed last in an optimal ordering of S (original index); -1 for S = {}.
  std::vector<std::int8_t> last;

  bool complete() const { return width.size() == (std::size_t{1} << scope.size()); }
  std::size_t entries() const { return width.size(); }
  bool covers(VertexSet s) const { return complete() && s.subset_of(scope); }
  /// Throws std::out_of_range if S is not covered.
  int at(VertexSet s) const;
  Vertex last_vertex(VertexSet s) const;
};

/// R_pi(v) = |Q_G(pi_<v, v)|.
int r_value(const Graph& g, const EliminationOrdering& pi, Vertex v);

/// max_v R_pi(v); pi must permute all of V. Returns -1 on the empty graph.
Width ordering_width(const Graph& g, const EliminationOrdering& pi);

enum class DpKernel {
  kSerial,    // numeric sweep over the hypercube; reference implementation
  kParallel,  // popcount layers, each layer split across OpenMP threads
};

struct DpOptions {
  DpKernel kernel = DpKernel::kSerial;
  /// Optional peak-memory instrumentation.
  TableMonitor* monitor = nullptr;
};

struct DpResult {
  Width width = -1;  // tw(G, chi)
  WidthTable table;  // TW_G(S) for all S within V - chi
};

/// Builds the TWR_G(prefix, T) table for all T within `scope` (prefix and scope disjoint).
WidthTable twr_table(const Graph& g, VertexSet prefix, VertexSet scope, const DpOptions& opts = {});

/// tw(G, chi) = max(TW_G(V - chi), |chi| - 1) via the subset DP, plus the filled table.
DpResult tw_dp(const Graph& g, VertexSet chi, const DpOptions& opts = {});

/// TWR_G(L, S) by the one-vertex-extension DP over subsets of S. Throws if L and S overlap.
Width twr_dp(const Graph& g, VertexSet prefix, VertexSet s, const DpOptions& opts = {});

struct DncOptions {
  /// Skip the second half of a split when the first half already meets the running best.
  bool prune = true;
  /// Cache (L, S) -> value. Off by default: the divide & conquer is meant to run in polynomial space.
  bool memo = false;
  /// Maximum cached entries when memo is on; 0 means unbounded.
  std::size_t memo_limit = 0;
};

struct DncCounters {
  /// Evaluations of |Q| (the leaves of the recursion), counted as if nothing were cached.
  std::uint64_t q_evaluations = 0;
  /// Split candidates S' examined, counted as if nothing were cached.
  std::uint64_t splits = 0;

  std::uint64_t total() const { return q_evaluations + splits; }
};

/// Recursive halving for TWR_G(L, S) with k = ceil(|S|/2).
class DncSolver {
 public:
  explicit DncSolver(const Graph& g, DncOptions opts = {}) : g_(g), opts_(opts) {}

  /// Throws std::invalid_argument if L and S overlap.
  Width twr(VertexSet prefix, VertexSet s);

  const DncCounters& counters() const { return counters_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Entry {
    Width value;
    DncCounters cost;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
  };

  Entry solve(VertexSet prefix, VertexSet s);

  const Graph& g_;
  DncOptions opts_;
  DncCounters counters_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Entry, KeyHash> memo_;
};

/// Convenience wrapper: TWR_G(L, S) by divide & conquer with default options.
Width twr_dnc(const Graph& g, VertexSet prefix, VertexSet s);

struct FixedBagOptions {
  InnerSolver inner = InnerSolver::kDp;
  DpOptions dp;
  DncOptions dnc;
  /// Accumulates D&C work when inner == kDnc.
  DncCounters* dnc_counters = nullptr;
  /// Accumulates DP cell updates when inner == kDp.
  std::uint64_t* dp_cells = nullptr;
};

/// max(TW_G(V - chi), |chi| - 1) with the chosen inner solver.
Width tw_fixed_bag(const Graph& g, VertexSet chi, const FixedBagOptions& opts = {});

/// max over components C of G[V - chi] of tw(G[C + chi], chi), each solved on the induced subgraph.
/// When `give_up_at` is set, returns as soon as a component reaches that width.
Width tw_split_components(const Graph& g, VertexSet chi, const FixedBagOptions& opts = {},
                          Width give_up_at = -2);

/// Backtracks the DP argmins: an ordering placing V - chi first, then chi by increasing index.
/// Throws std::invalid_argument if the table does not cover exactly V - chi.
EliminationOrdering reconstruct_ordering(const WidthTable& table, const Graph& g, VertexSet chi);

/// An ordering of width at most tw(G, chi) built component by component; each component of
/// G[V - chi] is ordered by its own DP, followed by chi. Optimal when chi is an optimal bag.
EliminationOrdering fixed_bag_ordering(const Graph& g, VertexSet chi, const DpOptions& opts = {});

}  // namespace qtw
