#pragma once

#include <optional>
#include <string_view>

#include "qtw/decomposition.hpp"
#include "qtw/fv_solver.hpp"
#include "qtw/graph.hpp"
#include "qtw/quantum_model.hpp"

namespace qtw {

enum class Algorithm { kDp, kDnc, kFvPoly, kTradeoff, kQPoly, kQDp, kQMain };

/// dp, dnc, fv-poly, tradeoff, q-poly, q-dp, q-main. Throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view name);
const char* to_string(Algorithm a);
bool is_quantum(Algorithm a);

struct TreewidthConfig {
  SolveConfig solve;  // beta, inner solver, threads, fallback threshold for the classical solvers
  /// Overrides of the per-algorithm defaults (q-poly 0.38685, q-dp 0 / 0.3755, q-main 0.15447 / 0.38640).
  std::optional<double> alpha;
  std::optional<double> beta;
  int layers = 3;
};

struct TreewidthResult {
  Width width = -1;
  Algorithm algorithm = Algorithm::kDp;
  /// Set when the graph was small enough to go straight to the subset DP.
  bool fallback = false;
  /// A bag with tw(G, bag) = width, when the solver reports one.
  std::optional<VertexSet> bag;
  /// Present iff a quantum-model solver ran.
  std::optional<CostLedger> ledger;
  /// Peak simultaneously stored DP entries (tradeoff only).
  std::size_t peak_table_entries = 0;
};

/// Routes to the chosen solver. n = 0 gives -1, n = 1 gives 0, and n <= fallback_threshold is
/// solved by the subset DP directly.
TreewidthResult treewidth(const Graph& g, Algorithm algorithm, const TreewidthConfig& cfg = {});

/// An elimination ordering of width `result.width`, built from the reported bag when there is one
/// and from the full subset DP otherwise.
EliminationOrdering ordering_for(const Graph& g, const TreewidthResult& result);

}  // namespace qtw
