#pragma once

#include <cstddef>
#include <cstdint>

#include "qtw/graph.hpp"
#include "qtw/ordering_dp.hpp"

namespace qtw {

/// Balance point of the two stages for the polynomial-space algorithm.
inline constexpr double kDefaultBeta = 0.38685;

struct SolveConfig {
  double beta = kDefaultBeta;  // in [0, 1/2]
  InnerSolver inner = InnerSolver::kDnc;
  /// The dispatcher uses plain tw_dp at or below this vertex count.
  int fallback_threshold = 6;
  /// Skip candidates that cannot beat the best width found so far. Never changes the result.
  bool prune = true;
  /// OpenMP threads for candidate evaluation; 1 keeps the run fully deterministic.
  int threads = 1;
  DncOptions dnc;
  DpKernel dp_kernel = DpKernel::kSerial;

  /// Throws std::invalid_argument when beta is outside [0, 1/2].
  void validate() const;
};

struct SolveStats {
  std::uint64_t stage1_candidates = 0;
  std::uint64_t stage2_candidates = 0;
  /// Candidate visits plus inner-solver work (D&C q-evaluations and splits, or DP cell updates).
  std::uint64_t classical_steps = 0;
  /// Peak DP entries alive at once (only populated for the DP inner solver).
  std::size_t peak_table_entries = 0;
};

struct SolveResult {
  Width width = -1;
  /// A bag attaining the width: tw(G, best_bag) == width.
  VertexSet best_bag;
  SolveStats stats;
};

/// Two-stage fixed-bag search: bags with a small component, then neighbourhoods of connected sets.
/// Disconnected graphs are solved one component at a time.
SolveResult solve_poly_space(const Graph& g, const SolveConfig& cfg = {});

struct TradeoffResult {
  Width width = -1;
  std::size_t peak_table_entries = 0;
  VertexSet best_bag;
  SolveStats stats;
};

/// solve_poly_space with the DP inner solver and beta = 1/2, instrumented for peak table size.
TradeoffResult solve_tradeoff(const Graph& g, const SolveConfig& base = {});

}  // namespace qtw
