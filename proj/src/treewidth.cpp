#include "qtw/treewidth.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qtw {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "dp") return Algorithm::kDp;
  if (name == "dnc") return Algorithm::kDnc;
  if (name == "fv-poly") return Algorithm::kFvPoly;
  if (name == "tradeoff") return Algorithm::kTradeoff;
  if (name == "q-poly") return Algorithm::kQPoly;
  if (name == "q-dp") return Algorithm::kQDp;
  if (name == "q-main") return Algorithm::kQMain;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kDp: return "dp";
    case Algorithm::kDnc: return "dnc";
    case Algorithm::kFvPoly: return "fv-poly";
    case Algorithm::kTradeoff: return "tradeoff";
    case Algorithm::kQPoly: return "q-poly";
    case Algorithm::kQDp: return "q-dp";
    case Algorithm::kQMain: return "q-main";
  }
  return "unknown";
}

bool is_quantum(Algorithm a) {
  return a == Algorithm::kQPoly || a == Algorithm::kQDp || a == Algorithm::kQMain;
}

TreewidthResult treewidth(const Graph& g, Algorithm algorithm, const TreewidthConfig& cfg) {
  TreewidthResult out;
  out.algorithm = algorithm;
  const int n = g.size();
  if (n <= 1 || n <= cfg.solve.fallback_threshold) {
    out.width = n == 0 ? -1 : tw_dp(g, VertexSet{}).width;
    out.fallback = true;
    return out;
  }

  switch (algorithm) {
    case Algorithm::kDp:
      out.width = tw_dp(g, VertexSet{}, DpOptions{cfg.solve.dp_kernel, nullptr}).width;
      break;
    case Algorithm::kDnc: {
      DncSolver solver(g, cfg.solve.dnc);
      Width w = 0;
      for (VertexSet comp : connected_components(g, g.vertices())) w = std::max(w, solver.twr(VertexSet{}, comp));
      out.width = w;
      break;
    }
    case Algorithm::kFvPoly: {
      SolveConfig sc = cfg.solve;
      if (cfg.beta) sc.beta = *cfg.beta;
      const SolveResult r = solve_poly_space(g, sc);
      out.width = r.width;
      out.bag = r.best_bag;
      break;
    }
    case Algorithm::kTradeoff: {
      const TradeoffResult r = solve_tradeoff(g, cfg.solve);
      out.width = r.width;
      out.bag = r.best_bag;
      out.peak_table_entries = r.peak_table_entries;
      break;
    }
    case Algorithm::kQPoly: {
      CostLedger ledger;
      VertexSet bag;
      out.width = quantum_poly_space(g, cfg.beta.value_or(kDefaultBeta), ledger, &bag);
      out.bag = bag;
      out.ledger = ledger;
      break;
    }
    case Algorithm::kQDp: {
      CostLedger ledger;
      VertexSet bag;
      out.width = improved_algorithm(g, cfg.alpha.value_or(0.0), cfg.beta.value_or(0.3755), cfg.layers, ledger, &bag);
      out.bag = bag;
      out.ledger = ledger;
      break;
    }
    case Algorithm::kQMain: {
      CostLedger ledger;
      VertexSet bag;
      out.width =
          improved_algorithm(g, cfg.alpha.value_or(0.15447), cfg.beta.value_or(0.38640), cfg.layers, ledger, &bag);
      out.bag = bag;
      out.ledger = ledger;
      break;
    }
  }
  return out;
}

EliminationOrdering ordering_for(const Graph& g, const TreewidthResult& result) {
  if (result.bag) return fixed_bag_ordering(g, *result.bag);
  const DpResult dp = tw_dp(g, VertexSet{});
  return reconstruct_ordering(dp.table, g, VertexSet{});
}

}  // namespace qtw
