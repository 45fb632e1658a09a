#include "qtw/fv_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "qtw/combinatorics.hpp"
#include "qtw/enumeration.hpp"
#include "qtw/parallel.hpp"

namespace qtw {

void SolveConfig::validate() const {
  if (!(beta >= 0.0 && beta <= 0.5)) throw std::invalid_argument("beta must lie in [0, 1/2]");
  if (threads < 1) throw std::invalid_argument("threads must be positive");
}

namespace {

// floor/ceil of x*n with a small tolerance so 0.5 * 8 stays exactly 4.
int floor_frac(double x, int n) { return static_cast<int>(std::floor(x * n + 1e-9)); }
int ceil_frac(double x, int n) { return static_cast<int>(std::ceil(x * n - 1e-9)); }

struct Best {
  Width width = std::numeric_limits<Width>::max();
  // Evaluation order key (stage, c or s, p or c, rank) for deterministic tie-breaking.
  std::tuple<int, int, int, std::uint64_t> key{};
  VertexSet bag;

  void offer(Width w, std::tuple<int, int, int, std::uint64_t> k, VertexSet b) {
    if (w < width || (w == width && k < key)) {
      width = w;
      key = k;
      bag = b;
    }
  }
};

class ConnectedSolver {
 public:
  ConnectedSolver(const Graph& g, const SolveConfig& cfg, TableMonitor* monitor)
      : g_(g), cfg_(cfg), monitor_(monitor) {}

  SolveResult run() {
    const int n = g_.size();
    global_best_.store(n);  // no width exceeds n - 1
    Best best;

    // Stage 1: bags omega of size p whose removal leaves a component of exactly c vertices.
    const int c1_max = std::min(floor_frac(cfg_.beta, n), n);
    for (int c = 0; c <= c1_max; ++c) {
      for (int p = 1; p <= n - c; ++p) {
        if (cfg_.prune && p - 1 >= global_best_.load()) break;
        stage1_layer(c, p, best);
      }
    }

    // Stage 2: separators S = N(C) for connected C with |C| = c, |S| = s.
    const int s_max = floor_frac(1.0 - 2.0 * cfg_.beta, n);
    const int c_lo = std::max(1, ceil_frac(cfg_.beta, n));
    for (int s = 1; s <= s_max; ++s) {
      if (cfg_.prune && s - 1 >= global_best_.load()) break;
      const int c_hi = floor_frac(1.0 - cfg_.beta, n) - s;
      for (int c = c_lo; c <= c_hi; ++c) stage2_layer(s, c, best);
    }

    SolveResult out;
    out.width = best.width;
    out.best_bag = best.bag;
    out.stats.stage1_candidates = stage1_.load();
    out.stats.stage2_candidates = stage2_.load();
    out.stats.classical_steps = steps_.load();
    return out;
  }

 private:
  struct Worker {
    std::optional<DncSolver> dnc;
    std::uint64_t steps = 0;
  };

  Worker make_worker() const {
    Worker w;
    if (cfg_.inner == InnerSolver::kDnc) w.dnc.emplace(g_, cfg_.dnc);
    return w;
  }

  // TW_G(comp) for a component of G - bag; equal to the value on G[comp + bag].
  Width component_width(VertexSet comp, Worker& worker) const {
    if (worker.dnc) {
      const DncCounters before = worker.dnc->counters();
      const Width w = worker.dnc->twr(VertexSet{}, comp);
      worker.steps += worker.dnc->counters().total() - before.total();
      return w;
    }
    DpOptions dp;
    dp.kernel = cfg_.dp_kernel;
    dp.monitor = monitor_;
    worker.steps += (std::uint64_t{1} << comp.size()) * static_cast<std::uint64_t>(comp.size()) / 2;
    return twr_dp(g_, VertexSet{}, comp, dp);
  }

  // tw(G, bag) as the maximum over components of G - bag. Returns a width only if it is exact
  // and below `threshold` (when pruning).
  std::optional<Width> evaluate_bag(VertexSet bag, Width threshold, Worker& worker) const {
    Width w = bag.size() - 1;
    for (VertexSet comp : connected_components(g_, g_.vertices() - bag)) {
      if (cfg_.prune && w >= threshold) return std::nullopt;
      w = std::max(w, component_width(comp, worker));
    }
    if (cfg_.prune && w >= threshold) return std::nullopt;
    return w;
  }

  void publish(Width w) {
    Width seen = global_best_.load();
    while (w < seen && !global_best_.compare_exchange_weak(seen, w)) {
    }
  }

  void stage1_layer(int c, int p, Best& best) {
    const int n = g_.size();
    const auto count = static_cast<std::int64_t>(choose(n, p));
    std::vector<Best> local(static_cast<std::size_t>(cfg_.threads));
#pragma omp parallel num_threads(cfg_.threads)
    {
      const int tid = current_thread();
      int threads = 1;
#ifdef _OPENMP
      threads = omp_get_num_threads();
#endif
      const std::int64_t lo = count * tid / threads;
      const std::int64_t hi = count * (tid + 1) / threads;
      Worker worker = make_worker();
      std::uint64_t seen = 0;
      Best& mine = local[static_cast<std::size_t>(tid)];
      if (lo < hi) {
        std::uint64_t x = unrank_colex(p, static_cast<std::uint64_t>(lo));
        for (std::int64_t r = lo; r < hi; ++r, x = next_same_popcount(x)) {
          const VertexSet omega = expand(x, g_.vertices());
          ++worker.steps;
          if (!has_component_of_size(g_, omega, c)) continue;
          ++seen;
          const Width threshold = global_best_.load();
          if (cfg_.prune && p - 1 >= threshold) continue;
          if (auto w = evaluate_bag(omega, threshold, worker)) {
            mine.offer(*w, {1, c, p, static_cast<std::uint64_t>(r)}, omega);
            publish(*w);
          }
        }
      }
      steps_ += worker.steps;
      stage1_ += seen;
    }
    for (const Best& b : local) best.offer(b.width, b.key, b.bag);
  }

  void stage2_layer(int s, int c, Best& best) {
    const int n = g_.size();
    const auto bound = count_bound(c - 1, s).value;
    std::vector<Best> local(static_cast<std::size_t>(cfg_.threads));
    std::vector<Worker> workers;
    for (int t = 0; t < cfg_.threads; ++t) workers.push_back(make_worker());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg_.threads)
    for (int anchor = 0; anchor < n; ++anchor) {
      Worker& worker = workers[static_cast<std::size_t>(current_thread())];
      std::uint64_t seen = 0;
      Best& mine = local[static_cast<std::size_t>(current_thread())];
      ConnectedSetEnumerator it(g_, ConnectedSetQuery{anchor, c - 1, s});
      std::uint64_t ordinal = 0;
      while (auto comp = it.next()) {
        ++worker.steps;
        ++ordinal;
        // Each set is listed once per member; keep the copy anchored at its smallest vertex.
        if (comp->first() != anchor) continue;
        ++seen;
        const Width threshold = global_best_.load();
        if (cfg_.prune && s - 1 >= threshold) continue;
        // tw(G, N(C)) is the larger of the two sides, i.e. the maximum over all components.
        if (auto w = evaluate_bag(neighborhood(g_, *comp), threshold, worker)) {
          mine.offer(*w, {2, s, c, static_cast<std::uint64_t>(anchor) * (bound + 1) + ordinal},
                     neighborhood(g_, *comp));
          publish(*w);
        }
      }
      stage2_ += seen;
    }
    for (Worker& w : workers) steps_ += std::exchange(w.steps, 0);
    for (const Best& b : local) best.offer(b.width, b.key, b.bag);
  }

  const Graph& g_;
  const SolveConfig& cfg_;
  TableMonitor* monitor_;
  std::atomic<Width> global_best_{0};
  std::atomic<std::uint64_t> steps_{0};
  std::atomic<std::uint64_t> stage1_{0};
  std::atomic<std::uint64_t> stage2_{0};
};

SolveResult solve_with_monitor(const Graph& g, const SolveConfig& cfg, TableMonitor* monitor) {
  cfg.validate();
  SolveResult out;
  if (g.size() == 0) {
    out.width = -1;
    return out;
  }
  // Treewidth is the maximum over connected components; the bag search assumes a connected graph.
  out.width = 0;
  for (VertexSet comp : connected_components(g, g.vertices())) {
    const InducedSubgraph sub = induced_subgraph(g, comp);
    const SolveResult part = ConnectedSolver(sub.graph, cfg, monitor).run();
    if (part.width >= out.width) {
      out.width = part.width;
      out.best_bag = sub.lift(part.best_bag);
    }
    out.stats.stage1_candidates += part.stats.stage1_candidates;
    out.stats.stage2_candidates += part.stats.stage2_candidates;
    out.stats.classical_steps += part.stats.classical_steps;
  }
  if (monitor) out.stats.peak_table_entries = monitor->peak();
  return out;
}

}  // namespace

SolveResult solve_poly_space(const Graph& g, const SolveConfig& cfg) {
  TableMonitor monitor;
  return solve_with_monitor(g, cfg, cfg.inner == InnerSolver::kDp ? &monitor : nullptr);
}

TradeoffResult solve_tradeoff(const Graph& g, const SolveConfig& base) {
  SolveConfig cfg = base;
  cfg.inner = InnerSolver::kDp;
  cfg.beta = 0.5;
  TableMonitor monitor;
  const SolveResult r = solve_with_monitor(g, cfg, &monitor);
  TradeoffResult out;
  out.width = r.width;
  out.best_bag = r.best_bag;
  out.stats = r.stats;
  out.peak_table_entries = monitor.peak();
  return out;
}

}  // namespace qtw
