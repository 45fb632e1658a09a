// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "qtw/fv_solver.hpp"
#include "qtw/ordering_dp.hpp"

namespace {

qtw::Graph gnp(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  qtw::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

void run_dp(benchmark::State& state, qtw::DpKernel kernel) {
  const qtw::Graph g = gnp(static_cast<int>(state.range(0)), 0.3, 17);
  qtw::DpOptions opts;
  opts.kernel = kernel;
  for (auto _ : state) benchmark::DoNotOptimize(qtw::tw_dp(g, qtw::VertexSet{}, opts).width);
  state.SetComplexityN(state.range(0));
}

void BM_DpSerial(benchmark::State& state) { run_dp(state, qtw::DpKernel::kSerial); }
void BM_DpParallel(benchmark::State& state) { run_dp(state, qtw::DpKernel::kParallel); }

void run_fv(benchmark::State& state, int threads) {
  const qtw::Graph g = gnp(static_cast<int>(state.range(0)), 0.3, 29);
  qtw::SolveConfig cfg;
  cfg.threads = threads;
  for (auto _ : state) benchmark::DoNotOptimize(qtw::solve_poly_space(g, cfg).width);
}

void BM_FvSerial(benchmark::State& state) { run_fv(state, 1); }
void BM_FvParallel(benchmark::State& state) { run_fv(state, 4); }

}  // namespace

BENCHMARK(BM_DpSerial)->DenseRange(12, 18, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DpParallel)->DenseRange(12, 18, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FvSerial)->DenseRange(10, 14, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FvParallel)->DenseRange(10, 14, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
