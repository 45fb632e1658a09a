#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qtw/fv_solver.hpp"
#include "qtw/treewidth.hpp"

using namespace qtw;
using namespace qtw::testing;

TEST_CASE("solve_poly_space on named graphs") {
  CHECK(solve_poly_space(complete_graph(6)).width == 5);
  CHECK(solve_poly_space(grid_graph(3, 3)).width == 3);
  CHECK(solve_poly_space(petersen_graph()).width == 4);
  CHECK(solve_poly_space(Graph(0)).width == -1);
  CHECK(solve_poly_space(Graph(1)).width == 0);
}

TEST_CASE("solve_poly_space matches tw_dp for every inner solver, beta and pruning mode") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 60; ++i) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Graph g = random_graph(n, 0.2 + 0.15 * (i % 5), rng());
    const Width want = tw_dp(g, VertexSet{}).width;
    for (double beta : {0.0, 0.25, kDefaultBeta, 0.5})
      for (InnerSolver inner : {InnerSolver::kDp, InnerSolver::kDnc})
        for (bool prune : {true, false}) {
          SolveConfig cfg;
          cfg.beta = beta;
          cfg.inner = inner;
          cfg.prune = prune;
          const SolveResult r = solve_poly_space(g, cfg);
          CHECK(r.width == want);
          CHECK(tw_fixed_bag(g, r.best_bag) == want);
        }
  }
}

TEST_CASE("threaded candidate evaluation gives the same answer") {
  const Graph g = random_graph(11, 0.4, 5);
  SolveConfig one;
  SolveConfig four;
  four.threads = 4;
  four.dp_kernel = DpKernel::kParallel;
  const SolveResult a = solve_poly_space(g, one);
  const SolveResult b = solve_poly_space(g, four);
  CHECK(a.width == b.width);
  CHECK(a.best_bag == b.best_bag);
}

TEST_CASE("solve_tradeoff width and memory") {
  for (int n = 2; n <= 9; ++n) CHECK(solve_tradeoff(complete_graph(n)).width == n - 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(8, 0.45, seed);
    const TradeoffResult r = solve_tradeoff(g);
    CHECK(r.width == tw_dp(g, VertexSet{}).width);
    CHECK(r.peak_table_entries <= 64u * 16u);
  }
}

TEST_CASE("config validation") {
  SolveConfig bad;
  bad.beta = 0.6;
  CHECK_THROWS_AS(solve_poly_space(path_graph(3), bad), std::invalid_argument);
  bad.beta = 0.3;
  bad.threads = 0;
  CHECK_THROWS_AS(solve_poly_space(path_graph(3), bad), std::invalid_argument);
}

TEST_CASE("treewidth router") {
  CHECK(treewidth(Graph(0), Algorithm::kFvPoly).width == -1);
  CHECK(treewidth(Graph(1), Algorithm::kQMain).width == 0);
  for (const char* name : {"dp", "dnc", "fv-poly", "tradeoff", "q-poly", "q-dp", "q-main"}) {
    const Algorithm a = parse_algorithm(name);
    CHECK(std::string(to_string(a)) == name);
    const TreewidthResult r = treewidth(petersen_graph(), a);
    CHECK(r.width == 4);
    CHECK(r.ledger.has_value() == is_quantum(a));
    CHECK(ordering_width(petersen_graph(), ordering_for(petersen_graph(), r)) == 4);
    CHECK(treewidth(complete_graph(5), a).width == 4);
  }
  CHECK_THROWS_AS(parse_algorithm("bogus"), std::invalid_argument);
}
