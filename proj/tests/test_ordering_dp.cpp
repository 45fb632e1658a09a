#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qtw/decomposition.hpp"
#include "qtw/graph_io.hpp"
#include "qtw/ordering_dp.hpp"

using namespace qtw;
using namespace qtw::testing;

namespace {

EliminationOrdering ord(std::vector<Vertex> v, int n) { return EliminationOrdering(std::move(v), n); }

EliminationOrdering identity(int n) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return ord(v, n);
}

}  // namespace

TEST_CASE("r_value and ordering_width on small cases") {
  const Graph k5 = complete_graph(5);
  const EliminationOrdering pi = ord({3, 1, 4, 0, 2}, 5);
  for (int i = 0; i < 5; ++i) CHECK(r_value(k5, pi, pi.order()[static_cast<std::size_t>(i)]) == 5 - 1 - i);
  CHECK(ordering_width(complete_graph(4), identity(4)) == 3);

  CHECK(r_value(path_graph(4), identity(4), 0) == 1);
  CHECK(ordering_width(path_graph(4), identity(4)) == 1);

  const Graph c4 = cycle_graph(4);
  const EliminationOrdering c4_pi = ord({0, 2, 1, 3}, 4);
  // R by vertex: 2, 1, 2, 0
  CHECK(r_value(c4, c4_pi, 0) == 2);
  CHECK(r_value(c4, c4_pi, 1) == 1);
  CHECK(r_value(c4, c4_pi, 2) == 2);
  CHECK(r_value(c4, c4_pi, 3) == 0);
  CHECK(ordering_width(c4, c4_pi) == 2);
}

TEST_CASE("ordering_width against BFS oracle on random orders") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Graph g = random_graph(9, 0.35, rng());
    std::vector<Vertex> order(9);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(ordering_width(g, ord(order, 9)) == brute_ordering_width(g, order));
  }
}

TEST_CASE("tw_dp on named graphs") {
  for (int n = 1; n <= 9; ++n) CHECK(tw_dp(complete_graph(n), VertexSet{}).width == n - 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(tw_dp(random_tree(12, seed), VertexSet{}).width == 1);
  CHECK(tw_dp(petersen_graph(), VertexSet{}).width == 4);
  CHECK(tw_dp(Graph(0), VertexSet{}).width == -1);
}

TEST_CASE("tw_dp equals the permutation oracle on all graphs with 5 vertices") {
  for (const Graph& g : all_labelled_graphs(5)) CHECK(tw_dp(g, VertexSet{}).width == brute_treewidth(g));
}

TEST_CASE("parallel and serial kernels fill identical tables") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = random_graph(12, 0.3, seed);
    const VertexSet prefix = vs({0, 1});
    const VertexSet scope = g.vertices() - prefix;
    const WidthTable a = twr_table(g, prefix, scope, {DpKernel::kSerial, nullptr});
    const WidthTable b = twr_table(g, prefix, scope, {DpKernel::kParallel, nullptr});
    CHECK(a.width == b.width);
  }
}

TEST_CASE("width table entries match permutation search") {
  const Graph g = random_graph(10, 0.4, 99);
  const WidthTable t = tw_dp(g, VertexSet{}).table;
  CHECK(t.at(VertexSet{}) == 0);
  for (std::uint64_t bits = 1; bits < (1u << 10); ++bits) {
    const VertexSet s(bits);
    if (s.size() <= 5) CHECK(t.at(s) == brute_twr(g, VertexSet{}, s));
  }
  // Not monotone under inclusion: a lone vertex pays its degree, but eliminating a neighbour
  // first absorbs that neighbour.
  CHECK(t.at(vs({4})) == 5);
  CHECK(t.at(vs({0, 4})) == 4);
}

TEST_CASE("twr_dp base cases and oracle") {
  const Graph p4 = path_graph(4);
  CHECK(twr_dp(p4, vs({0}), VertexSet{}) == 0);
  CHECK(twr_dp(p4, vs({0}), vs({1})) == 1);
  CHECK(twr_dp(p4, vs({1}), vs({2})) == 2);
  CHECK_THROWS(twr_dp(p4, vs({0}), vs({0, 1})));
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const Graph g = random_graph(8, 0.4, rng());
    const VertexSet prefix(rng() & 0xff);
    const VertexSet s = VertexSet(rng() & 0xff) - prefix;
    if (s.size() > 6) continue;
    CHECK(twr_dp(g, prefix, s) == brute_twr(g, prefix, s));
  }
  const Graph g = random_graph(9, 0.5, 4);
  const WidthTable full = tw_dp(g, VertexSet{}).table;
  for (std::uint64_t bits : {0x1ull, 0x33ull, 0x1f0ull, 0x1ffull}) CHECK(twr_dp(g, VertexSet{}, VertexSet(bits)) == full.at(VertexSet(bits)));
}

TEST_CASE("divide and conquer agrees with the DP") {
  const Graph p4 = path_graph(4);
  CHECK(twr_dnc(p4, vs({0}), VertexSet{}) == 0);
  CHECK(twr_dnc(p4, vs({0}), vs({1})) == q_value(p4, vs({0}), 1));
  for (int n = 1; n <= 5; ++n)
    for (const Graph& g : connected_graphs_up_to_iso(n)) CHECK(twr_dnc(g, VertexSet{}, g.vertices()) == tw_dp(g, VertexSet{}).width);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 40; ++i) {
    const Graph g = random_graph(8, 0.45, rng());
    const VertexSet prefix(rng() & 0x0f);
    const VertexSet s = g.vertices() - prefix;
    const Width want = twr_dp(g, prefix, s);
    CHECK(twr_dnc(g, prefix, s) == want);
    DncSolver plain(g, {false, false, 0});
    DncSolver memo(g, {true, true, 0});
    CHECK(plain.twr(prefix, s) == want);
    CHECK(memo.twr(prefix, s) == want);
  }
}

TEST_CASE("memoized D&C reports the same virtual counters as the plain recursion") {
  const Graph g = random_graph(8, 0.5, 8);
  DncSolver plain(g, {false, false, 0});
  DncSolver memo(g, {false, true, 0});
  plain.twr(VertexSet{}, g.vertices());
  memo.twr(VertexSet{}, g.vertices());
  CHECK(plain.counters().q_evaluations == memo.counters().q_evaluations);
  CHECK(plain.counters().splits == memo.counters().splits);
  CHECK(memo.memo_size() > 0);
}

TEST_CASE("tw_fixed_bag and tw_split_components") {
  CHECK(tw_fixed_bag(complete_graph(3), vs({0, 1})) == 2);
  CHECK(tw_fixed_bag(path_graph(4), vs({1, 2})) == 1);
  const Graph g = random_graph(8, 0.4, 3);
  CHECK(tw_fixed_bag(g, g.vertices()) == 7);
  CHECK(tw_split_components(g, g.vertices()) == 7);

  const Graph p5 = path_graph(5);
  CHECK(tw_split_components(p5, vs({2})) == tw_fixed_bag(p5, vs({2})));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 80; ++i) {
    const Graph h = random_graph(9, 0.35, rng());
    const VertexSet chi(rng() & 0x1ff & rng());
    const Width want = tw_fixed_bag(h, chi);
    CHECK(tw_split_components(h, chi) == want);
    FixedBagOptions dnc;
    dnc.inner = InnerSolver::kDnc;
    CHECK(tw_fixed_bag(h, chi, dnc) == want);
  }
}

TEST_CASE("reconstructed orderings attain the width") {
  for (int n = 1; n <= 7; ++n) {
    const Graph k = complete_graph(n);
    CHECK(ordering_width(k, reconstruct_ordering(tw_dp(k, VertexSet{}).table, k, VertexSet{})) == n - 1);
  }
  const Graph t = random_tree(11, 2);
  CHECK(ordering_width(t, reconstruct_ordering(tw_dp(t, VertexSet{}).table, t, VertexSet{})) == 1);
  const Graph p = petersen_graph();
  CHECK(ordering_width(p, reconstruct_ordering(tw_dp(p, VertexSet{}).table, p, VertexSet{})) == 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(9, 0.4, seed);
    const VertexSet chi(seed * 37 & 0x1ff);
    const Width w = ordering_width(g, fixed_bag_ordering(g, chi));
    CHECK(w <= tw_fixed_bag(g, chi));
    CHECK(w >= tw_dp(g, VertexSet{}).width);
  }
  // With an optimal bag the ordering is optimal.
  const Graph g = random_graph(10, 0.4, 77);
  const Width tw = tw_dp(g, VertexSet{}).width;
  for (std::uint64_t bits = 0; bits < (1u << 10); ++bits)
    if (tw_fixed_bag(g, VertexSet(bits)) == tw) CHECK(ordering_width(g, fixed_bag_ordering(g, VertexSet(bits))) == tw);
}

TEST_CASE("decompositions from orderings") {
  const Graph p4 = path_graph(4);
  const TreeDecomposition td = ordering_to_decomposition(p4, identity(4));
  CHECK(td.bags.size() == 3);
  for (VertexSet b : td.bags) CHECK(b.size() == 2);
  CHECK(validate_decomposition(p4, td).ok);
  CHECK(td.width() == 1);

  const Graph k3 = complete_graph(3);
  const TdCheck c3 = validate_decomposition(k3, ordering_to_decomposition(k3, identity(3)));
  CHECK(c3.ok);
  CHECK(c3.width == 2);

  const TreeDecomposition e3 = ordering_to_decomposition(Graph(3), identity(3));
  CHECK(e3.bags.size() == 3);
  CHECK(validate_decomposition(Graph(3), e3).width == 0);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const Graph g = random_graph(n, 0.4, rng());
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const EliminationOrdering pi = ord(order, n);
    const TreeDecomposition d = ordering_to_decomposition(g, pi);
    const TdCheck check = validate_decomposition(g, d);
    CHECK(check.ok);
    CHECK(check.width == ordering_width(g, pi));
    const auto [back, nn] = parse_td(serialize_td(d, n));
    CHECK(nn == n);
    CHECK(back.bags == d.bags);
    CHECK(validate_decomposition(g, back).ok);
  }
}

TEST_CASE("validator catches broken decompositions") {
  const Graph p4 = path_graph(4);
  TreeDecomposition single;
  single.bags = {p4.vertices()};
  const TdCheck whole = validate_decomposition(p4, single);
  CHECK(whole.ok);
  CHECK(whole.width == 3);

  TreeDecomposition missing_edge;
  missing_edge.bags = {vs({0, 1}), vs({2, 3})};
  missing_edge.tree_edges = {{0, 1}};
  CHECK(validate_decomposition(p4, missing_edge).violation == TdViolation::kEdgeCoverage);

  TreeDecomposition missing_vertex;
  missing_vertex.bags = {vs({0, 1}), vs({1, 2})};
  missing_vertex.tree_edges = {{0, 1}};
  CHECK(validate_decomposition(p4, missing_vertex).violation == TdViolation::kVertexCoverage);

  TreeDecomposition split;
  split.bags = {vs({0, 1}), vs({2, 3}), vs({1, 2})};
  split.tree_edges = {{0, 1}, {1, 2}};
  CHECK(validate_decomposition(p4, split).violation == TdViolation::kNotConnected);

  TreeDecomposition forest;
  forest.bags = {vs({0, 1}), vs({1, 2}), vs({2, 3})};
  forest.tree_edges = {{0, 1}};
  CHECK(validate_decomposition(p4, forest).violation == TdViolation::kNotATree);

  CHECK_THROWS_AS(parse_td("s td 1 2 2\nb 1 1 3\n"), ParseError);
}
