#include "qtw/quantum_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qtw/exponents.hpp"

namespace qtw {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::kOracle: return "oracle";
    case Phase::kGlobalPrecalc: return "global-precalc";
    case Phase::kCandidateSearch: return "candidate-search";
    case Phase::kLookup: return "lookup";
    case Phase::kSuffixPrecalc: return "suffix-precalc";
    case Phase::kPrefixPrecalc: return "prefix-precalc";
    case Phase::kOuterMin: return "outer-min";
    case Phase::kPrefixChain: return "prefix-chain";
    case Phase::kSuffixChain: return "suffix-chain";
    case Phase::kDnc: return "dnc";
    case Phase::kCount: break;
  }
  return "unknown";
}

std::map<std::string, std::uint64_t> CostLedger::breakdown() const {
  std::map<std::string, std::uint64_t> out;
  for (int i = 0; i < static_cast<int>(Phase::kCount); ++i) {
    const auto p = static_cast<Phase>(i);
    if (charged[p] != 0) out[to_string(p)] = charged[p];
  }
  return out;
}

void CostLedger::merge(const CostLedger& other) {
  charged += other.charged;
  classical_steps = saturating_add(classical_steps, other.classical_steps);
}

namespace {

Evaluation to_evaluation(const QminResult& r) { return {r.value, r.charge, r.steps}; }

// ceil(1.81691^d): the charge of one bridge TWR computation over d free vertices.
std::uint64_t bridge_charge(int d) {
  return static_cast<std::uint64_t>(std::ceil(std::pow(kSymmetricBase, d) - 1e-9));
}

void require_component_union(const Graph& g, VertexSet c, VertexSet chi, const char* who) {
  if (!c.subset_of(g.vertices()) || !chi.subset_of(g.vertices())) {
    throw std::invalid_argument(std::string(who) + ": sets must lie within V");
  }
  if (c.intersects(chi)) throw std::invalid_argument(std::string(who) + ": C and chi overlap");
  for (VertexSet comp : connected_components(g, g.vertices() - chi)) {
    if (comp.intersects(c) && !comp.subset_of(c)) {
      throw std::invalid_argument(std::string(who) + ": C is not a union of components of G - chi");
    }
  }
}

// Shared layered DP over the free set `c` of `gp` (local indices).
class LayeredDp {
 public:
  LayeredDp(const Graph& gp, VertexSet c, LayerSizes sizes, std::function<Width(VertexSet)> base)
      : gp_(gp), c_(c), n_(c.size()), sizes_(std::move(sizes)), base_(std::move(base)),
        prefix_memo_(sizes_.prefix.size()), suffix_memo_(sizes_.suffix.size()) {}

  Evaluation run() {
    Evaluation out;
    out.charge = suffix_precalc(out.steps);
    const int m = sizes_.middle();
    const QminResult r = qmin_eval(choose(n_, m), [&](std::uint64_t idx) {
      const VertexSet s = unrank_subset(c_, m, idx);
      const Evaluation pre = best_prefix(s, static_cast<int>(sizes_.prefix.size()) - 1);
      const Evaluation suf = best_suffix(s, 0);
      Evaluation e;
      e.value = std::max(pre.value, suf.value);
      e.charge = Charge::unit(Phase::kOuterMin) + pre.charge.retagged(Phase::kPrefixChain) +
                 suf.charge.retagged(Phase::kSuffixChain);
      e.steps = 1 + pre.steps + suf.steps;
      return e;
    });
    out.value = r.value;
    out.charge += r.charge;
    out.steps = saturating_add(out.steps, r.steps);
    return out;
  }

 private:
  // TW'(S) = TWR(S, C - S) for |S| >= last suffix size, by the backward one-vertex recurrence.
  Charge suffix_precalc(std::uint64_t& steps) {
    const int from = sizes_.suffix.back();
    const std::uint64_t full = (std::uint64_t{1} << n_) - 1;
    back_.assign(std::size_t{1} << n_, 0);
    for (std::uint64_t mask = full + 1; mask-- > 0;) {
      if (std::popcount(mask) < from) continue;
      ++steps;
      if (mask == full) continue;
      const VertexSet s = expand(mask, c_);
      int best = 255;
      for (std::uint64_t rest = full & ~mask; rest != 0; rest &= rest - 1) {
        const std::uint64_t bit = rest & (~rest + 1);
        const Vertex v = expand(bit, c_).first();
        best = std::min(best, std::max<int>(back_[mask | bit], q_value_unchecked(gp_, s, v)));
      }
      back_[mask] = static_cast<std::uint8_t>(best);
    }
    return Charge::unit(Phase::kSuffixPrecalc, choose(n_, from));
  }

  Evaluation best_prefix(VertexSet s, int level) {
    if (level == 0) return {base_(s), Charge::unit(Phase::kPrefixChain), 1};
    auto& memo = prefix_memo_[static_cast<std::size_t>(level)];
    if (auto it = memo.find(s.bits()); it != memo.end()) return {it->second.value, it->second.charge, 1};
    const int lower = sizes_.prefix[static_cast<std::size_t>(level) - 1];
    const int d = s.size() - lower;
    const QminResult r = qmin_eval(choose(s.size(), lower), [&](std::uint64_t idx) {
      const VertexSet t = unrank_subset(s, lower, idx);
      const Evaluation sub = best_prefix(t, level - 1);
      Evaluation e;
      e.value = std::max(sub.value, twr_dp(gp_, t, s - t));
      e.charge = sub.charge + Charge::unit(Phase::kPrefixChain, bridge_charge(d));
      e.steps = sub.steps + (std::uint64_t{1} << d);
      return e;
    });
    const Evaluation e = to_evaluation(r);
    memo.emplace(s.bits(), e);
    return e;
  }

  Evaluation best_suffix(VertexSet s, int level) {
    const int last = static_cast<int>(sizes_.suffix.size()) - 1;
    if (level == last) return {back_[compress(s, c_)], Charge::unit(Phase::kSuffixChain), 1};
    auto& memo = suffix_memo_[static_cast<std::size_t>(level)];
    if (auto it = memo.find(s.bits()); it != memo.end()) return {it->second.value, it->second.charge, 1};
    const int d = sizes_.suffix[static_cast<std::size_t>(level) + 1] - s.size();
    const VertexSet outside = c_ - s;
    const QminResult r = qmin_eval(choose(outside.size(), d), [&](std::uint64_t idx) {
      const VertexSet u = unrank_subset(outside, d, idx);
      const Evaluation sub = best_suffix(s | u, level + 1);
      Evaluation e;
      e.value = std::max(twr_dp(gp_, s, u), sub.value);
      e.charge = sub.charge + Charge::unit(Phase::kSuffixChain, bridge_charge(d));
      e.steps = sub.steps + (std::uint64_t{1} << d);
      return e;
    });
    const Evaluation e = to_evaluation(r);
    memo.emplace(s.bits(), e);
    return e;
  }

  const Graph& gp_;
  VertexSet c_;
  int n_;
  LayerSizes sizes_;
  std::function<Width(VertexSet)> base_;
  std::vector<std::uint8_t> back_;
  std::vector<std::unordered_map<std::uint64_t, Evaluation>> prefix_memo_;
  std::vector<std::unordered_map<std::uint64_t, Evaluation>> suffix_memo_;
};

// Both candidate stages of the fixed-bag search on a connected graph, every search through qmin.
// `bag_value(c, bag)` returns tw(G[c + bag], bag) for a union c of components of G - bag.
// The first bag attaining the minimum is written to `witness` (bookkeeping only, never charged).
template <class BagValue>
Evaluation candidate_stages(const Graph& g, double beta, BagValue&& bag_value, VertexSet& witness) {
  const int n = g.size();
  const int sentinel = n;
  Evaluation best{sentinel, {}, 0};
  int witness_value = sentinel + 1;
  auto note = [&](int value, VertexSet bag) {
    if (value < witness_value) {
      witness_value = value;
      witness = bag;
    }
  };
  auto absorb = [&](const QminResult& r) {
    best.value = std::min(best.value, r.value);
    best.charge += r.charge;
    best.steps = saturating_add(best.steps, r.steps);
  };
  const auto floor_frac = [n](double x) { return static_cast<int>(std::floor(x * n + 1e-9)); };
  const auto ceil_frac = [n](double x) { return static_cast<int>(std::ceil(x * n - 1e-9)); };

  for (int c = 0; c <= std::min(floor_frac(beta), n); ++c) {
    for (int p = 1; p <= n - c; ++p) {
      absorb(qmin_eval(choose(n, p), [&](std::uint64_t idx) {
        const VertexSet omega = unrank_subset(g.vertices(), p, idx);
        if (!has_component_of_size(g, omega, c)) return Evaluation{sentinel, Charge::unit(Phase::kCandidateSearch), 1};
        Evaluation e = bag_value(g.vertices() - omega, omega);
        note(e.value, omega);
        e.charge += Charge::unit(Phase::kCandidateSearch);
        ++e.steps;
        return e;
      }));
    }
  }

  const int c_lo = std::max(1, ceil_frac(beta));
  for (int s = 1; s <= floor_frac(1.0 - 2.0 * beta); ++s) {
    for (int c = c_lo; c <= floor_frac(1.0 - beta) - s; ++c) {
      absorb(qmin_eval(static_cast<std::uint64_t>(n), [&](std::uint64_t anchor) {
        const ConnectedSetQuery q{static_cast<Vertex>(anchor), c - 1, s};
        return to_evaluation(qmin_over_connected_sets(
            g, q,
            [&](VertexSet comp) {
              const VertexSet sep = neighborhood(g, comp);
              // tw(G, S) is the larger of tw(G[S + C], S) and tw(G[V - C], S).
              const Evaluation near = bag_value(comp, sep);
              const Evaluation far = bag_value(g.vertices() - comp - sep, sep);
              Evaluation e;
              e.value = std::max(near.value, far.value);
              note(e.value, sep);
              e.charge = Charge::unit(Phase::kCandidateSearch) + near.charge + far.charge;
              e.steps = 1 + near.steps + far.steps;
              return e;
            },
            sentinel));
      }));
    }
  }
  return best;
}

void check_fraction(double x, const char* name) {
  if (!(x >= 0.0 && x <= 0.5)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1/2]");
}

}  // namespace

QminResult qmin_over_connected_sets(const Graph& g, const ConnectedSetQuery& q,
                                    const std::function<Evaluation(VertexSet)>& oracle, int sentinel) {
  q.validate(g.size());
  const Count bound = count_bound(q.extra, q.boundary);
  if (bound.saturated) throw std::overflow_error("qmin_over_connected_sets: index space too large");
  return qmin_eval(bound.value, [&](std::uint64_t idx) {
    const auto set = unrank_connected_set(g, q, idx);
    if (!set) return Evaluation{sentinel, Charge::unit(Phase::kOracle), 1};
    return oracle(*set);
  });
}

int qmin_over_connected_sets(const Graph& g, const ConnectedSetQuery& q,
                             const std::function<Evaluation(VertexSet)>& oracle, CostLedger& ledger) {
  const QminResult r = qmin_over_connected_sets(g, q, oracle, g.size());
  ledger.charged += r.charge;
  ledger.classical_steps = saturating_add(ledger.classical_steps, r.steps);
  return r.value;
}

Evaluation QuantumDnc::twr(VertexSet prefix, VertexSet s) {
  if (prefix.intersects(s)) throw std::invalid_argument("quantum_dnc: L and S overlap");
  return solve(prefix, s);
}

Evaluation QuantumDnc::solve(VertexSet prefix, VertexSet s) {
  const int size = s.size();
  if (size == 0) return {0, {}, 0};
  if (size == 1) return {q_value_unchecked(g_, prefix, s.first()), Charge::unit(Phase::kDnc), 1};
  const std::pair<std::uint64_t, std::uint64_t> key{prefix.bits(), s.bits()};
  if (auto it = memo_.find(key); it != memo_.end()) {
    return {it->second.value, Charge::unit(Phase::kDnc, it->second.charge), 1};
  }
  const int k = (size + 1) / 2;
  const QminResult r = qmin_eval(choose(size, k), [&](std::uint64_t idx) {
    const VertexSet head = unrank_subset(s, k, idx);
    const Evaluation left = solve(prefix, head);
    const Evaluation right = solve(prefix | head, s - head);
    return Evaluation{std::max(left.value, right.value), left.charge + right.charge, 1 + left.steps + right.steps};
  });
  memo_.emplace(key, Entry{static_cast<std::uint8_t>(r.value), r.charge.total()});
  return to_evaluation(r);
}

int quantum_dnc(const Graph& g, VertexSet prefix, VertexSet s, CostLedger& ledger) {
  QuantumDnc dnc(g);
  const Evaluation e = dnc.twr(prefix, s);
  ledger.charged += e.charge;
  ledger.classical_steps = saturating_add(ledger.classical_steps, e.steps);
  return e.value;
}

PrecalcStore::PrecalcStore(const Graph& g, double alpha) : alpha_(alpha) {
  check_fraction(alpha, "alpha");
  limit_ = static_cast<int>(std::floor(alpha * g.size() + 1e-9));
  for (int k = 0; k <= limit_; ++k) {
    for_each_subset_of_size(g.vertices(), k, [&](VertexSet s) {
      int best = k == 0 ? 0 : 255;
      for (Vertex v : s) {
        const VertexSet rest = s.without(v);
        best = std::min(best, std::max<int>(table_.at(rest.bits()), q_value_unchecked(g, rest, v)));
      }
      table_.emplace(s.bits(), static_cast<std::uint8_t>(best));
    });
  }
}

std::optional<Width> PrecalcStore::find(VertexSet s) const {
  auto it = table_.find(s.bits());
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

Width PrecalcStore::at(VertexSet s) const {
  if (auto w = find(s)) return *w;
  throw std::out_of_range("PrecalcStore: set " + s.to_string() + " is not stored");
}

LayerSizes layer_sizes(const LayerParams& params, int n_free, int base_limit) {
  if (!params.strictly_ordered()) throw std::invalid_argument("layer params violate the strict ordering chain");
  if (n_free < 0 || base_limit < 0) throw std::invalid_argument("layer_sizes: negative size");
  const double first = params.lambda.empty() ? params.mu : params.lambda.front();
  if (first * n_free > base_limit + 0.5 + 1e-9) {
    throw std::invalid_argument("layer params need a larger precalculated base layer");
  }
  auto round_size = [&](double f) { return std::clamp(static_cast<int>(std::lround(f * n_free)), 0, n_free); };
  const int base = std::min({base_limit, round_size(first), n_free});

  struct Layer {
    int size;
    char tag;  // 'P' prefix, 'M' middle, 'S' suffix
  };
  std::vector<Layer> seq;
  seq.push_back({base, params.lambda.empty() ? 'M' : 'P'});
  for (std::size_t i = 1; i < params.lambda.size(); ++i) seq.push_back({round_size(params.lambda[i]), 'P'});
  if (!params.lambda.empty()) seq.push_back({round_size(params.mu), 'M'});
  for (double r : params.rho) seq.push_back({round_size(r), 'S'});

  std::vector<Layer> kept;
  for (Layer l : seq) {
    l.size = std::clamp(l.size, base, n_free);
    if (!kept.empty() && l.size <= kept.back().size) {
      if (l.tag == 'M') kept.back().tag = 'M';
      continue;
    }
    kept.push_back(l);
  }
  LayerSizes out;
  bool after_middle = false;
  for (const Layer& l : kept) {
    if (!after_middle) out.prefix.push_back(l.size);
    if (after_middle || l.tag == 'M') out.suffix.push_back(l.size);
    if (l.tag == 'M') after_middle = true;
  }
  return out;
}

Evaluation asym_dp(const Graph& g, VertexSet c, VertexSet chi, const LayerParams& params, const PrecalcStore& pre) {
  require_component_union(g, c, chi, "asym_dp");
  if (c.size() <= pre.limit()) return {pre.at(c), Charge::unit(Phase::kLookup), 1};
  const LayerSizes sizes = layer_sizes(params, c.size(), pre.limit());
  const InducedSubgraph sub = induced_subgraph(g, c | chi);
  // Base values come from the global store: TW over a union of components is the same in G.
  LayeredDp dp(sub.graph, sub.project(c), sizes, [&](VertexSet s) { return pre.at(sub.lift(s)); });
  return dp.run();
}

int asym_dp(const Graph& g, VertexSet c, VertexSet chi, const LayerParams& params, const PrecalcStore& pre,
            CostLedger& ledger) {
  const Evaluation e = asym_dp(g, c, chi, params, pre);
  ledger.charged += e.charge;
  ledger.classical_steps = saturating_add(ledger.classical_steps, e.steps);
  return e.value;
}

Evaluation symmetric_dp(const Graph& g, VertexSet c, VertexSet chi, const LayerParams& params) {
  require_component_union(g, c, chi, "symmetric_dp");
  const int n = c.size();
  if (n == 0) return {0, Charge::unit(Phase::kLookup), 1};
  const int base_limit = static_cast<int>(std::lround(kSymmetricFraction * n));
  const LayerSizes sizes = layer_sizes(params, n, base_limit);
  const InducedSubgraph sub = induced_subgraph(g, c | chi);
  const VertexSet local = sub.project(c);

  // Forward DP for all subsets up to the base layer.
  const int b0 = sizes.prefix.front();
  std::vector<std::uint8_t> fwd(std::size_t{1} << n, 0);
  Evaluation out;
  std::uint64_t stored = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) > b0) continue;
    ++stored;
    if (mask == 0) continue;
    const VertexSet s = expand(mask, local);
    int best = 255;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const std::uint64_t bit = rest & (~rest + 1);
      const Vertex v = expand(bit, local).first();
      best = std::min(best, std::max<int>(fwd[mask & ~bit], q_value_unchecked(sub.graph, s.without(v), v)));
    }
    fwd[mask] = static_cast<std::uint8_t>(best);
  }
  LayeredDp dp(sub.graph, local, sizes, [&](VertexSet s) { return static_cast<Width>(fwd[compress(s, local)]); });
  out = dp.run();
  out.charge += Charge::unit(Phase::kPrefixPrecalc, stored);
  out.steps = saturating_add(out.steps, stored);
  return out;
}

DispatchBranch dispatch_branch(int n_free, int store_limit) {
  if (n_free <= store_limit) return DispatchBranch::kFetch;
  if (store_limit <= kSymmetricFraction * n_free) return DispatchBranch::kSymmetric;
  return DispatchBranch::kAsymmetric;
}

const LayerParams& Dispatcher::params_for(double lambda1) {
  const long long key = std::llround(lambda1 * 1e9);
  auto it = params_.find(key);
  if (it == params_.end()) it = params_.emplace(key, layer_program(k_, lambda1).params).first;
  return it->second;
}

Evaluation Dispatcher::tw_part_forced(VertexSet c, VertexSet chi, DispatchBranch branch) {
  switch (branch) {
    case DispatchBranch::kFetch:
      require_component_union(g_, c, chi, "dispatch_subproblem");
      return {pre_.at(c), Charge::unit(Phase::kLookup), 1};
    case DispatchBranch::kSymmetric:
      return symmetric_dp(g_, c, chi, params_for(kSymmetricFraction));
    case DispatchBranch::kAsymmetric:
      return asym_dp(g_, c, chi, params_for(static_cast<double>(pre_.limit()) / c.size()), pre_);
  }
  throw std::logic_error("unreachable");
}

Evaluation Dispatcher::tw_part(VertexSet c, VertexSet chi) {
  if (auto it = cache_.find(c.bits()); it != cache_.end()) return {it->second.value, it->second.charge, 1};
  const Evaluation e = tw_part_forced(c, chi, dispatch_branch(c.size(), pre_.limit()));
  cache_.emplace(c.bits(), e);
  return e;
}

Evaluation Dispatcher::solve(VertexSet c, VertexSet chi) {
  Evaluation e = tw_part(c, chi);
  e.value = std::max<int>(e.value, chi.size() - 1);
  return e;
}

int dispatch_subproblem(const Graph& g, VertexSet c, VertexSet chi, const PrecalcStore& pre, int k,
                        CostLedger& ledger) {
  Dispatcher d(g, pre, k);
  const Evaluation e = d.solve(c, chi);
  ledger.charged += e.charge;
  ledger.classical_steps = saturating_add(ledger.classical_steps, e.steps);
  return e.value;
}

Width improved_algorithm(const Graph& g, double alpha, double beta, int k, CostLedger& ledger, VertexSet* bag) {
  check_fraction(alpha, "alpha");
  check_fraction(beta, "beta");
  if (k < 0) throw std::invalid_argument("layer count must be non-negative");
  if (g.size() == 0) return -1;
  Width width = 0;
  for (VertexSet comp : connected_components(g, g.vertices())) {
    const InducedSubgraph sub = induced_subgraph(g, comp);
    const PrecalcStore pre(sub.graph, alpha);
    ledger.charged += pre.build_charge();
    ledger.classical_steps = saturating_add(ledger.classical_steps, pre.size());
    Dispatcher dispatcher(sub.graph, pre, k);
    VertexSet local_bag;
    const Evaluation e = candidate_stages(
        sub.graph, beta, [&](VertexSet c, VertexSet chi) { return dispatcher.solve(c, chi); }, local_bag);
    ledger.charged += e.charge;
    ledger.classical_steps = saturating_add(ledger.classical_steps, e.steps);
    if (e.value >= width) {
      width = e.value;
      if (bag) *bag = sub.lift(local_bag);
    }
  }
  return width;
}

Width quantum_poly_space(const Graph& g, double beta, CostLedger& ledger, VertexSet* bag) {
  check_fraction(beta, "beta");
  if (g.size() == 0) return -1;
  Width width = 0;
  for (VertexSet comp : connected_components(g, g.vertices())) {
    const InducedSubgraph sub = induced_subgraph(g, comp);
    QuantumDnc dnc(sub.graph);
    VertexSet local_bag;
    const Evaluation e = candidate_stages(
        sub.graph, beta,
        [&](VertexSet c, VertexSet chi) {
          // TW over a union of components of G - chi is the same computed in G.
          Evaluation inner = dnc.twr(VertexSet{}, c);
          inner.value = std::max<int>(inner.value, chi.size() - 1);
          return inner;
        },
        local_bag);
    ledger.charged += e.charge;
    ledger.classical_steps = saturating_add(ledger.classical_steps, e.steps);
    if (e.value >= width) {
      width = e.value;
      if (bag) *bag = sub.lift(local_bag);
    }
  }
  return width;
}

}  // namespace qtw
