#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qtw/combinatorics.hpp"
#include "qtw/enumeration.hpp"
#include "qtw/graph.hpp"
#include "qtw/layer_params.hpp"
#include "qtw/ordering_dp.hpp"

namespace qtw {

/// Ledger phases. Every charged unit belongs to exactly one.
enum class Phase : int {
  kOracle,           // plain oracle evaluations
  kGlobalPrecalc,    // TW_G(S) for all |S| <= alpha n
  kCandidateSearch,  // candidate tests in the outer stages
  kLookup,           // single table fetches
  kSuffixPrecalc,    // backward DP onto the last suffix layer
  kPrefixPrecalc,    // local forward DP of the symmetric branch
  kOuterMin,         // minimum over the middle layer
  kPrefixChain,
  kSuffixChain,
  kDnc,              // recursive halving
  kCount
};

const char* to_string(Phase p);

/// Cost-model units split by phase; all arithmetic saturates at 2^64 - 1.
class Charge {
 public:
  static Charge unit(Phase p, std::uint64_t amount = 1) {
    Charge c;
    c.units_[static_cast<std::size_t>(p)] = amount;
    return c;
  }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (std::uint64_t u : units_) t = saturating_add(t, u);
    return t;
  }
  std::uint64_t operator[](Phase p) const { return units_[static_cast<std::size_t>(p)]; }

  Charge& operator+=(const Charge& o) {
    for (std::size_t i = 0; i < units_.size(); ++i) units_[i] = saturating_add(units_[i], o.units_[i]);
    return *this;
  }
  friend Charge operator+(Charge a, const Charge& b) { return a += b; }

  Charge scaled(std::uint64_t factor) const {
    Charge c;
    for (std::size_t i = 0; i < units_.size(); ++i) c.units_[i] = saturating_mul(units_[i], factor);
    return c;
  }
  /// The same total, moved into a single phase.
  Charge retagged(Phase p) const { return unit(p, total()); }

  bool operator==(const Charge&) const = default;

 private:
  std::array<std::uint64_t, static_cast<std::size_t>(Phase::kCount)> units_{};
};

struct CostLedger {
  Charge charged;
  /// Oracle evaluations and table cells the classical simulation actually performed.
  std::uint64_t classical_steps = 0;

  std::uint64_t charged_queries() const { return charged.total(); }
  /// Non-zero phases by name.
  std::map<std::string, std::uint64_t> breakdown() const;
  /// Associative and commutative.
  void merge(const CostLedger& other);
};

/// A value together with what computing it was charged and how much simulation work it took.
struct Evaluation {
  int value = 0;
  Charge charge;
  std::uint64_t steps = 0;
};

struct QminResult {
  int value = 0;
  std::uint64_t argmin = 0;
  /// ceil(sqrt(N)) times the largest per-index charge.
  Charge charge;
  std::uint64_t steps = 0;
};

/// Exact minimum over indices [0, N) (ties to the smallest index), charged as quantum minimum
/// finding. The oracle returns an Evaluation, or a plain value that costs one kOracle unit.
/// Every index is evaluated. Throws std::invalid_argument for N = 0.
template <class Oracle>
QminResult qmin_eval(std::uint64_t domain_size, Oracle&& oracle) {
  if (domain_size == 0) throw std::invalid_argument("qmin_find: empty domain");
  QminResult out;
  Charge worst;
  for (std::uint64_t i = 0; i < domain_size; ++i) {
    Evaluation e;
    if constexpr (std::is_same_v<std::decay_t<std::invoke_result_t<Oracle&, std::uint64_t>>, Evaluation>) {
      e = oracle(i);
    } else {
      e.value = static_cast<int>(oracle(i));
      e.charge = Charge::unit(Phase::kOracle);
      e.steps = 1;
    }
    if (i == 0 || e.value < out.value) {
      out.value = e.value;
      out.argmin = i;
    }
    if (e.charge.total() > worst.total()) worst = e.charge;
    out.steps = saturating_add(out.steps, e.steps);
  }
  out.charge = worst.scaled(ceil_sqrt(domain_size));
  return out;
}

/// qmin_eval that books its charge and steps into a ledger; returns (min value, argmin).
template <class Oracle>
std::pair<int, std::uint64_t> qmin_find(std::uint64_t domain_size, Oracle&& oracle, CostLedger& ledger) {
  const QminResult r = qmin_eval(domain_size, std::forward<Oracle>(oracle));
  ledger.charged += r.charge;
  ledger.classical_steps = saturating_add(ledger.classical_steps, r.steps);
  return {r.value, r.argmin};
}

/// Minimum of the oracle over the connected sets of a query, searched over the unrank index space
/// [0, C(b + f, b)). Pruned leaves and an empty family evaluate to `sentinel` at one unit.
QminResult qmin_over_connected_sets(const Graph& g, const ConnectedSetQuery& q,
                                    const std::function<Evaluation(VertexSet)>& oracle, int sentinel);

/// Ledger form; the sentinel is n.
int qmin_over_connected_sets(const Graph& g, const ConnectedSetQuery& q,
                             const std::function<Evaluation(VertexSet)>& oracle, CostLedger& ledger);

/// TWR_G(L, S) by recursive halving where each split minimum is a qmin over C(|S|, ceil(|S|/2))
/// indices. Values and charges depend only on (L, S), so they are cached.
class QuantumDnc {
 public:
  explicit QuantumDnc(const Graph& g) : g_(g) {}

  /// Throws std::invalid_argument if L and S overlap.
  Evaluation twr(VertexSet prefix, VertexSet s);
  std::size_t cache_size() const { return memo_.size(); }

 private:
  struct Entry {
    std::uint8_t value;
    std::uint64_t charge;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
    }
  };

  Evaluation solve(VertexSet prefix, VertexSet s);

  const Graph& g_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Entry, KeyHash> memo_;
};

int quantum_dnc(const Graph& g, VertexSet prefix, VertexSet s, CostLedger& ledger);

/// TW_G(S) for every |S| <= floor(alpha n), built once and then read-only.
class PrecalcStore {
 public:
  /// Throws std::invalid_argument unless 0 <= alpha <= 1/2.
  PrecalcStore(const Graph& g, double alpha);

  double alpha() const { return alpha_; }
  int limit() const { return limit_; }
  std::size_t size() const { return table_.size(); }
  std::optional<Width> find(VertexSet s) const;
  /// Throws std::out_of_range if S is not stored.
  Width at(VertexSet s) const;
  /// Number of stored subsets; the classical charge of building the store.
  Charge build_charge() const { return Charge::unit(Phase::kGlobalPrecalc, size()); }

 private:
  double alpha_;
  int limit_;
  std::unordered_map<std::uint64_t, std::uint8_t> table_;
};

/// Integer layer sizes: prefix ascends from the base layer to the middle, suffix ascends from the
/// middle to the last suffix layer. Both contain the middle.
struct LayerSizes {
  std::vector<int> prefix;
  std::vector<int> suffix;

  int middle() const { return prefix.back(); }
};

/// Rounds fractions to sizes (the base layer is min(base_limit, round(first fraction * n'))),
/// clamps into [base, n'], and drops any layer not strictly larger than the previous one. If the
/// middle is dropped, the last remaining prefix layer becomes the middle.
/// Throws std::invalid_argument if params are not strictly ordered or ask for a base above base_limit.
LayerSizes layer_sizes(const LayerParams& params, int n_free, int base_limit);

/// Layered DP for TW_{G'}(C), G' = G[C + chi], with prefix base layer read from the store.
/// Throws std::invalid_argument unless C is a union of components of G - chi.
Evaluation asym_dp(const Graph& g, VertexSet c, VertexSet chi, const LayerParams& params, const PrecalcStore& pre);
int asym_dp(const Graph& g, VertexSet c, VertexSet chi, const LayerParams& params, const PrecalcStore& pre,
            CostLedger& ledger);

/// The same layered DP with a locally computed prefix base at kSymmetricFraction of |C|.
Evaluation symmetric_dp(const Graph& g, VertexSet c, VertexSet chi, const LayerParams& params);

enum class DispatchBranch { kFetch, kSymmetric, kAsymmetric };

/// Branch chosen for |C| = n_free with store limit floor(alpha n).
DispatchBranch dispatch_branch(int n_free, int store_limit);

/// tw(G[C + chi], chi) with the branch rule above; TW values are cached per C.
class Dispatcher {
 public:
  Dispatcher(const Graph& g, const PrecalcStore& pre, int k) : g_(g), pre_(pre), k_(k) {}

  /// TW_{G'}(C) and its charge (cached; the charge depends only on |C|).
  Evaluation tw_part(VertexSet c, VertexSet chi);
  /// max(TW_{G'}(C), |chi| - 1).
  Evaluation solve(VertexSet c, VertexSet chi);
  /// Forces a branch; used to compare the branches at the switch point.
  Evaluation tw_part_forced(VertexSet c, VertexSet chi, DispatchBranch branch);

 private:
  const LayerParams& params_for(double lambda1);

  const Graph& g_;
  const PrecalcStore& pre_;
  int k_;
  std::unordered_map<std::uint64_t, Evaluation> cache_;
  std::map<long long, LayerParams> params_;
};

int dispatch_subproblem(const Graph& g, VertexSet c, VertexSet chi, const PrecalcStore& pre, int k,
                        CostLedger& ledger);

/// Improved algorithm: global precalculation, then both candidate stages through qmin with the
/// dispatcher as inner solver. Disconnected graphs are solved per component.
/// If `bag` is given it receives a bag attaining the width. Throws std::invalid_argument unless
/// alpha, beta in [0, 1/2] and k >= 0.
Width improved_algorithm(const Graph& g, double alpha, double beta, int k, CostLedger& ledger,
                         VertexSet* bag = nullptr);

/// Both candidate stages through qmin with quantum_dnc as inner solver; polynomial space.
/// Throws std::invalid_argument unless beta in [0, 1/2].
Width quantum_poly_space(const Graph& g, double beta, CostLedger& ledger, VertexSet* bag = nullptr);

}  // namespace qtw
