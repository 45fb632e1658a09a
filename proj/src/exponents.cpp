#include "qtw/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "qtw/combinatorics.hpp"

namespace qtw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGridStep = 0.005;
constexpr double kRefineTol = 1e-6;
constexpr double kInnerMaxStep = 1e-4;
constexpr double kEps = 1e-9;

struct Argmin {
  double x = 0.0;
  double value = kInf;
};

// Golden-section search on [a, b]; assumes f is unimodal there.
template <class F>
Argmin golden(F&& f, double a, double b, double tol = kRefineTol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Argmin{c, fc} : Argmin{d, fd};
}

// Grid scan with the given step (endpoints included), then golden refinement around the best
// grid point. Ties go to the smaller argument.
template <class F>
Argmin grid_then_golden(F&& f, double a, double b, double step = kGridStep) {
  if (b - a <= kEps) return {a, f(a)};
  const int steps = std::max(1, static_cast<int>(std::ceil((b - a) / step - kEps)));
  Argmin best;
  int best_i = 0;
  for (int i = 0; i <= steps; ++i) {
    const double x = i == steps ? b : a + step * i;
    const double v = f(x);
    if (v < best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  const double lo = std::max(a, a + step * (best_i - 1));
  const double hi = std::min(b, a + step * (best_i + 1));
  const Argmin refined = golden(f, lo, hi);
  return refined.value < best.value ? refined : best;
}

// max over [a, b] on a fixed grid, endpoints included.
template <class F>
Argmin grid_max(F&& f, double a, double b, double step = kInnerMaxStep) {
  Argmin best{a, -kInf};
  if (b < a) return best;
  const int steps = std::max(1, static_cast<int>(std::ceil((b - a) / step - kEps)));
  for (int i = 0; i <= steps; ++i) {
    const double x = i == steps ? b : a + step * i;
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

double be(double x) { return binary_entropy(std::clamp(x, 0.0, 1.0)); }

// Chain cost of one prefix side, normalised to end at 1: phi_k(r) is the minimal t_{k+1} for
// lambda_1 = r, lambda_{k+1} = 1. Homogeneity gives t_{k+1} = mu * phi_k(lambda_1 / mu); the
// suffix side is the same chain on x = 1 - rho.
class ChainTables {
 public:
  static ChainTables& instance() {
    static ChainTables t;
    return t;
  }

  double phi(int k, double r) {
    r = std::clamp(r, 0.0, 1.0);
    if (k == 0) return r >= 1.0 - kEps ? 0.0 : kInf;
    if (k == 1) return 0.5 * be(r) + symmetric_exponent() * (1.0 - r);
    const std::vector<double>& t = table(k);
    const double pos = r * kCells;
    const int i = std::min(kCells - 1, static_cast<int>(pos));
    const double w = pos - i;
    return t[static_cast<std::size_t>(i)] * (1.0 - w) + t[static_cast<std::size_t>(i) + 1] * w;
  }

  // Best position s of lambda_k (relative to the top) for a k-step chain starting at r.
  Argmin split(int k, double r) {
    auto cost = [&](double s) {
      if (s <= 0.0) return kInf;
      return 0.5 * be(s) + std::max(s * phi(k - 1, std::min(1.0, r / s)), symmetric_exponent() * (1.0 - s));
    };
    return grid_then_golden(cost, r, 1.0, 1.0 / 800.0);
  }

  // Intermediate chain points strictly between r and 1, ascending, relative to the top.
  std::vector<double> points(int k, double r) {
    if (k <= 1) return {};
    const Argmin s = split(k, r);
    if (s.x >= 1.0 - kEps) return points(k - 1, r);
    if (s.x <= r + kEps) return {};
    std::vector<double> out;
    for (double p : points(k - 1, r / s.x)) out.push_back(p * s.x);
    out.push_back(s.x);
    return out;
  }

 private:
  static constexpr int kCells = 2000;

  // References into tables_ are handed out without the lock; never reallocate.
  ChainTables() { tables_.reserve(kMaxK + 1); }
  static constexpr int kMaxK = 32;

  const std::vector<double>& table(int k) {
    if (k > kMaxK) throw std::invalid_argument("layer count too large");
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(tables_.size()) <= k) tables_.emplace_back();
    if (tables_[static_cast<std::size_t>(k)].empty()) {
      std::vector<double> t(kCells + 1);
      for (int i = 0; i <= kCells; ++i) t[static_cast<std::size_t>(i)] = split_locked(k, static_cast<double>(i) / kCells);
      tables_[static_cast<std::size_t>(k)] = std::move(t);
    }
    return tables_[static_cast<std::size_t>(k)];
  }

  // split() for table construction; the k-1 table is built (recursively) before this one.
  double split_locked(int k, double r) {
    auto cost = [&](double s) {
      if (s <= 0.0) return kInf;
      return 0.5 * be(s) + std::max(s * phi_locked(k - 1, std::min(1.0, r / s)), symmetric_exponent() * (1.0 - s));
    };
    return grid_then_golden(cost, r, 1.0, 1.0 / 800.0).value;
  }

  double phi_locked(int k, double r) {
    if (k <= 1) return phi(k, r);
    std::vector<double>& t = tables_[static_cast<std::size_t>(k)];
    if (t.empty()) {
      t.resize(kCells + 1);
      for (int i = 0; i <= kCells; ++i) t[static_cast<std::size_t>(i)] = split_locked(k, static_cast<double>(i) / kCells);
    }
    const double pos = std::clamp(r, 0.0, 1.0) * kCells;
    const int i = std::min(kCells - 1, static_cast<int>(pos));
    const double w = pos - i;
    return t[static_cast<std::size_t>(i)] * (1.0 - w) + t[static_cast<std::size_t>(i) + 1] * w;
  }

  std::mutex mu_;
  std::vector<std::vector<double>> tables_;
};

struct RawProgram {
  double T = kInf;
  double mu = 0.0;
  double x1 = 0.0;
};

// The program at a fixed lambda1 (no envelope).
RawProgram solve_raw(int k, double lambda1) {
  ChainTables& ct = ChainTables::instance();
  if (k == 0) return {be(lambda1), lambda1, 1.0 - lambda1};
  RawProgram best;
  auto inner = [&](double mu, double* x1_out) {
    const double head = 0.5 * be(mu);
    const double prefix = mu * ct.phi(k, lambda1 / mu);
    const double room = 1.0 - mu;
    if (room <= kEps) {
      if (x1_out) *x1_out = 0.0;
      return head + prefix;
    }
    auto f = [&](double x1) {
      return std::max(be(x1), head + std::max(prefix, room * ct.phi(k, x1 / room)));
    };
    const Argmin a = grid_then_golden(f, 0.0, room);
    if (x1_out) *x1_out = a.x;
    return a.value;
  };
  const Argmin m = grid_then_golden([&](double mu) { return inner(mu, nullptr); }, lambda1, 1.0);
  best.mu = m.x;
  best.T = inner(m.x, &best.x1);
  return best;
}

LayerParams params_from(int k, double lambda1, const RawProgram& raw) {
  ChainTables& ct = ChainTables::instance();
  LayerParams p;
  p.k = k;
  p.mu = raw.mu;
  if (lambda1 < raw.mu - kEps) {
    p.lambda.push_back(lambda1);
    for (double r : ct.points(k, lambda1 / raw.mu)) {
      const double v = r * raw.mu;
      if (v > p.lambda.back() + kEps && v < raw.mu - kEps) p.lambda.push_back(v);
    }
  }
  const double room = 1.0 - raw.mu;
  if (room > kEps && raw.x1 < room - kEps) {
    // x ascending from x1 to 1 - mu; rho = 1 - x.
    std::vector<double> xs{raw.x1};
    for (double r : ct.points(k, raw.x1 / room)) {
      const double v = r * room;
      if (v > xs.back() + kEps && v < room - kEps) xs.push_back(v);
    }
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) p.rho.push_back(1.0 - *it);
  }
  return p;
}

std::mutex g_raw_mu;
std::map<std::pair<int, long long>, RawProgram>& raw_cache() {
  static std::map<std::pair<int, long long>, RawProgram> cache;
  return cache;
}

RawProgram cached_raw(int k, double lambda1) {
  const long long key = std::llround(lambda1 * 1e9);
  {
    std::lock_guard<std::mutex> lock(g_raw_mu);
    auto it = raw_cache().find({k, key});
    if (it != raw_cache().end()) return it->second;
  }
  const RawProgram r = solve_raw(k, lambda1);
  std::lock_guard<std::mutex> lock(g_raw_mu);
  raw_cache().emplace(std::make_pair(k, key), r);
  return r;
}

// Interpolated subproblem exponent on (kSymmetricFraction, 1).
class SubproblemCurve {
 public:
  static SubproblemCurve& instance() {
    static SubproblemCurve c;
    return c;
  }

  double at(double lambda, int k) {
    const std::vector<double>& t = table(k);
    const double span = 1.0 - kSymmetricFraction;
    const double pos = (lambda - kSymmetricFraction) / span * kCells;
    const int i = std::clamp(static_cast<int>(pos), 0, kCells - 1);
    const double w = std::clamp(pos - i, 0.0, 1.0);
    return t[static_cast<std::size_t>(i)] * (1.0 - w) + t[static_cast<std::size_t>(i) + 1] * w;
  }

 private:
  static constexpr int kCells = 400;

  const std::vector<double>& table(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& t = tables_[k];
    if (t.empty()) {
      t.resize(kCells + 1);
      for (int i = 0; i <= kCells; ++i) {
        const double lambda = kSymmetricFraction + (1.0 - kSymmetricFraction) * i / kCells;
        t[static_cast<std::size_t>(i)] = i == kCells ? 0.0 : std::min(symmetric_exponent(), layer_program(k, lambda).T);
      }
    }
    return t;
  }

  std::mutex mu_;
  std::map<int, std::vector<double>> tables_;
};

int floor_frac(double x, int n) { return static_cast<int>(std::floor(x * n + kEps)); }
int ceil_frac(double x, int n) { return static_cast<int>(std::ceil(x * n - kEps)); }

// Stage-2 entropy term: log2 C((1 - x) n, beta n) / n.
double stage2_entropy(double beta, double x) {
  const double room = 1.0 - x;
  if (room <= kEps) return 0.0;
  return room * be(beta / room);
}

}  // namespace

bool LayerParams::strictly_ordered() const {
  std::vector<double> chain = lambda;
  chain.push_back(mu);
  chain.insert(chain.end(), rho.begin(), rho.end());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!(chain[i] >= 0.0 && chain[i] <= 1.0)) return false;
    if (i > 0 && !(chain[i - 1] < chain[i])) return false;
  }
  return true;
}

double symmetric_exponent() { return std::log2(kSymmetricBase); }

double binary_entropy(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  if (eps == 0.0 || eps == 1.0) return 0.0;
  return -(eps * std::log2(eps) + (1.0 - eps) * std::log2(1.0 - eps));
}

LayerProgramResult layer_program(int k, double lambda1) {
  LayerProgramResult out;
  if (k < 0 || !(lambda1 > 0.0)) {
    out.T = kInf;
    return out;
  }
  out.feasible = true;
  if (lambda1 >= 1.0) {
    out.params.k = k;
    out.params.mu = 1.0;
    out.T = 0.0;
    return out;
  }
  // Any lambda' <= lambda1 is also available; scan down to the symmetric switch point.
  const double lo = std::min(lambda1, kSymmetricFraction);
  double best_lambda = lambda1;
  RawProgram best = cached_raw(k, lambda1);
  for (int i = 0;; ++i) {
    const double l = lo + kGridStep * i;
    if (l >= lambda1 - kEps) break;
    const RawProgram r = cached_raw(k, l);
    if (r.T < best.T - kEps) {
      best = r;
      best_lambda = l;
    }
  }
  out.T = best.T;
  out.params = params_from(k, best_lambda, best);
  // A layer can always be collapsed, so k - 1 layers are feasible for k; interpolation noise in
  // the chain tables can hide that, hence the explicit minimum.
  if (k > 0) {
    const LayerProgramResult fewer = layer_program(k - 1, lambda1);
    if (fewer.T < out.T) return fewer;
  }
  return out;
}

Variant parse_variant(std::string_view name) {
  if (name == "classical") return Variant::kClassical;
  if (name == "q-poly") return Variant::kQPoly;
  if (name == "q-dp") return Variant::kQDp;
  if (name == "q-main") return Variant::kQMain;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kClassical: return "classical";
    case Variant::kQPoly: return "q-poly";
    case Variant::kQDp: return "q-dp";
    case Variant::kQMain: return "q-main";
  }
  return "unknown";
}

double subproblem_exponent(double lambda, int k) {
  if (lambda >= 1.0) return 0.0;
  if (lambda <= kSymmetricFraction) return symmetric_exponent();
  return SubproblemCurve::instance().at(lambda, k);
}

ExponentReport balance_parameters(Variant variant, int k) {
  if (k < 0) throw std::invalid_argument("balance_parameters: k must be non-negative");
  ExponentReport rep;
  rep.variant = variant;
  rep.k = k;
  const double c0 = symmetric_exponent();

  switch (variant) {
    case Variant::kClassical:
    case Variant::kQPoly: {
      // Stage 1: 2^((1 + beta) n); stage 2: max_d C(n - d, beta n) 4^d.
      auto cost = [](double beta) {
        const double s2 = grid_max([&](double x) { return stage2_entropy(beta, x) + 2.0 * x; }, beta, 1.0 - beta).value;
        return std::max(1.0 + beta, s2);
      };
      const Argmin a = grid_then_golden(cost, 0.0, 0.5);
      rep.beta = a.x;
      rep.time_exponent = variant == Variant::kClassical ? a.value : a.value / 2.0;
      rep.space_exponent = 0.0;
      break;
    }
    case Variant::kQDp: {
      auto s1 = [&](double beta) { return 0.5 + beta * (c0 - 0.5); };
      auto s2 = [&](double beta) {
        return grid_max([&](double x) { return 0.5 * stage2_entropy(beta, x) + c0 * x; }, beta, 1.0 - beta).value;
      };
      const Argmin a = grid_then_golden([&](double b) { return std::max(s1(b), s2(b)); }, 0.0, 0.5);
      rep.beta = a.x;
      rep.time_exponent = a.value;
      rep.space_exponent = (1.0 - a.x) * c0;
      break;
    }
    case Variant::kQMain: {
      SubproblemCurve::instance().at(0.5, k);  // build the curve once
      auto texp = [&](double alpha, double size) {
        if (size <= 0.0) return 0.0;
        return subproblem_exponent(alpha / size, k);
      };
      auto s1 = [&](double alpha, double beta) {
        return grid_max([&](double c) { return (1.0 - c) / 2.0 + c * texp(alpha, c); }, 0.0, beta).value;
      };
      auto s2 = [&](double alpha, double beta) {
        return grid_max([&](double x) { return 0.5 * stage2_entropy(beta, x) + x * texp(alpha, x); }, beta, 1.0 - beta);
      };
      auto stages = [&](double alpha) {
        return grid_then_golden([&](double b) { return std::max(s1(alpha, b), s2(alpha, b).value); }, 0.0, 0.5);
      };
      const Argmin a = grid_then_golden([&](double alpha) { return std::max(be(alpha), stages(alpha).value); }, 0.0, 0.5);
      rep.alpha = a.x;
      rep.beta = stages(a.x).x;
      rep.time_exponent = a.value;
      rep.space_exponent = be(a.x);
      const Argmin worst = s2(rep.alpha, rep.beta);
      if (worst.x > 0.0) rep.layers = layer_program(k, std::min(1.0, rep.alpha / worst.x)).params;
      break;
    }
  }
  rep.time_base = std::exp2(rep.time_exponent);
  rep.space_base = std::exp2(rep.space_exponent);
  return rep;
}

std::vector<CurveRow> emit_curve(const std::vector<int>& ks, const std::vector<double>& lambda1_grid) {
  std::vector<CurveRow> rows;
  for (int k : ks) {
    for (double l : lambda1_grid) rows.push_back({l, k, layer_program(k, l).T});
  }
  return rows;
}

std::vector<double> default_curve_grid() {
  std::vector<double> g;
  for (int i = 29; i <= 99; ++i) g.push_back(i / 100.0);
  return g;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out = "lambda1,k,T\n";
  char buf[96];
  for (const CurveRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%d,%.6f\n", r.lambda1, r.k, r.T);
    out += buf;
  }
  return out;
}

double analytic_qdnc_cost(int s) { return std::exp2(static_cast<double>(s)); }

double analytic_qpoly_cost(int n, double beta) {
  const int b = floor_frac(beta, n);
  double stage1 = 0.0;
  for (int c = 0; c <= b; ++c) stage1 += std::exp2((n - c) / 2.0) * std::exp2(static_cast<double>(c));
  double stage2 = 0.0;
  for (int d = ceil_frac(beta, n); d <= floor_frac(1.0 - beta, n); ++d) {
    stage2 = std::max(stage2, std::sqrt(static_cast<double>(choose(n - d, b))) * std::exp2(static_cast<double>(d)));
  }
  return stage1 + stage2;
}

double analytic_improved_cost(int n, double alpha, double beta, int k) {
  const int a = floor_frac(alpha, n);
  const int b = floor_frac(beta, n);
  double precalc = 0.0;
  for (int j = 0; j <= a; ++j) precalc += static_cast<double>(choose(n, j));
  auto power = [&](int size) {
    if (size == 0) return 1.0;
    return std::exp2(subproblem_exponent(static_cast<double>(a) / size, k) * size);
  };
  double stage1 = 0.0;
  for (int c = 0; c <= b; ++c) stage1 += std::exp2((n - c) / 2.0) * power(c);
  double stage2 = 0.0;
  for (int d = ceil_frac(beta, n); d <= floor_frac(1.0 - beta, n); ++d) {
    stage2 = std::max(stage2, std::sqrt(static_cast<double>(choose(n - d, b))) * power(d));
  }
  return precalc + stage1 + stage2;
}

}  // namespace qtw
