// qtw: exact treewidth solvers, exponent calculator and connected-set enumerator.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtw/decomposition.hpp"
#include "qtw/enumeration.hpp"
#include "qtw/exponents.hpp"
#include "qtw/graph_io.hpp"
#include "qtw/treewidth.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitFlags = 3;

struct Exit {
  int code;
  std::string message;
};

qtw::Graph load(const std::string& path) {
  try {
    return qtw::read_gr(path);
  } catch (const qtw::ParseError& e) {
    throw Exit{kExitParse, path + ": " + e.what()};
  } catch (const std::exception& e) {
    throw Exit{kExitParse, path + ": " + e.what()};
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Exit{kExitInternal, "cannot write " + path};
  out << text;
}

struct SolveArgs {
  std::string input;
  std::optional<std::string> algorithm;
  std::optional<double> beta;
  std::optional<double> alpha;
  int layers = 3;
  bool emit_ordering = false;
  std::string emit_td;
  std::string ledger;
  int threads = 1;
};

int run_solve(const SolveArgs& a) {
  const qtw::Graph g = load(a.input);
  qtw::Algorithm alg = g.size() <= 20 ? qtw::Algorithm::kDp : qtw::Algorithm::kFvPoly;
  qtw::TreewidthConfig cfg;
  try {
    if (a.algorithm) alg = qtw::parse_algorithm(*a.algorithm);
    if (a.beta && !(*a.beta >= 0.0 && *a.beta <= 0.5)) throw std::invalid_argument("--beta must lie in [0, 0.5]");
    if (a.alpha && !(*a.alpha >= 0.0 && *a.alpha <= 0.5)) throw std::invalid_argument("--alpha must lie in [0, 0.5]");
    if (a.layers < 0) throw std::invalid_argument("--layers must be non-negative");
    if (a.threads < 1) throw std::invalid_argument("--threads must be positive");
  } catch (const std::invalid_argument& e) {
    throw Exit{kExitFlags, e.what()};
  }
  cfg.alpha = a.alpha;
  cfg.beta = a.beta;
  if (a.beta) cfg.solve.beta = *a.beta;
  cfg.layers = a.layers;
  cfg.solve.threads = a.threads;
  if (a.threads > 1) cfg.solve.dp_kernel = qtw::DpKernel::kParallel;

  const auto t0 = std::chrono::steady_clock::now();
  const qtw::TreewidthResult r = qtw::treewidth(g, alg, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "width=" << r.width << "\n";
  std::cout << "algorithm=" << qtw::to_string(r.algorithm) << "\n";
  std::cout << "n=" << g.size() << "\n";
  std::cout << "fallback=" << (r.fallback ? 1 : 0) << "\n";
  std::printf("elapsed=%.6f\n", secs);
  std::fflush(stdout);
  if (r.algorithm == qtw::Algorithm::kTradeoff) std::cout << "peak_table_entries=" << r.peak_table_entries << "\n";

  if (a.emit_ordering || !a.emit_td.empty()) {
    const qtw::EliminationOrdering pi = qtw::ordering_for(g, r);
    if (qtw::ordering_width(g, pi) != r.width) throw Exit{kExitInternal, "ordering width disagrees with solver"};
    if (a.emit_ordering) {
      std::cout << "ordering=";
      for (std::size_t i = 0; i < pi.order().size(); ++i) std::cout << (i ? " " : "") << pi.order()[i] + 1;
      std::cout << "\n";
    }
    if (!a.emit_td.empty()) {
      const qtw::TreeDecomposition td = qtw::ordering_to_decomposition(g, pi);
      const qtw::TdCheck check = qtw::validate_decomposition(g, td);
      if (!check.ok || check.width != r.width) {
        throw Exit{kExitInternal, std::string("decomposition failed validation: ") + qtw::to_string(check.violation) +
                                      " " + check.detail};
      }
      write_file(a.emit_td, qtw::serialize_td(td, g.size()));
      std::cout << "td_width=" << check.width << "\n";
    }
  }

  if (r.ledger) {
    std::cout << "charged_queries=" << r.ledger->charged_queries() << "\n";
    std::cout << "classical_steps=" << r.ledger->classical_steps << "\n";
  }
  if (!a.ledger.empty()) {
    nlohmann::ordered_json j;
    j["algorithm"] = qtw::to_string(r.algorithm);
    j["n"] = g.size();
    j["width"] = r.width;
    j["fallback"] = r.fallback;
    const qtw::CostLedger ledger = r.ledger.value_or(qtw::CostLedger{});
    j["charged_queries"] = ledger.charged_queries();
    j["classical_steps"] = ledger.classical_steps;
    for (const auto& [phase, units] : ledger.breakdown()) j["phase." + phase] = units;
    write_file(a.ledger, j.dump(2) + "\n");
  }
  return 0;
}

struct ExponentArgs {
  std::string variant = "classical";
  int k = 3;
  std::string curve;
};

int run_exponents(const ExponentArgs& a) {
  qtw::Variant v;
  try {
    v = qtw::parse_variant(a.variant);
    if (a.k < 0) throw std::invalid_argument("--k must be non-negative");
  } catch (const std::invalid_argument& e) {
    throw Exit{kExitFlags, e.what()};
  }
  const qtw::ExponentReport r = qtw::balance_parameters(v, a.k);
  std::printf("variant=%s\nk=%d\nalpha=%.5f\nbeta=%.5f\ntime_exponent=%.6f\nbase=%.5f\nspace_exponent=%.6f\n"
              "space_base=%.5f\n",
              qtw::to_string(r.variant), r.k, r.alpha, r.beta, r.time_exponent, r.time_base, r.space_exponent,
              r.space_base);
  if (v == qtw::Variant::kQMain) {
    std::printf("layers.mu=%.5f\n", r.layers.mu);
    for (std::size_t i = 0; i < r.layers.lambda.size(); ++i) std::printf("layers.lambda%zu=%.5f\n", i + 1, r.layers.lambda[i]);
    for (std::size_t i = 0; i < r.layers.rho.size(); ++i) std::printf("layers.rho%zu=%.5f\n", r.layers.rho.size() - i, r.layers.rho[i]);
  }
  std::fflush(stdout);
  if (!a.curve.empty()) {
    const auto rows = qtw::emit_curve({0, 1, 2, 3}, qtw::default_curve_grid());
    write_file(a.curve, qtw::curve_csv(rows));
    std::cout << "curve_rows=" << rows.size() << "\n";
  }
  return 0;
}

struct EnumerateArgs {
  std::string input;
  int anchor = 1;
  int b = 0;
  int f = 0;
};

int run_enumerate(const EnumerateArgs& a) {
  const qtw::Graph g = load(a.input);
  const qtw::ConnectedSetQuery q{a.anchor - 1, a.b, a.f};
  try {
    if (a.anchor < 1) throw std::invalid_argument("--anchor is 1-based");
    q.validate(g.size());
  } catch (const std::invalid_argument& e) {
    throw Exit{kExitFlags, e.what()};
  }
  std::uint64_t count = 0;
  qtw::ConnectedSetEnumerator it(g, q);
  while (auto s = it.next()) {
    bool first = true;
    for (qtw::Vertex v : *s) {
      std::cout << (first ? "" : " ") << v + 1;
      first = false;
    }
    std::cout << "\n";
    ++count;
  }
  std::cout << "count=" << count << " bound=" << qtw::count_bound(a.b, a.f).value << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact treewidth: subset DP, fixed-bag search and a quantum query-cost model"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Compute the treewidth of a .gr graph");
  s->add_option("--input", solve.input, "PACE .gr file")->required();
  s->add_option("--algorithm", solve.algorithm, "dp|dnc|fv-poly|tradeoff|q-poly|q-dp|q-main");
  s->add_option("--beta", solve.beta);
  s->add_option("--alpha", solve.alpha);
  s->add_option("--layers", solve.layers, "Prefix layers k of the layered DP");
  s->add_flag("--emit-ordering", solve.emit_ordering);
  s->add_option("--emit-td", solve.emit_td, "Write a validated .td decomposition");
  s->add_option("--ledger", solve.ledger, "Write the cost ledger as JSON");
  s->add_option("--threads", solve.threads);

  ExponentArgs exps;
  auto* e = app.add_subcommand("exponents", "Balance the complexity exponents");
  e->add_option("--variant", exps.variant, "classical|q-poly|q-dp|q-main");
  e->add_option("--k", exps.k);
  e->add_option("--curve", exps.curve, "Write the T(lambda1) curve for k = 0..3 as CSV");

  EnumerateArgs en;
  auto* n = app.add_subcommand("enumerate", "List connected sets B with anchor in B, |B| = b + 1, |N(B)| = f");
  n->add_option("--input", en.input)->required();
  n->add_option("--anchor", en.anchor, "1-based anchor vertex")->required();
  n->add_option("--b", en.b)->required();
  n->add_option("--f", en.f)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kExitFlags;
  }

  try {
    if (*s) return run_solve(solve);
    if (*e) return run_exponents(exps);
    if (*n) return run_enumerate(en);
  } catch (const Exit& x) {
    std::cerr << "error: " << x.message << "\n";
    return x.code;
  } catch (const std::exception& x) {
    std::cerr << "internal error: " << x.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
