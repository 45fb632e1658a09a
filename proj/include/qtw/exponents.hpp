#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qtw/layer_params.hpp"

namespace qtw {

/// Base of the symmetric quantum subset DP, O*(1.81691^n).
inline constexpr double kSymmetricBase = 1.81691;
/// Precalculation fraction of the symmetric DP; below it the symmetric algorithm is used.
inline constexpr double kSymmetricFraction = 0.28448;

/// log2 of kSymmetricBase (about 0.8615).
double symmetric_exponent();

/// -(e log2 e + (1 - e) log2 (1 - e)), 0 at both ends. Throws std::invalid_argument outside [0, 1].
double binary_entropy(double eps);

struct LayerProgramResult {
  bool feasible = false;
  LayerParams params;
  /// Per-vertex time exponent: the layered DP runs in O*(2^(T n')).
  double T = 0.0;
};

/// Minimizes T(lambda1) = max(be(rho_1), be(mu)/2 + max(t_{k+1}, t'_{k+1})) over the layer fractions.
/// The result is non-increasing in k and in lambda1 (a smaller lambda1 may be used since the
/// precalculation holds all smaller sets; params.lambda[0] is the value actually used).
/// lambda1 >= 1 gives T = 0. k < 0 or lambda1 <= 0 is reported as infeasible.
LayerProgramResult layer_program(int k, double lambda1);

enum class Variant { kClassical, kQPoly, kQDp, kQMain };

/// Throws std::invalid_argument for an unknown name.
Variant parse_variant(std::string_view name);
const char* to_string(Variant v);

struct ExponentReport {
  Variant variant = Variant::kClassical;
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  /// Time is O*(2^(time_exponent n)) = O*(time_base^n); likewise for space.
  double time_exponent = 0.0;
  double space_exponent = 0.0;
  double time_base = 1.0;
  double space_base = 1.0;
  /// Inner layered-DP parameters at the worst stage point (q-main only).
  LayerParams layers;
};

ExponentReport balance_parameters(Variant variant, int k = 3);

struct CurveRow {
  double lambda1 = 0.0;
  int k = 0;
  double T = 0.0;
};

std::vector<CurveRow> emit_curve(const std::vector<int>& ks, const std::vector<double>& lambda1_grid);
/// lambda1 from 0.29 to 0.99 in steps of 0.01.
std::vector<double> default_curve_grid();
/// Header `lambda1,k,T`, six decimals.
std::string curve_csv(const std::vector<CurveRow>& rows);

/// Per-vertex exponent of the subproblem solver for lambda = alpha n / n': 0 when lambda >= 1,
/// the symmetric exponent when lambda <= kSymmetricFraction, otherwise layer_program(k, lambda).T.
double subproblem_exponent(double lambda, int k);

/// Analytic costs with exact binomials and the stage ranges of the solvers, constants dropped.
/// quantum_dnc on s free vertices: 2^s.
double analytic_qdnc_cost(int s);
/// Polynomial-space quantum algorithm: sum_c 2^((n-c)/2) 2^c + max_d sqrt(C(n-d, bn)) 2^d.
double analytic_qpoly_cost(int n, double beta);
/// Improved algorithm: sum_{j <= an} C(n, j) + sum_c 2^((n-c)/2) T(an/c)^c + max_d sqrt(C(n-d, bn)) T(an/d)^d.
double analytic_improved_cost(int n, double alpha, double beta, int k);

}  // namespace qtw
