#pragma once

#include <vector>

namespace qtw {

/// Fractions of the subset hypercube used by the layered quantum DP. Sizes are taken relative to
/// the number of free vertices n'. Prefix layers lambda ascend, then the middle layer mu, then the
/// suffix layers rho (stored ascending, i.e. rho_k first and rho_1 last).
struct LayerParams {
  int k = 0;
  std::vector<double> lambda;  // lambda_1 < ... < lambda_k
  double mu = 0.0;
  std::vector<double> rho;     // rho_k < ... < rho_1

  /// Whether lambda_1 < ... < mu < ... < rho_1 <= 1 holds strictly (rho_1 = 1 allowed).
  bool strictly_ordered() const;
};

}  // namespace qtw
