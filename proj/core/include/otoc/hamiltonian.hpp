#pragma once

#include "otoc/pauli.hpp"

#include <utility>
#include <vector>

namespace otoc {

struct XXZParams {
  int n = 2;
  double delta = 0.5;
  double h = 0.25;

  /// Field rule h = (1 - delta) / 2.
  static XXZParams with_field_rule(int n, double delta) {
    return {n, delta, (1.0 - delta) / 2.0};
  }
};

struct HamiltonianTerms {
  int n = 0;
  std::vector<std::pair<PauliString, double>> terms;
  ComplexMatrix dense;

  Eigen::Index dim() const { return Eigen::Index(1) << n; }
};

/// Open-boundary XXZ chain in a transverse field:
/// H = -(1/4) sum_i (X_i X_{i+1} + Y_i Y_{i+1} + delta Z_i Z_{i+1})
///     - h sum_i Z_i
HamiltonianTerms build_xxz(const XXZParams& params);

/// U(tau) = exp(-i H tau).
ComplexMatrix exact_propagator(const HamiltonianTerms& H, double tau);

/// W(tau) = U^dag(tau) W0 U(tau).
ComplexMatrix heisenberg_op(const ComplexMatrix& W0, const HamiltonianTerms& H,
                            double tau);

}  // namespace otoc
