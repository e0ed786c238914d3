#pragma once

#include "otoc/linalg.hpp"

#include <variant>
#include <vector>

namespace otoc {

struct PureState {
  int n_qubits = 0;
  ComplexVector amplitudes;

  PureState() = default;
  PureState(int n, ComplexVector amps);
  static PureState zero(int n);
  /// Computational basis state |index>.
  static PureState basis(int n, Eigen::Index index);

  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits; }
  void check_norm(double tol = 1e-12) const;
};

struct DensityMatrix {
  int n_qubits = 0;
  ComplexMatrix matrix;

  DensityMatrix() = default;
  DensityMatrix(int n, ComplexMatrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n);

  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits; }
  /// Hermiticity, unit trace, numerical PSD (eigenvalues >= -1e-10).
  void check_valid(double tol = 1e-12) const;
};

using QuantumState = std::variant<PureState, DensityMatrix>;

/// Reduced density matrix on `keep` (output tensor order follows the list).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// Tr sqrt(sqrt(rho) sigma sqrt(rho)); negative eigenvalues clamped to 0.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sqrt(max(0, 1 - F^2)).
double purified_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace otoc
