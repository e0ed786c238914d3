#include "otoc/state.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace otoc {

PureState::PureState(int n, ComplexVector amps)
    : n_qubits(n), amplitudes(std::move(amps)) {
  if (amplitudes.size() != dim())
    throw std::invalid_argument("PureState: amplitude vector length mismatch");
}

PureState PureState::zero(int n) { return basis(n, 0); }

PureState PureState::basis(int n, Eigen::Index index) {
  ComplexVector v = ComplexVector::Zero(Eigen::Index(1) << n);
  v[index] = 1.0;
  return PureState(n, std::move(v));
}

void PureState::check_norm(double tol) const {
  if (std::abs(amplitudes.norm() - 1.0) > tol)
    throw std::runtime_error("PureState: norm deviates from 1");
}

DensityMatrix::DensityMatrix(int n, ComplexMatrix m)
    : n_qubits(n), matrix(std::move(m)) {
  if (matrix.rows() != dim() || matrix.cols() != dim())
    throw std::invalid_argument("DensityMatrix: dimension mismatch");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.n_qubits,
                       psi.amplitudes * psi.amplitudes.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  return DensityMatrix(n, ComplexMatrix::Identity(d, d) /
                              static_cast<double>(d));
}

void DensityMatrix::check_valid(double tol) const {
  if (!is_hermitian(matrix, tol))
    throw std::runtime_error("DensityMatrix: not Hermitian");
  if (std::abs(matrix.trace().real() - 1.0) > tol ||
      std::abs(matrix.trace().imag()) > tol)
    throw std::runtime_error("DensityMatrix: trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix,
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::runtime_error("DensityMatrix: negative eigenvalue");
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int n = rho.n_qubits;
  if (keep.empty())
    throw std::invalid_argument("partial_trace: empty keep list");
  std::set<int> uniq(keep.begin(), keep.end());
  if (uniq.size() != keep.size())
    throw std::invalid_argument("partial_trace: duplicate site index");
  for (int s : keep)
    if (s < 0 || s >= n)
      throw std::invalid_argument("partial_trace: site index out of range");

  const int k = static_cast<int>(keep.size());
  const Eigen::Index dim = rho.dim();
  const Eigen::Index kdim = Eigen::Index(1) << k;

  std::vector<Eigen::Index> bitpos(k);
  Eigen::Index keep_mask = 0;
  for (int j = 0; j < k; ++j) {
    bitpos[j] = Eigen::Index(1) << (n - 1 - keep[j]);
    keep_mask |= bitpos[j];
  }
  auto offset = [&](Eigen::Index m) {
    Eigen::Index off = 0;
    for (int j = 0; j < k; ++j)
      if ((m >> (k - 1 - j)) & 1) off |= bitpos[j];
    return off;
  };

  ComplexMatrix out = ComplexMatrix::Zero(kdim, kdim);
  for (Eigen::Index env = 0; env < dim; ++env) {
    if (env & keep_mask) continue;
    for (Eigen::Index mr = 0; mr < kdim; ++mr) {
      const Eigen::Index r = env | offset(mr);
      for (Eigen::Index mc = 0; mc < kdim; ++mc)
        out(mr, mc) += rho.matrix(r, env | offset(mc));
    }
  }
  return DensityMatrix(k, std::move(out));
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  auto clamped_sqrt = [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; };
  ComplexMatrix sqrt_rho = herm_fn(rho.matrix, clamped_sqrt);
  ComplexMatrix inner = sqrt_rho * sigma.matrix * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(inner,
                                                  Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    f += clamped_sqrt(es.eigenvalues()[i]);
  return std::min(f, 1.0);
}

double purified_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double f = uhlmann_fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix,
                                                  Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

}  // namespace otoc
