#include "otoc/linalg.hpp"

#include <stdexcept>

namespace otoc {

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix d = m.adjoint() * m;
  d.diagonal().array() -= 1.0;
  return d.cwiseAbs().maxCoeff() < tol;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix herm_fn(const ComplexMatrix& op,
                      const std::function<double(double)>& f) {
  if (!is_hermitian(op))
    throw std::invalid_argument("herm_fn: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op);
  RealVector vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] = f(vals[i]);
  ComplexMatrix out = es.eigenvectors() * vals.asDiagonal() *
                      es.eigenvectors().adjoint();
  // symmetrize away roundoff
  return 0.5 * (out + out.adjoint());
}

ComplexMatrix herm_fn_complex(const ComplexMatrix& op,
                              const std::function<Complex(double)>& f) {
  if (!is_hermitian(op))
    throw std::invalid_argument("herm_fn_complex: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op);
  ComplexVector vals(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    vals[i] = f(es.eigenvalues()[i]);
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace otoc
