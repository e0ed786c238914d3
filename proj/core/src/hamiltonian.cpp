#include "otoc/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace otoc {

HamiltonianTerms build_xxz(const XXZParams& params) {
  if (params.n < 2) throw std::invalid_argument("build_xxz: n must be >= 2");
  const int n = params.n;
  HamiltonianTerms out;
  out.n = n;

  auto bond_word = [&](int i, Pauli p) {
    std::vector<Pauli> w(n, Pauli::I);
    w[i] = p;
    w[i + 1] = p;
    return PauliString(std::move(w));
  };
  for (int i = 0; i + 1 < n; ++i) {
    out.terms.emplace_back(bond_word(i, Pauli::X), -0.25);
    out.terms.emplace_back(bond_word(i, Pauli::Y), -0.25);
    out.terms.emplace_back(bond_word(i, Pauli::Z), -0.25 * params.delta);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Pauli> w(n, Pauli::I);
    w[i] = Pauli::Z;
    out.terms.emplace_back(PauliString(std::move(w)), -params.h);
  }

  const Eigen::Index dim = out.dim();
  out.dense = ComplexMatrix::Zero(dim, dim);
  for (const auto& [word, coeff] : out.terms)
    out.dense += coeff * word.to_matrix();
  return out;
}

ComplexMatrix exact_propagator(const HamiltonianTerms& H, double tau) {
  if (!std::isfinite(tau))
    throw std::invalid_argument("exact_propagator: tau not finite");
  if (!is_hermitian(H.dense))
    throw std::invalid_argument("exact_propagator: H not Hermitian");
  if (tau == 0.0)
    return ComplexMatrix::Identity(H.dim(), H.dim());
  return herm_fn_complex(H.dense, [tau](double lambda) {
    return std::exp(Complex(0.0, -lambda * tau));
  });
}

ComplexMatrix heisenberg_op(const ComplexMatrix& W0, const HamiltonianTerms& H,
                            double tau) {
  if (W0.rows() != H.dim() || W0.cols() != H.dim())
    throw std::invalid_argument("heisenberg_op: dimension mismatch");
  const ComplexMatrix U = exact_propagator(H, tau);
  return U.adjoint() * W0 * U;
}

}  // namespace otoc
