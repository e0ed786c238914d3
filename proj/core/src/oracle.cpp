#include "otoc/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace otoc {

namespace {

ComplexMatrix fractional_power(const DensityMatrix& rho, double kappa) {
  // eigenvalues below 1e-14 clamped to 0 before fractional powers
  return herm_fn(rho.matrix, [kappa](double x) {
    if (kappa == 0.0) return 1.0;
    return x > 1e-14 ? std::pow(x, kappa) : 0.0;
  });
}

}  // namespace

void OTOCSpec::check() const {
  if (W0.rows() != H.dim() || W0.cols() != H.dim() || V0.rows() != H.dim() ||
      V0.cols() != H.dim())
    throw std::invalid_argument("OTOCSpec: operator dimension mismatch");
  if (!is_hermitian(W0) || !is_unitary(W0))
    throw std::invalid_argument("OTOCSpec: W0 must be Hermitian and unitary");
  if (!is_hermitian(V0))
    throw std::invalid_argument("OTOCSpec: V0 must be Hermitian");
  if (!std::isfinite(tau) || !std::isfinite(beta) || beta < 0.0)
    throw std::invalid_argument("OTOCSpec: bad tau or beta");
}

double otoc_c(const OTOCSpec& spec) {
  spec.check();
  const DensityMatrix rho = exact_gibbs({spec.H, spec.beta});
  const ComplexMatrix wt = heisenberg_op(spec.W0, spec.H, spec.tau);
  const ComplexMatrix comm = wt * spec.V0 - spec.V0 * wt;
  return -(rho.matrix * comm * comm).trace().real();
}

Complex correlator_f(const OTOCSpec& spec) {
  spec.check();
  const DensityMatrix rho = exact_gibbs({spec.H, spec.beta});
  const ComplexMatrix wt = heisenberg_op(spec.W0, spec.H, spec.tau);
  return (rho.matrix * wt.adjoint() * spec.V0.adjoint() * wt * spec.V0)
      .trace();
}

double frobenius_form(const OTOCSpec& spec) {
  spec.check();
  const DensityMatrix rho = exact_gibbs({spec.H, spec.beta});
  const ComplexMatrix sqrt_rho = fractional_power(rho, 0.5);
  const ComplexMatrix wt = heisenberg_op(spec.W0, spec.H, spec.tau);
  const ComplexMatrix comm = wt * spec.V0 - spec.V0 * wt;
  return (sqrt_rho * comm).squaredNorm();
}

Complex regularized_f(const OTOCSpec& spec,
                      const std::array<double, 4>& kappas) {
  spec.check();
  double sum = 0.0;
  for (double k : kappas) {
    if (k < 0.0) throw std::invalid_argument("regularized_f: kappa < 0");
    sum += k;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("regularized_f: kappas must sum to 1");
  const DensityMatrix rho = exact_gibbs({spec.H, spec.beta});
  const ComplexMatrix wt = heisenberg_op(spec.W0, spec.H, spec.tau);
  return (fractional_power(rho, kappas[0]) * wt *
          fractional_power(rho, kappas[1]) * spec.V0 *
          fractional_power(rho, kappas[2]) * wt *
          fractional_power(rho, kappas[3]) * spec.V0)
      .trace();
}

std::map<std::string, double> operator_size_spectrum(const ComplexMatrix& W0,
                                                     const HamiltonianTerms& H,
                                                     double tau) {
  if (!is_unitary(W0))
    throw std::invalid_argument("operator_size_spectrum: W0 must be unitary");
  const ComplexMatrix wt = heisenberg_op(W0, H, tau);
  std::map<std::string, double> out;
  for (const PauliString& term : pauli_decompose(wt, H.n)) {
    const double weight = std::norm(term.coefficient);
    if (weight > 1e-14) out[term.word_str()] = weight;
  }
  return out;
}

std::pair<double, double> size_identity_check(const ComplexMatrix& W0,
                                              const HamiltonianTerms& H,
                                              double tau, int site) {
  if (site < 0 || site >= H.n)
    throw std::invalid_argument("size_identity_check: invalid site");
  const double d = 2.0;
  const double dim = static_cast<double>(H.dim());
  const ComplexMatrix wt = heisenberg_op(W0, H, tau);

  double lhs = 0.0;
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const ComplexMatrix gamma = embed_local(pauli_matrix(p), {site}, H.n);
    const ComplexMatrix comm = wt * gamma - gamma * wt;
    lhs += -(comm * comm).trace().real() / dim;
  }
  lhs /= d * d - 1.0;

  double weight = 0.0;
  for (const auto& [word, w] : operator_size_spectrum(W0, H, tau))
    if (word[site] != 'I') weight += w;
  const double rhs = (2.0 * d * d) / (d * d - 1.0) * weight;
  return {lhs, rhs};
}

}  // namespace otoc
