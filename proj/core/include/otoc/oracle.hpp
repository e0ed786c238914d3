#pragma once

#include "otoc/hamiltonian.hpp"
#include "otoc/state.hpp"
#include "otoc/thermal.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace otoc {

/// One OTOC evaluation point. W0 must be Hermitian and unitary, V0 Hermitian.
struct OTOCSpec {
  HamiltonianTerms H;
  double beta = 1.0;
  ComplexMatrix W0;
  ComplexMatrix V0;
  double tau = 0.0;

  void check() const;
};

/// C = -Tr(rho_beta [W(tau), V(0)]^2).
double otoc_c(const OTOCSpec& spec);

/// F = Tr(rho_beta W^dag(tau) V^dag(0) W(tau) V(0)).
Complex correlator_f(const OTOCSpec& spec);

/// || sqrt(rho_beta) [W(tau), V(0)] ||_2^2 ; equal to otoc_c.
double frobenius_form(const OTOCSpec& spec);

/// Tr[rho^k1 W(tau) rho^k2 V rho^k3 W(tau) rho^k4 V], sum k_i = 1, k_i >= 0.
Complex regularized_f(const OTOCSpec& spec, const std::array<double, 4>& kappas);

/// Pauli weight map word -> |gamma|^2 of W(tau); weights sum to 1 for
/// unitary W0. Zero-weight words are omitted.
std::map<std::string, double> operator_size_spectrum(const ComplexMatrix& W0,
                                                     const HamiltonianTerms& H,
                                                     double tau);

/// Infinite-temperature operator-size identity at a site: lhs is the averaged
/// squared commutator against the 3 non-identity single-site Paulis, rhs is
/// (2 d^2 / (d^2 - 1)) times the Pauli weight non-trivial at the site.
std::pair<double, double> size_identity_check(const ComplexMatrix& W0,
                                              const HamiltonianTerms& H,
                                              double tau, int site);

}  // namespace otoc
