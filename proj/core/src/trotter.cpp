#include "otoc/trotter.hpp"

#include <cmath>
#include <stdexcept>

namespace otoc {

namespace {

ComplexMatrix exp_minus_i(const ComplexMatrix& herm, double t) {
  return herm_fn_complex(
      herm, [t](double lambda) { return std::exp(Complex(0.0, -lambda * t)); });
}

struct GroupedTerms {
  std::vector<ComplexMatrix> bond;   // index i -> 4x4 on (i, i+1)
  std::vector<ComplexMatrix> field;  // index i -> 2x2 on i
};

GroupedTerms group_terms(const HamiltonianTerms& H) {
  const int n = H.n;
  GroupedTerms g;
  g.bond.assign(std::max(0, n - 1), ComplexMatrix::Zero(4, 4));
  g.field.assign(n, ComplexMatrix::Zero(2, 2));
  for (const auto& [word, coeff] : H.terms) {
    std::vector<int> support;
    for (int s = 0; s < n; ++s)
      if (word.word[s] != Pauli::I) support.push_back(s);
    if (support.empty()) continue;
    if (support.size() == 1) {
      g.field[support[0]] += coeff * pauli_matrix(word.word[support[0]]);
    } else if (support.size() == 2 && support[1] == support[0] + 1) {
      g.bond[support[0]] += coeff * kron(pauli_matrix(word.word[support[0]]),
                                         pauli_matrix(word.word[support[1]]));
    } else {
      throw std::invalid_argument(
          "trotter_circuit: only nearest-neighbor + on-site terms supported");
    }
  }
  return g;
}

}  // namespace

Circuit trotter_circuit(const HamiltonianTerms& H, double tau,
                        const TrotterConfig& cfg, int site_offset,
                        int total_qubits) {
  if (cfg.order != 1 && cfg.order != 2)
    throw std::invalid_argument("trotter_circuit: order must be 1 or 2");
  if (cfg.steps_per_unit < 1)
    throw std::invalid_argument("trotter_circuit: steps_per_unit must be >= 1");
  if (!std::isfinite(tau))
    throw std::invalid_argument("trotter_circuit: tau not finite");

  const int n = H.n;
  if (total_qubits < 0) total_qubits = site_offset + n;
  Circuit c(total_qubits);
  if (tau == 0.0) return c;

  const int steps = std::max(
      1, static_cast<int>(std::ceil(cfg.steps_per_unit * std::abs(tau))));
  const double dt = tau / steps;
  const GroupedTerms g = group_terms(H);

  auto bond_layer = [&](Circuit& out, int parity, double t) {
    for (int i = parity; i + 1 < n; i += 2) {
      if (g.bond[i].isZero(0)) continue;
      out.add(Gate::local(exp_minus_i(g.bond[i], t),
                          {site_offset + i, site_offset + i + 1},
                          "bond(" + std::to_string(i) + ")"));
    }
  };
  auto field_layer = [&](Circuit& out, double t) {
    for (int i = 0; i < n; ++i) {
      if (g.field[i].isZero(0)) continue;
      out.add(Gate::local(exp_minus_i(g.field[i], t), {site_offset + i},
                          "field(" + std::to_string(i) + ")"));
    }
  };

  for (int s = 0; s < steps; ++s) {
    if (cfg.order == 1) {
      bond_layer(c, 0, dt);
      bond_layer(c, 1, dt);
      field_layer(c, dt);
    } else {
      bond_layer(c, 0, dt / 2);
      bond_layer(c, 1, dt / 2);
      field_layer(c, dt);
      bond_layer(c, 1, dt / 2);
      bond_layer(c, 0, dt / 2);
    }
  }
  return c;
}

}  // namespace otoc
