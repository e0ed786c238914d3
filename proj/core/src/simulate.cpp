#include "otoc/simulate.hpp"

#include "otoc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace otoc {

namespace {

const ComplexMatrix& basis_rotation(Basis b) {
  static const ComplexMatrix hadamard = [] {
    ComplexMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return ComplexMatrix(m / std::sqrt(2.0));
  }();
  // Maps |y+-> to |z+->: (1/sqrt2) [[1, -i], [1, i]]
  static const ComplexMatrix y_rot = [] {
    ComplexMatrix m(2, 2);
    m << Complex(1, 0), Complex(0, -1), Complex(1, 0), Complex(0, 1);
    return ComplexMatrix(m / std::sqrt(2.0));
  }();
  static const ComplexMatrix identity = ComplexMatrix::Identity(2, 2);
  switch (b) {
    case Basis::X: return hadamard;
    case Basis::Y: return y_rot;
    case Basis::Z: return identity;
  }
  throw std::logic_error("basis_rotation: bad basis");
}

void apply_pauli(ComplexVector& psi, int n, const PauliString& p) {
  const Eigen::Index dim = psi.size();
  ComplexVector out = ComplexVector::Zero(dim);
  const Complex im(0.0, 1.0);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index row = col;
    Complex phase = p.coefficient;
    for (int s = 0; s < n; ++s) {
      const Eigen::Index mask = Eigen::Index(1) << (n - 1 - s);
      const bool bit = (col & mask) != 0;
      switch (p.word[s]) {
        case Pauli::I: break;
        case Pauli::X: row ^= mask; break;
        case Pauli::Y: row ^= mask; phase *= bit ? -im : im; break;
        case Pauli::Z: if (bit) phase = -phase; break;
      }
    }
    out[row] += phase * psi[col];
  }
  psi = std::move(out);
}

Complex pauli_trace_against(const ComplexMatrix& rho, int n,
                            const PauliString& p) {
  // Tr(Gamma rho) for a monomial Gamma.
  const Eigen::Index dim = rho.rows();
  const Complex im(0.0, 1.0);
  Complex tr = 0.0;
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index row = col;
    Complex phase = p.coefficient;
    for (int s = 0; s < n; ++s) {
      const Eigen::Index mask = Eigen::Index(1) << (n - 1 - s);
      const bool bit = (col & mask) != 0;
      switch (p.word[s]) {
        case Pauli::I: break;
        case Pauli::X: row ^= mask; break;
        case Pauli::Y: row ^= mask; phase *= bit ? -im : im; break;
        case Pauli::Z: if (bit) phase = -phase; break;
      }
    }
    tr += phase * rho(col, row);
  }
  return tr;
}

Circuit with_basis_rotations(const Circuit& circuit) {
  Circuit rotated = circuit;
  for (const Measurement& m : circuit.measurements) {
    if (m.basis == Basis::Z) continue;
    rotated.add(Gate::local(basis_rotation(m.basis), {m.site}, "basis-rot"));
  }
  return rotated;
}

}  // namespace

double ShotResult::parity_expectation() const {
  double acc = 0.0;
  for (const auto& [bits, count] : counts) {
    int ones = 0;
    for (char c : bits)
      if (c == '1') ++ones;
    acc += (ones % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(count);
  }
  return shots > 0 ? acc / static_cast<double>(shots) : 0.0;
}

void apply_gate(ComplexVector& psi, int n, const Gate& g) {
  const std::vector<int> sites = g.acting_sites();
  const int k = static_cast<int>(sites.size());
  const ComplexMatrix u = g.expanded_unitary();
  const Eigen::Index udim = Eigen::Index(1) << k;
  const Eigen::Index dim = psi.size();

  std::vector<Eigen::Index> bitpos(k);
  Eigen::Index site_mask = 0;
  for (int j = 0; j < k; ++j) {
    bitpos[j] = Eigen::Index(1) << (n - 1 - sites[j]);
    site_mask |= bitpos[j];
  }
  std::vector<Eigen::Index> offset(udim);
  for (Eigen::Index m = 0; m < udim; ++m) {
    Eigen::Index off = 0;
    for (int j = 0; j < k; ++j)
      if ((m >> (k - 1 - j)) & 1) off |= bitpos[j];
    offset[m] = off;
  }

  ComplexVector block(udim);
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & site_mask) continue;
    for (Eigen::Index m = 0; m < udim; ++m) block[m] = psi[base | offset[m]];
    for (Eigen::Index m = 0; m < udim; ++m) {
      Complex acc = 0.0;
      for (Eigen::Index l = 0; l < udim; ++l) acc += u(m, l) * block[l];
      psi[base | offset[m]] = acc;
    }
  }
}

PureState simulate_pure(const Circuit& circuit, const PureState& input) {
  if (circuit.n_qubits != input.n_qubits)
    throw std::invalid_argument("simulate_pure: register size mismatch");
  circuit.check_sites();
  PureState out = input;
  for (const Gate& g : circuit.gates)
    apply_gate(out.amplitudes, out.n_qubits, g);
  if (std::abs(out.amplitudes.norm() - 1.0) > 1e-10)
    throw std::runtime_error("simulate_pure: norm drift");
  return out;
}

DensityMatrix simulate_density(const Circuit& circuit,
                               const DensityMatrix& input) {
  if (circuit.n_qubits != input.n_qubits)
    throw std::invalid_argument("simulate_density: register size mismatch");
  circuit.check_sites();
  DensityMatrix out = input;
  const int n = out.n_qubits;
  // rho -> U rho U^dag via the statevector kernel: columns of U rho, then
  // columns of (U (U rho)^dag)^dag, avoiding full-dimension embeddings
  for (const Gate& g : circuit.gates) {
    for (int pass = 0; pass < 2; ++pass) {
      out.matrix.adjointInPlace();
      for (Eigen::Index col = 0; col < out.matrix.cols(); ++col) {
        ComplexVector v = out.matrix.col(col);
        apply_gate(v, n, g);
        out.matrix.col(col) = v;
      }
    }
  }
  return out;
}

std::vector<double> outcome_distribution(const Circuit& circuit,
                                         const QuantumState& input) {
  if (circuit.measurements.empty())
    throw std::invalid_argument("outcome_distribution: no measurements");
  const Circuit rotated = with_basis_rotations(circuit);
  const int n = circuit.n_qubits;
  const int k = static_cast<int>(circuit.measurements.size());
  const Eigen::Index n_outcomes = Eigen::Index(1) << k;

  // diagonal of the final state in the rotated computational basis
  RealVector diag;
  if (std::holds_alternative<PureState>(input)) {
    const PureState fin = simulate_pure(rotated, std::get<PureState>(input));
    diag = fin.amplitudes.cwiseAbs2();
  } else {
    const DensityMatrix fin =
        simulate_density(rotated, std::get<DensityMatrix>(input));
    diag = fin.matrix.diagonal().real();
  }

  std::vector<double> probs(n_outcomes, 0.0);
  for (Eigen::Index idx = 0; idx < diag.size(); ++idx) {
    Eigen::Index outcome = 0;
    for (int j = 0; j < k; ++j) {
      const int s = circuit.measurements[j].site;
      if ((idx >> (n - 1 - s)) & 1) outcome |= Eigen::Index(1) << (k - 1 - j);
    }
    probs[outcome] += std::max(0.0, diag[idx]);
  }
  // renormalize away roundoff
  double total = 0.0;
  for (double p : probs) total += p;
  if (total > 0.0)
    for (double& p : probs) p /= total;
  return probs;
}

ShotResult sample(const Circuit& circuit, const QuantumState& input,
                  long shots, std::uint64_t seed) {
  const std::vector<double> probs = outcome_distribution(circuit, input);
  return sample_distribution(
      probs, static_cast<int>(circuit.measurements.size()), shots, seed);
}

ShotResult sample_distribution(const std::vector<double>& probs, int n_bits,
                               long shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
  const int k = n_bits;

  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }

  Rng rng(seed);
  std::vector<long> tallies(probs.size(), 0);
  for (long s = 0; s < shots; ++s) {
    const double u = rng.next_double();
    std::size_t idx = 0;
    while (idx + 1 < cdf.size() && u >= cdf[idx]) ++idx;
    ++tallies[idx];
  }

  ShotResult out;
  out.shots = shots;
  out.seed = seed;
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    if (tallies[i] == 0) continue;
    std::string bits(k, '0');
    for (int j = 0; j < k; ++j)
      if ((i >> (k - 1 - j)) & 1) bits[j] = '1';
    out.counts[bits] = tallies[i];
  }
  return out;
}

Complex expectation_exact(const Circuit& circuit, const QuantumState& input,
                          const std::vector<PauliString>& observable) {
  const int n = circuit.n_qubits;
  Circuit bare = circuit;
  bare.measurements.clear();
  Complex acc = 0.0;
  if (std::holds_alternative<PureState>(input)) {
    const PureState fin = simulate_pure(bare, std::get<PureState>(input));
    for (const PauliString& term : observable) {
      ComplexVector v = fin.amplitudes;
      apply_pauli(v, n, term);
      acc += fin.amplitudes.dot(v);  // Eigen dot conjugates the left side
    }
  } else {
    const DensityMatrix fin =
        simulate_density(bare, std::get<DensityMatrix>(input));
    for (const PauliString& term : observable)
      acc += pauli_trace_against(fin.matrix, n, term);
  }
  return acc;
}

}  // namespace otoc
