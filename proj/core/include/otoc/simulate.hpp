#pragma once

#include "otoc/circuit.hpp"
#include "otoc/pauli.hpp"
#include "otoc/state.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace otoc {

struct ShotResult {
  std::map<std::string, long> counts;  // bitstring in measurement-list order
  long shots = 0;
  std::uint64_t seed = 0;

  /// Average of prod_j (-1)^{bit_j} over shots (all measured sites).
  double parity_expectation() const;
};

/// Apply a k-site gate matrix in place; sites follow the global convention
/// (site 0 = most significant bit of the basis index).
void apply_gate(ComplexVector& psi, int n, const Gate& g);

PureState simulate_pure(const Circuit& circuit, const PureState& input);
DensityMatrix simulate_density(const Circuit& circuit,
                               const DensityMatrix& input);

/// Exact joint Born distribution over the measured sites, after the declared
/// basis rotations. Outcome index packs bits in measurement-list order
/// (first measurement = most significant bit).
std::vector<double> outcome_distribution(const Circuit& circuit,
                                         const QuantumState& input);

ShotResult sample(const Circuit& circuit, const QuantumState& input,
                  long shots, std::uint64_t seed);

/// Multinomial draw from a precomputed outcome distribution (n_bits-wide
/// outcome index, as produced by outcome_distribution).
ShotResult sample_distribution(const std::vector<double>& probs, int n_bits,
                               long shots, std::uint64_t seed);

/// Tr(O * final state); measurements are ignored.
Complex expectation_exact(const Circuit& circuit, const QuantumState& input,
                          const std::vector<PauliString>& observable);

}  // namespace otoc
