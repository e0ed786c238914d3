#pragma once

#include "otoc/circuit.hpp"
#include "otoc/hamiltonian.hpp"

namespace otoc {

struct TrotterConfig {
  int order = 2;           // 1 or 2 (Strang)
  int steps_per_unit = 4;  // steps per unit of evolution time
};

/// Product-formula circuit for exp(-i H tau): even/odd bond layers plus a
/// single-qubit field layer; symmetric ordering for order 2. System sites are
/// placed at [site_offset, site_offset + H.n) inside a register of
/// total_qubits (defaults to the system alone).
Circuit trotter_circuit(const HamiltonianTerms& H, double tau,
                        const TrotterConfig& cfg, int site_offset = 0,
                        int total_qubits = -1);

}  // namespace otoc
