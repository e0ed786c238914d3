#pragma once

#include "otoc/circuit.hpp"
#include "otoc/hamiltonian.hpp"
#include "otoc/state.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace otoc {

struct GibbsSpec {
  HamiltonianTerms H;
  double beta = 1.0;
};

/// exp(-beta H) / Z.
DensityMatrix exact_gibbs(const GibbsSpec& spec);

/// F(rho) = Tr(H rho) - S(rho)/beta. Throws for beta <= 0.
double free_energy(const DensityMatrix& rho, const HamiltonianTerms& H,
                   double beta);

/// -log Z / beta, the free-energy minimum.
double gibbs_free_energy(const GibbsSpec& spec);

// Thermofield-double purification ansatz on 2n qubits: register A occupies
// sites [0, n), register S sites [n, 2n). Register A carries layers of Ry
// rotations separated by CNOT ladders (real amplitudes, well-spread Schmidt
// weights); register S carries Ry+Rz layers with CNOT ladders. All-zero
// parameters give the identity circuit.
struct TFDAnsatz {
  int n = 2;
  int layers_A = 2;
  int layers_S = 2;
  RealVector theta;  // length n * (layers_A + 1)
  RealVector phi;    // length 2 * n * (layers_S + 1)

  static TFDAnsatz zeros(int n, int layers_A, int layers_S);
  int theta_size() const { return n * (layers_A + 1); }
  int phi_size() const { return 2 * n * (layers_S + 1); }
  void check() const;
};

/// Full 2n-qubit purification circuit: U_A(theta), CNOT(A_i -> S_i), U_S(phi).
Circuit tfd_circuit(const TFDAnsatz& ansatz);

/// Schmidt weights p_i(theta): computational-basis populations of register A.
std::vector<double> tfd_schmidt_probs(const TFDAnsatz& ansatz);

/// rho_S = Tr_A |TFD><TFD|.
DensityMatrix tfd_system_state(const TFDAnsatz& ansatz);

using CostFn = std::function<double(const RealVector&)>;
/// Pluggable local minimizer: (cost, initial point, evaluation budget) -> point.
using Minimizer =
    std::function<RealVector(const CostFn&, const RealVector&, int)>;

struct OptimizerConfig {
  int max_evals = 60000;
  int restarts = 6;
  double tol = 1e-8;
  std::uint64_t seed = 1;
};

struct VQAResult {
  RealVector optimal_theta;
  RealVector optimal_phi;
  double free_energy = 0.0;
  double fidelity_to_exact = 0.0;
  int iterations = 0;
  std::vector<double> cost_history;  // best-so-far, non-increasing
  bool converged = false;
};

/// Derivative-free Nelder-Mead local search with restarts.
RealVector nelder_mead(const CostFn& cost, const RealVector& init, int budget);

/// Minimize F(theta, phi) = Tr[H rho_S] - S(p(theta))/beta over the ansatz.
/// The entropy term is computed classically from p_i(theta), never from rho_S.
VQAResult vqa_optimize(const GibbsSpec& spec, const TFDAnsatz& ansatz,
                       const OptimizerConfig& cfg,
                       const Minimizer& minimize = {});

}  // namespace otoc
