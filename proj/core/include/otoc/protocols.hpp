#pragma once

#include "otoc/oracle.hpp"
#include "otoc/simulate.hpp"
#include "otoc/trotter.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace otoc {

enum class EvolutionMode { ExactGate, Trotter };

struct Evolution {
  EvolutionMode mode = EvolutionMode::ExactGate;
  TrotterConfig trotter{};
};

struct RTMConfig {
  OTOCSpec spec;
  long shots = 1000;
  int reps = 10;
  std::uint64_t seed = 0;
  Evolution evolution{};
};

struct WMMConfig {
  OTOCSpec spec;
  std::array<double, 4> phis{M_PI / 2, M_PI / 2, M_PI / 2, M_PI / 2};
  long shots = 1000;
  int reps = 10;
  std::uint64_t seed = 0;
  Evolution evolution{};
};

struct ISMConfig {
  OTOCSpec spec;
  double theta = 0.4;
  std::vector<double> theta_sweep{};  // optional extrapolation grid
  long shots = 1000;
  int reps = 10;
  std::uint64_t seed = 0;
  Evolution evolution{};
  double snr_floor = 1.0;  // flag when 1/(2 theta^2 sqrt(shots)) exceeds this
};

struct EstimateRecord {
  std::string protocol;
  double delta = std::numeric_limits<double>::quiet_NaN();  // set by harness
  double beta = 0.0;
  double tau = 0.0;
  double mean_C = 0.0;
  double std_C = 0.0;  // sample std over reps (denominator reps - 1)
  long shots = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  double oracle_C = 0.0;
  std::map<std::string, std::string> metadata;
};

/// How the system register is fed. Purification mode appends a register
/// carrying the thermal purification and runs the pure backend.
struct ThermalInput {
  DensityMatrix rho_system;
  bool purification = false;
};

ThermalInput exact_thermal_input(const OTOCSpec& spec,
                                 bool purification = false);

// ---- weak-measurement algebra (WMM building blocks) ----

/// Kraus operator M_a(phi) with a = 0 the +A branch:
/// M_a = (cos(phi/2) I + (-1)^a sin(phi/2) A) / sqrt(2).
ComplexMatrix weak_measurement_kraus(const ComplexMatrix& A, double phi, int a);

/// alpha_a(phi) = (-1)^a / sin(phi); at phi = pi/2 these are the eigenvalues.
double modified_eigenvalue(int a, double phi);

/// Z-readout bit of the probe maps to the outcome label a = 1 - bit
/// (the z+ branch of <z a|S_A(phi)|x+> carries the minus sign).
inline int outcome_label_from_z_bit(int bit) { return 1 - bit; }

// ---- circuit builders ----
// Register layouts (site 0 leftmost): RTM control = 0, WMM probes
// (v, w, v', w') = 0..3, ISM ancilla Q = 0; system follows; the purifier
// register, when present, comes last. Ancilla |+> preparations are part of
// the circuit, so inputs start ancillas in |0>.

std::pair<Circuit, Circuit> rtm_build(const RTMConfig& cfg,
                                      bool purification = false);
Circuit wmm_build(const WMMConfig& cfg, bool purification = false);
Circuit ism_build(const ISMConfig& cfg, bool purification = false,
                  std::optional<double> theta_override = std::nullopt);

// ---- exact-expectation mode ----

Complex rtm_exact_f(const RTMConfig& cfg, const ThermalInput& input);
double rtm_exact_c(const RTMConfig& cfg, const ThermalInput& input);
double wmm_exact_c(const WMMConfig& cfg, const ThermalInput& input);
/// Raw finite-theta estimate (1 - <X>_Q) / (2 theta^2).
double ism_exact_c(const ISMConfig& cfg, const ThermalInput& input,
                   std::optional<double> theta_override = std::nullopt);
/// Richardson extrapolation in theta^2 over cfg.theta_sweep.
double ism_exact_c_extrapolated(const ISMConfig& cfg,
                                const ThermalInput& input);

// ---- shot-sampled estimators ----

EstimateRecord rtm_estimate(const RTMConfig& cfg, const ThermalInput& input);
EstimateRecord wmm_estimate(const WMMConfig& cfg, const ThermalInput& input);
EstimateRecord ism_estimate(const ISMConfig& cfg, const ThermalInput& input);

// ---- irreversibility route (channel level) ----

using Channel = std::function<DensityMatrix(const DensityMatrix&)>;

/// L = (D_W (x) 1_Q) o U_{V,theta} o A_rho : 1-qubit Q state -> Q+S state.
Channel ism_process(const OTOCSpec& spec, double theta);
/// R = J_S o U^dag_{V,theta} : Q+S state -> 1-qubit Q state.
Channel ism_recovery(const OTOCSpec& spec, double theta);

/// {(1/2, |+><+|), (1/2, |-><-|)}.
std::vector<std::pair<double, DensityMatrix>> ensemble_half_pm();

/// delta = sqrt(sum_k p_k D_F(rho_k, R(L(rho_k)))^2).
double irreversibility_delta(
    const Channel& process, const Channel& recovery,
    const std::vector<std::pair<double, DensityMatrix>>& ensemble);

/// Polynomial extrapolation to theta -> 0 of (theta, estimate) pairs,
/// treating the estimate as a polynomial in theta^2.
double richardson_theta2(const std::vector<std::pair<double, double>>& pts);

}  // namespace otoc
