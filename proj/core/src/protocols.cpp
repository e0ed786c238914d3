#include "otoc/protocols.hpp"

#include "otoc/rng.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace otoc {

namespace {

const ComplexMatrix& hadamard() {
  static const ComplexMatrix h = [] {
    ComplexMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return ComplexMatrix(m / std::sqrt(2.0));
  }();
  return h;
}

std::vector<int> system_sites(int offset, int n) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), offset);
  return s;
}

/// Forward evolution fragment on the system register.
Circuit evolution_fragment(const HamiltonianTerms& H, double tau,
                           const Evolution& ev, int offset, int total) {
  if (ev.mode == EvolutionMode::Trotter)
    return trotter_circuit(H, tau, ev.trotter, offset, total);
  Circuit c(total);
  if (tau != 0.0)
    c.add(Gate::local(exact_propagator(H, tau), system_sites(offset, H.n),
                      "U(tau)"));
  return c;
}

QuantumState assemble_input(int n_anc, const ThermalInput& input) {
  const int n = input.rho_system.n_qubits;
  const Eigen::Index adim = Eigen::Index(1) << n_anc;
  if (!input.purification) {
    ComplexMatrix anc = ComplexMatrix::Zero(adim, adim);
    anc(0, 0) = 1.0;
    return DensityMatrix(n_anc + n, kron(anc, input.rho_system.matrix));
  }
  // |0..0>_anc (x) sum_i sqrt(p_i) |e_i>_S |i>_P
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(input.rho_system.matrix);
  const Eigen::Index sdim = Eigen::Index(1) << n;
  ComplexVector psi = ComplexVector::Zero(adim * sdim * sdim);
  for (Eigen::Index i = 0; i < sdim; ++i) {
    const double p = std::max(0.0, es.eigenvalues()[i]);
    if (p < 1e-16) continue;
    const double amp = std::sqrt(p);
    for (Eigen::Index s = 0; s < sdim; ++s)
      psi[(s << n) | i] += amp * es.eigenvectors()(s, i);
  }
  psi /= psi.norm();
  return PureState(n_anc + 2 * n, std::move(psi));
}

int total_qubits(int n_anc, int n, bool purification) {
  return n_anc + n + (purification ? n : 0);
}

struct Stats {
  double mean = 0.0;
  double std = 0.0;
};

Stats mean_std(const std::vector<double>& xs) {
  Stats s;
  const int n = static_cast<int>(xs.size());
  if (n == 0) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (n > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(acc / (n - 1));
  }
  return s;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void record_evolution_metadata(EstimateRecord& rec, const Evolution& ev) {
  if (ev.mode == EvolutionMode::Trotter) {
    rec.metadata["trotter_order"] = std::to_string(ev.trotter.order);
    rec.metadata["trotter_steps_per_unit"] =
        std::to_string(ev.trotter.steps_per_unit);
  }
}

double parity_from_probs(const std::vector<double>& probs) {
  double x = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    x += (std::popcount(static_cast<unsigned long long>(i)) % 2 == 0 ? 1.0 : -1.0) * probs[i];
  return x;
}

}  // namespace

ThermalInput exact_thermal_input(const OTOCSpec& spec, bool purification) {
  return {exact_gibbs({spec.H, spec.beta}), purification};
}

ComplexMatrix weak_measurement_kraus(const ComplexMatrix& A, double phi,
                                     int a) {
  if (max_abs_diff(A * A, ComplexMatrix::Identity(A.rows(), A.cols())) > 1e-10)
    throw std::invalid_argument("weak_measurement_kraus: A is not dichotomic");
  const double sign = (a == 0) ? 1.0 : -1.0;
  return (std::cos(phi / 2) * ComplexMatrix::Identity(A.rows(), A.cols()) +
          sign * std::sin(phi / 2) * A) /
         std::sqrt(2.0);
}

double modified_eigenvalue(int a, double phi) {
  return (a == 0 ? 1.0 : -1.0) / std::sin(phi);
}

std::pair<Circuit, Circuit> rtm_build(const RTMConfig& cfg, bool purification) {
  cfg.spec.check();
  if (!is_unitary(cfg.spec.V0))
    throw std::invalid_argument("rtm_build: V must be unitary (controlled-V)");
  const int n = cfg.spec.H.n;
  const int total = total_qubits(1, n, purification);
  const std::vector<int> sys = system_sites(1, n);
  const Eigen::Index d = cfg.spec.H.dim();

  Circuit c(total);
  c.add(Gate::local(hadamard(), {0}, "H(control)"));
  c.add(Gate::controlled(0, cfg.spec.V0, sys, "cV"));
  c.extend(evolution_fragment(cfg.spec.H, cfg.spec.tau, cfg.evolution, 1, total));
  c.add(Gate::local(cfg.spec.W0, sys, "W"));
  c.extend(inverse_of(
      evolution_fragment(cfg.spec.H, cfg.spec.tau, cfg.evolution, 1, total)));
  // anti-controlled V: |0><0| (x) V + |1><1| (x) 1
  ComplexMatrix anti = ComplexMatrix::Identity(2 * d, 2 * d);
  anti.block(0, 0, d, d) = cfg.spec.V0;
  std::vector<int> ctrl_sys = {0};
  ctrl_sys.insert(ctrl_sys.end(), sys.begin(), sys.end());
  c.add(Gate::local(anti, ctrl_sys, "anti-cV"));

  Circuit cx = c, cy = c;
  cx.measure(0, Basis::X);
  cy.measure(0, Basis::Y);
  return {cx, cy};
}

Circuit wmm_build(const WMMConfig& cfg, bool purification) {
  cfg.spec.check();
  const ComplexMatrix eye =
      ComplexMatrix::Identity(cfg.spec.H.dim(), cfg.spec.H.dim());
  if (max_abs_diff(cfg.spec.W0 * cfg.spec.W0, eye) > 1e-10 ||
      max_abs_diff(cfg.spec.V0 * cfg.spec.V0, eye) > 1e-10)
    throw std::invalid_argument("wmm_build: W and V must be dichotomic");
  for (double phi : cfg.phis)
    if (!(phi > 0.0 && phi <= M_PI / 2 + 1e-12))
      throw std::invalid_argument("wmm_build: phi outside (0, pi/2]");

  const int n = cfg.spec.H.n;
  const int total = total_qubits(4, n, purification);
  const std::vector<int> sys = system_sites(4, n);
  const ComplexMatrix& y = pauli_matrix(Pauli::Y);

  Circuit c(total);
  for (int p = 0; p < 4; ++p)
    c.add(Gate::local(hadamard(), {p}, "H(probe)"));
  auto forward = [&] {
    return evolution_fragment(cfg.spec.H, cfg.spec.tau, cfg.evolution, 4, total);
  };
  // S_A(phi) = exp(-i (phi/2) A (x) Y)
  c.add(Gate::coupling(cfg.spec.V0, cfg.phis[0] / 2, 0, sys, y, "S_V(v)"));
  c.extend(forward());
  c.add(Gate::coupling(cfg.spec.W0, cfg.phis[1] / 2, 1, sys, y, "S_W(w)"));
  c.extend(inverse_of(forward()));
  c.add(Gate::coupling(cfg.spec.V0, cfg.phis[2] / 2, 2, sys, y, "S_V(v')"));
  c.extend(forward());
  c.add(Gate::coupling(cfg.spec.W0, cfg.phis[3] / 2, 3, sys, y, "S_W(w')"));
  for (int p = 0; p < 4; ++p) c.measure(p, Basis::Z);
  return c;
}

Circuit ism_build(const ISMConfig& cfg, bool purification,
                  std::optional<double> theta_override) {
  cfg.spec.check();
  const double theta = theta_override.value_or(cfg.theta);
  if (!(theta > 0.0))
    throw std::invalid_argument("ism_build: theta must be > 0");

  const int n = cfg.spec.H.n;
  const int total = total_qubits(1, n, purification);
  const std::vector<int> sys = system_sites(1, n);
  const ComplexMatrix& z = pauli_matrix(Pauli::Z);

  Circuit c(total);
  c.add(Gate::local(hadamard(), {0}, "H(Q)"));
  // U_V(theta) = exp(-i theta Z (x) V)
  c.add(Gate::coupling(cfg.spec.V0, theta, 0, sys, z, "U_V(theta)"));
  c.extend(evolution_fragment(cfg.spec.H, cfg.spec.tau, cfg.evolution, 1, total));
  c.add(Gate::local(cfg.spec.W0, sys, "W"));
  c.extend(inverse_of(
      evolution_fragment(cfg.spec.H, cfg.spec.tau, cfg.evolution, 1, total)));
  c.add(Gate::coupling(cfg.spec.V0, -theta, 0, sys, z, "U_V(theta)^dag"));
  c.measure(0, Basis::X);
  return c;
}

Complex rtm_exact_f(const RTMConfig& cfg, const ThermalInput& input) {
  const auto [cx, cy] = rtm_build(cfg, input.purification);
  const QuantumState state = assemble_input(1, input);
  const double x = parity_from_probs(outcome_distribution(cx, state));
  const double y = parity_from_probs(outcome_distribution(cy, state));
  return {x, y};
}

double rtm_exact_c(const RTMConfig& cfg, const ThermalInput& input) {
  return 2.0 * (1.0 - rtm_exact_f(cfg, input).real());
}

namespace {

double wmm_weighted_average(const std::vector<double>& probs,
                            const std::array<double, 4>& phis) {
  double acc = 0.0;
  for (std::size_t outcome = 0; outcome < probs.size(); ++outcome) {
    double w = 1.0;
    for (int j = 0; j < 4; ++j) {
      const int bit = (outcome >> (3 - j)) & 1;
      w *= modified_eigenvalue(outcome_label_from_z_bit(bit), phis[j]);
    }
    acc += w * probs[outcome];
  }
  return acc;
}

}  // namespace

double wmm_exact_c(const WMMConfig& cfg, const ThermalInput& input) {
  const Circuit c = wmm_build(cfg, input.purification);
  const QuantumState state = assemble_input(4, input);
  const double avg = wmm_weighted_average(outcome_distribution(c, state),
                                          cfg.phis);
  return 4.0 * (1.0 - avg);
}

double ism_exact_c(const ISMConfig& cfg, const ThermalInput& input,
                   std::optional<double> theta_override) {
  const double theta = theta_override.value_or(cfg.theta);
  const Circuit c = ism_build(cfg, input.purification, theta);
  const QuantumState state = assemble_input(1, input);
  const double x = parity_from_probs(outcome_distribution(c, state));
  return (1.0 - x) / (2.0 * theta * theta);
}

double ism_exact_c_extrapolated(const ISMConfig& cfg,
                                const ThermalInput& input) {
  if (cfg.theta_sweep.size() < 2)
    throw std::invalid_argument(
        "ism_exact_c_extrapolated: need >= 2 theta values");
  std::vector<std::pair<double, double>> pts;
  for (double theta : cfg.theta_sweep)
    pts.emplace_back(theta, ism_exact_c(cfg, input, theta));
  return richardson_theta2(pts);
}

EstimateRecord rtm_estimate(const RTMConfig& cfg, const ThermalInput& input) {
  if (cfg.shots < 1 || cfg.reps < 1)
    throw std::invalid_argument("rtm_estimate: shots and reps must be >= 1");
  const auto [cx, cy] = rtm_build(cfg, input.purification);
  const QuantumState state = assemble_input(1, input);
  const std::vector<double> probs_x = outcome_distribution(cx, state);
  const std::vector<double> probs_y = outcome_distribution(cy, state);

  std::vector<double> c_reps, re_f, im_f;
  for (int r = 0; r < cfg.reps; ++r) {
    const double x =
        sample_distribution(probs_x, 1, cfg.shots,
                            mix_seed({cfg.seed, 0xA1, (std::uint64_t)r, 0}))
            .parity_expectation();
    const double y =
        sample_distribution(probs_y, 1, cfg.shots,
                            mix_seed({cfg.seed, 0xA1, (std::uint64_t)r, 1}))
            .parity_expectation();
    c_reps.push_back(2.0 * (1.0 - x));
    re_f.push_back(x);
    im_f.push_back(y);
  }
  const Stats s = mean_std(c_reps);
  EstimateRecord rec;
  rec.protocol = "RTM";
  rec.beta = cfg.spec.beta;
  rec.tau = cfg.spec.tau;
  rec.mean_C = s.mean;
  rec.std_C = s.std;
  rec.shots = cfg.shots;
  rec.reps = cfg.reps;
  rec.seed = cfg.seed;
  rec.oracle_C = otoc_c(cfg.spec);
  rec.metadata["mean_re_F"] = fmt(mean_std(re_f).mean);
  rec.metadata["mean_im_F"] = fmt(mean_std(im_f).mean);
  record_evolution_metadata(rec, cfg.evolution);
  return rec;
}

EstimateRecord wmm_estimate(const WMMConfig& cfg, const ThermalInput& input) {
  if (cfg.shots < 1 || cfg.reps < 1)
    throw std::invalid_argument("wmm_estimate: shots and reps must be >= 1");
  const Circuit c = wmm_build(cfg, input.purification);
  const QuantumState state = assemble_input(4, input);
  const std::vector<double> probs = outcome_distribution(c, state);

  std::vector<double> c_reps;
  for (int r = 0; r < cfg.reps; ++r) {
    const ShotResult shots = sample_distribution(
        probs, 4, cfg.shots, mix_seed({cfg.seed, 0xB2, (std::uint64_t)r}));
    double acc = 0.0;
    for (const auto& [bits, count] : shots.counts) {
      double w = 1.0;
      for (int j = 0; j < 4; ++j)
        w *= modified_eigenvalue(outcome_label_from_z_bit(bits[j] == '1'),
                                 cfg.phis[j]);
      acc += w * static_cast<double>(count);
    }
    c_reps.push_back(4.0 * (1.0 - acc / static_cast<double>(cfg.shots)));
  }
  const Stats s = mean_std(c_reps);
  EstimateRecord rec;
  rec.protocol = "WMM";
  rec.beta = cfg.spec.beta;
  rec.tau = cfg.spec.tau;
  rec.mean_C = s.mean;
  rec.std_C = s.std;
  rec.shots = cfg.shots;
  rec.reps = cfg.reps;
  rec.seed = cfg.seed;
  rec.oracle_C = otoc_c(cfg.spec);
  for (int j = 0; j < 4; ++j)
    rec.metadata["phi_" + std::string{"vwVW"[j]}] = fmt(cfg.phis[j]);
  record_evolution_metadata(rec, cfg.evolution);
  return rec;
}

EstimateRecord ism_estimate(const ISMConfig& cfg, const ThermalInput& input) {
  if (cfg.shots < 1 || cfg.reps < 1)
    throw std::invalid_argument("ism_estimate: shots and reps must be >= 1");
  const QuantumState state = assemble_input(1, input);

  auto raw_reps = [&](double theta, std::uint64_t tag) {
    const Circuit c = ism_build(cfg, input.purification, theta);
    const std::vector<double> probs = outcome_distribution(c, state);
    std::vector<double> out;
    for (int r = 0; r < cfg.reps; ++r) {
      const double x =
          sample_distribution(probs, 1, cfg.shots,
                              mix_seed({cfg.seed, 0xC3, tag, (std::uint64_t)r}))
              .parity_expectation();
      out.push_back((1.0 - x) / (2.0 * theta * theta));
    }
    return out;
  };

  const std::vector<double> c_reps = raw_reps(cfg.theta, 0);
  const Stats s = mean_std(c_reps);
  EstimateRecord rec;
  rec.protocol = "ISM";
  rec.beta = cfg.spec.beta;
  rec.tau = cfg.spec.tau;
  rec.mean_C = s.mean;
  rec.std_C = s.std;
  rec.shots = cfg.shots;
  rec.reps = cfg.reps;
  rec.seed = cfg.seed;
  rec.oracle_C = otoc_c(cfg.spec);
  rec.metadata["theta"] = fmt(cfg.theta);
  record_evolution_metadata(rec, cfg.evolution);

  const double noise_amp =
      1.0 / (2.0 * cfg.theta * cfg.theta * std::sqrt((double)cfg.shots));
  if (noise_amp > cfg.snr_floor) rec.metadata["snr_flag"] = "1";

  if (cfg.theta_sweep.size() >= 2) {
    std::vector<std::vector<double>> sweep_reps;
    for (std::size_t t = 0; t < cfg.theta_sweep.size(); ++t)
      sweep_reps.push_back(raw_reps(cfg.theta_sweep[t], t + 1));
    std::vector<double> extrap;
    for (int r = 0; r < cfg.reps; ++r) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t t = 0; t < cfg.theta_sweep.size(); ++t)
        pts.emplace_back(cfg.theta_sweep[t], sweep_reps[t][r]);
      extrap.push_back(richardson_theta2(pts));
    }
    const Stats es = mean_std(extrap);
    rec.metadata["extrapolated_mean_C"] = fmt(es.mean);
    rec.metadata["extrapolated_std_C"] = fmt(es.std);
  }
  return rec;
}

Channel ism_process(const OTOCSpec& spec, double theta) {
  spec.check();
  const int n = spec.H.n;
  const DensityMatrix rho = exact_gibbs({spec.H, spec.beta});
  const ComplexMatrix uv = herm_fn_complex(
      kron(pauli_matrix(Pauli::Z), spec.V0), [theta](double lambda) {
        return std::exp(Complex(0.0, -lambda * theta));
      });
  const ComplexMatrix wt =
      kron(ComplexMatrix::Identity(2, 2), heisenberg_op(spec.W0, spec.H, spec.tau));
  return [n, rho, uv, wt](const DensityMatrix& q) {
    if (q.n_qubits != 1)
      throw std::invalid_argument("ism_process: expects a 1-qubit input");
    ComplexMatrix full = kron(q.matrix, rho.matrix);
    full = uv * full * uv.adjoint();
    full = wt * full * wt.adjoint();
    return DensityMatrix(1 + n, std::move(full));
  };
}

Channel ism_recovery(const OTOCSpec& spec, double theta) {
  spec.check();
  const int n = spec.H.n;
  const ComplexMatrix uv_dag =
      herm_fn_complex(kron(pauli_matrix(Pauli::Z), spec.V0),
                      [theta](double lambda) {
                        return std::exp(Complex(0.0, lambda * theta));
                      });
  return [n, uv_dag](const DensityMatrix& qs) {
    if (qs.n_qubits != 1 + n)
      throw std::invalid_argument("ism_recovery: dimension mismatch");
    const ComplexMatrix full = uv_dag * qs.matrix * uv_dag.adjoint();
    const DensityMatrix q = partial_trace(DensityMatrix(1 + n, full), {0});
    // dephase in the +- basis
    const ComplexMatrix x = pauli_matrix(Pauli::X);
    const ComplexMatrix pp = 0.5 * (ComplexMatrix::Identity(2, 2) + x);
    const ComplexMatrix pm = 0.5 * (ComplexMatrix::Identity(2, 2) - x);
    return DensityMatrix(1, pp * q.matrix * pp + pm * q.matrix * pm);
  };
}

std::vector<std::pair<double, DensityMatrix>> ensemble_half_pm() {
  const ComplexMatrix x = pauli_matrix(Pauli::X);
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  return {{0.5, DensityMatrix(1, 0.5 * (eye + x))},
          {0.5, DensityMatrix(1, 0.5 * (eye - x))}};
}

double irreversibility_delta(
    const Channel& process, const Channel& recovery,
    const std::vector<std::pair<double, DensityMatrix>>& ensemble) {
  double total_p = 0.0;
  double acc = 0.0;
  for (const auto& [p, rho] : ensemble) {
    total_p += p;
    const double d = purified_distance(rho, recovery(process(rho)));
    acc += p * d * d;
  }
  if (std::abs(total_p - 1.0) > 1e-9)
    throw std::invalid_argument(
        "irreversibility_delta: probabilities must sum to 1");
  return std::sqrt(std::max(0.0, acc));
}

double richardson_theta2(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2)
    throw std::invalid_argument("richardson_theta2: need >= 2 points");
  // Neville's scheme in x = theta^2 evaluated at x = 0.
  std::vector<double> x(pts.size()), y(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x[i] = pts[i].first * pts[i].first;
    y[i] = pts[i].second;
  }
  for (std::size_t level = 1; level < pts.size(); ++level)
    for (std::size_t i = 0; i + level < pts.size(); ++i)
      y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) / (x[i + level] - x[i]);
  return y[0];
}

}  // namespace otoc
