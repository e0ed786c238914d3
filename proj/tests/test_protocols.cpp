#include <doctest.h>

#include "otoc/protocols.hpp"
#include "support/bruteforce.hpp"

#include <cmath>

using namespace otoc;

namespace {

OTOCSpec make_spec(int n, double delta, double beta, double tau) {
  OTOCSpec spec;
  spec.H = build_xxz(XXZParams::with_field_rule(n, delta));
  spec.beta = beta;
  spec.W0 = embed_local(pauli_matrix(Pauli::X), {0}, n);
  spec.V0 = spec.W0;
  spec.tau = tau;
  return spec;
}

}  // namespace

TEST_CASE("weak measurement kraus operators implement the coupling algebra") {
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const ComplexMatrix a = pauli_matrix(p);
    for (double phi : {M_PI / 8, M_PI / 4, M_PI / 2}) {
      const ComplexMatrix m0 = weak_measurement_kraus(a, phi, 0);
      const ComplexMatrix m1 = weak_measurement_kraus(a, phi, 1);
      // completeness
      CHECK(max_abs_diff(m0.adjoint() * m0 + m1.adjoint() * m1,
                         ComplexMatrix::Identity(2, 2)) < 1e-14);
      // alpha-weighted decomposition recovers A
      const double a0 = modified_eigenvalue(0, phi);
      const double a1 = modified_eigenvalue(1, phi);
      CHECK(max_abs_diff(a0 * m0.adjoint() * m0 + a1 * m1.adjoint() * m1, a) <
            1e-14);
      // both anticommutator identities on a random state / observable
      ComplexMatrix rho(2, 2);
      rho << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
      ComplexMatrix b(2, 2);
      b << 0.2, Complex(0.4, -0.3), Complex(0.4, 0.3), -0.6;
      const ComplexMatrix lhs_state =
          a0 * m0 * rho * m0.adjoint() + a1 * m1 * rho * m1.adjoint();
      CHECK(max_abs_diff(lhs_state, 0.5 * (a * rho + rho * a)) < 1e-14);
      const ComplexMatrix lhs_obs =
          a0 * m0.adjoint() * b * m0 + a1 * m1.adjoint() * b * m1;
      CHECK(max_abs_diff(lhs_obs, 0.5 * (b * a + a * b)) < 1e-14);
    }
  }
}

TEST_CASE("phi = pi/2 reduces to projective measurement with unit weights") {
  const ComplexMatrix z = pauli_matrix(Pauli::Z);
  const ComplexMatrix m0 = weak_measurement_kraus(z, M_PI / 2, 0);
  const ComplexMatrix m1 = weak_measurement_kraus(z, M_PI / 2, 1);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  CHECK(max_abs_diff(m0, p0) < 1e-15);
  CHECK(max_abs_diff(m1, p1) < 1e-15);
  CHECK(modified_eigenvalue(0, M_PI / 2) == 1.0);
  CHECK(modified_eigenvalue(1, M_PI / 2) == -1.0);
}

TEST_CASE("rtm reproduces the oracle exactly in exact-expectation mode") {
  for (int n : {2, 3}) {
    for (double tau : {0.3, 0.7, 1.4}) {
      const OTOCSpec spec = make_spec(n, 0.5, 1.0, tau);
      const ThermalInput input = exact_thermal_input(spec);
      const Complex f = rtm_exact_f({spec}, input);
      CHECK(std::abs(f - correlator_f(spec)) < 1e-10);
      CHECK(std::abs(rtm_exact_c({spec}, input) - otoc_c(spec)) < 1e-10);
    }
  }
}

TEST_CASE("rtm purified input agrees with the density input") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
  const Complex f_dense =
      rtm_exact_f({spec}, exact_thermal_input(spec, false));
  const Complex f_pure = rtm_exact_f({spec}, exact_thermal_input(spec, true));
  CHECK(std::abs(f_dense - f_pure) < 1e-10);
}

TEST_CASE("wmm reproduces the oracle and is coupling-strength independent") {
  for (int n : {2, 3}) {
    const OTOCSpec spec = make_spec(n, 0.5, 1.0, 0.7);
    const ThermalInput input = exact_thermal_input(spec);
    const double oracle = otoc_c(spec);
    std::vector<double> values;
    for (double phi : {M_PI / 8, M_PI / 4, M_PI / 2}) {
      WMMConfig cfg;
      cfg.spec = spec;
      cfg.phis = {phi, phi, phi, phi};
      values.push_back(wmm_exact_c(cfg, input));
    }
    for (double v : values) CHECK(std::abs(v - oracle) < 1e-9);
    // mixed strengths across the four probes
    WMMConfig mixed;
    mixed.spec = spec;
    mixed.phis = {M_PI / 8, M_PI / 4, M_PI / 2, M_PI / 3};
    CHECK(std::abs(wmm_exact_c(mixed, input) - oracle) < 1e-9);
  }
}

TEST_CASE("ism raw estimate carries a quadratic coupling bias") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
  const ThermalInput input = exact_thermal_input(spec);
  const double oracle = otoc_c(spec);
  ISMConfig cfg;
  cfg.spec = spec;
  const double e1 = std::abs(ism_exact_c(cfg, input, 0.2) - oracle);
  const double e2 = std::abs(ism_exact_c(cfg, input, 0.1) - oracle);
  const double e3 = std::abs(ism_exact_c(cfg, input, 0.05) - oracle);
  const double slope1 = std::log(e1 / e2) / std::log(2.0);
  const double slope2 = std::log(e2 / e3) / std::log(2.0);
  CHECK(slope1 == doctest::Approx(2.0).epsilon(0.2));
  CHECK(slope2 == doctest::Approx(2.0).epsilon(0.2));

  cfg.theta_sweep = {0.2, 0.1, 0.05};
  CHECK(std::abs(ism_exact_c_extrapolated(cfg, input) - oracle) < 1e-6);
}

TEST_CASE("channel-level irreversibility matches the ancilla shortcut") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
  const ThermalInput input = exact_thermal_input(spec);
  const double oracle = otoc_c(spec);
  ISMConfig cfg;
  cfg.spec = spec;
  double prev_err = 1e9;
  for (double theta : {0.2, 0.1, 0.05}) {
    const double delta = irreversibility_delta(ism_process(spec, theta),
                                               ism_recovery(spec, theta),
                                               ensemble_half_pm());
    const double via_channel = delta * delta / (theta * theta);
    const double via_ancilla = ism_exact_c(cfg, input, theta);
    CHECK(std::abs(via_channel - via_ancilla) < 1e-9);
    const double err = std::abs(via_channel - oracle);
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("irreversibility ensemble must be normalized") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.5);
  auto bad = ensemble_half_pm();
  bad[0].first = 0.7;
  CHECK_THROWS(irreversibility_delta(ism_process(spec, 0.1),
                                     ism_recovery(spec, 0.1), bad));
}

TEST_CASE("richardson extrapolation is exact on even polynomials") {
  // f(theta) = 3 + 2 theta^2 - theta^4
  const auto f = [](double t) { return 3.0 + 2.0 * t * t - std::pow(t, 4); };
  std::vector<std::pair<double, double>> pts;
  for (double t : {0.4, 0.3, 0.2}) pts.emplace_back(t, f(t));
  CHECK(richardson_theta2(pts) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS(richardson_theta2({{0.1, 1.0}}));
}

TEST_CASE("estimators are deterministic in the seed") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
  const ThermalInput input = exact_thermal_input(spec);
  RTMConfig cfg;
  cfg.spec = spec;
  cfg.shots = 500;
  cfg.reps = 4;
  cfg.seed = 12345;
  const EstimateRecord a = rtm_estimate(cfg, input);
  const EstimateRecord b = rtm_estimate(cfg, input);
  CHECK(a.mean_C == b.mean_C);
  CHECK(a.std_C == b.std_C);
  cfg.seed = 54321;
  const EstimateRecord c = rtm_estimate(cfg, input);
  CHECK(a.mean_C != c.mean_C);
}

TEST_CASE("estimator means converge to the oracle with shots") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
  const ThermalInput input = exact_thermal_input(spec);
  const double oracle = otoc_c(spec);

  RTMConfig rtm;
  rtm.spec = spec;
  rtm.shots = 100000;
  rtm.reps = 5;
  rtm.seed = 9;
  const EstimateRecord r = rtm_estimate(rtm, input);
  CHECK(std::abs(r.mean_C - oracle) < 0.05);
  CHECK(r.oracle_C == doctest::Approx(oracle).epsilon(1e-12));

  WMMConfig wmm;
  wmm.spec = spec;
  wmm.shots = 100000;
  wmm.reps = 5;
  wmm.seed = 9;
  CHECK(std::abs(wmm_estimate(wmm, input).mean_C - oracle) < 0.05);
}

TEST_CASE("ism estimator reports extrapolated statistics when asked") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
  const ThermalInput input = exact_thermal_input(spec);
  ISMConfig cfg;
  cfg.spec = spec;
  cfg.theta = 0.4;
  cfg.theta_sweep = {0.4, 0.3, 0.2};
  cfg.shots = 50000;
  cfg.reps = 6;
  cfg.seed = 21;
  const EstimateRecord rec = ism_estimate(cfg, input);
  REQUIRE(rec.metadata.count("extrapolated_mean_C") == 1);
  const double extrap = std::stod(rec.metadata.at("extrapolated_mean_C"));
  const double oracle = otoc_c(spec);
  // extrapolation removes most of the theta = 0.4 bias
  CHECK(std::abs(extrap - oracle) < std::abs(rec.mean_C - oracle));
}

TEST_CASE("ism flags poor signal-to-noise configurations") {
  const OTOCSpec spec = make_spec(2, 0.5, 1.0, 0.7);
  const ThermalInput input = exact_thermal_input(spec);
  ISMConfig weak;
  weak.spec = spec;
  weak.theta = 0.02;  // noise amplification 1/(2 theta^2 sqrt(shots)) >> 1
  weak.shots = 100;
  weak.reps = 2;
  CHECK(ism_estimate(weak, input).metadata.count("snr_flag") == 1);
  ISMConfig fine;
  fine.spec = spec;
  fine.theta = 0.4;
  fine.shots = 1000;
  fine.reps = 2;
  CHECK(ism_estimate(fine, input).metadata.count("snr_flag") == 0);
}

TEST_CASE("trotter evolution mode approaches the exact-gate protocols") {
  const OTOCSpec spec = make_spec(3, 0.5, 1.0, 1.0);
  const ThermalInput input = exact_thermal_input(spec);
  RTMConfig exact;
  exact.spec = spec;
  RTMConfig coarse = exact;
  coarse.evolution = {EvolutionMode::Trotter, TrotterConfig{2, 4}};
  RTMConfig fine = exact;
  fine.evolution = {EvolutionMode::Trotter, TrotterConfig{2, 32}};
  const double target = rtm_exact_c(exact, input);
  const double e_coarse = std::abs(rtm_exact_c(coarse, input) - target);
  const double e_fine = std::abs(rtm_exact_c(fine, input) - target);
  CHECK(e_fine < e_coarse);
  CHECK(e_fine < 1e-3);
}
