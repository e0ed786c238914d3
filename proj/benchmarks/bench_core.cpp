#include <benchmark/benchmark.h>

#include "otoc/harness.hpp"

namespace {

using namespace otoc;

void BM_ApplyGateKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PureState psi = PureState::basis(n, 0);
  const Gate cnot = [] {
    ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    u(2, 2) = u(3, 3) = 0;
    u(2, 3) = u(3, 2) = 1;
    return Gate::local(u, {0, 1}, "cnot");
  }();
  for (auto _ : state) {
    apply_gate(psi.amplitudes, n, cnot);
    benchmark::DoNotOptimize(psi.amplitudes.data());
  }
}
BENCHMARK(BM_ApplyGateKernel)->Arg(6)->Arg(10)->Arg(12);

void BM_ExactPropagator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HamiltonianTerms H = build_xxz(XXZParams::with_field_rule(n, 0.5));
  for (auto _ : state) {
    ComplexMatrix u = exact_propagator(H, 1.3);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_ExactPropagator)->Arg(4)->Arg(6)->Arg(8);

void BM_PauliDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HamiltonianTerms H = build_xxz(XXZParams::with_field_rule(n, 0.5));
  const ComplexMatrix w =
      heisenberg_op(embed_local(pauli_matrix(Pauli::X), {0}, n), H, 1.0);
  for (auto _ : state) {
    auto terms = pauli_decompose(w, n);
    benchmark::DoNotOptimize(terms.data());
  }
}
BENCHMARK(BM_PauliDecompose)->Arg(3)->Arg(4)->Arg(5);

void BM_RTMCell(benchmark::State& state) {
  OTOCSpec spec;
  spec.H = build_xxz(XXZParams::with_field_rule(4, 0.5));
  spec.beta = 1.0;
  spec.W0 = embed_local(pauli_matrix(Pauli::X), {0}, 4);
  spec.V0 = spec.W0;
  spec.tau = 1.05;
  RTMConfig cfg;
  cfg.spec = spec;
  cfg.shots = 1000;
  cfg.reps = 10;
  cfg.seed = 7;
  cfg.evolution = {EvolutionMode::Trotter, TrotterConfig{2, 4}};
  const ThermalInput input = exact_thermal_input(spec);
  for (auto _ : state) {
    EstimateRecord rec = rtm_estimate(cfg, input);
    benchmark::DoNotOptimize(rec.mean_C);
  }
}
BENCHMARK(BM_RTMCell);

}  // namespace

BENCHMARK_MAIN();
