#include "otoc/thermal.hpp"

#include "otoc/rng.hpp"
#include "otoc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace otoc {

namespace {

ComplexMatrix ry(double angle) {
  ComplexMatrix m(2, 2);
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  m << c, -s, s, c;
  return m;
}

ComplexMatrix rz(double angle) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::exp(Complex(0.0, -angle / 2));
  m(1, 1) = std::exp(Complex(0.0, angle / 2));
  return m;
}

const ComplexMatrix& cnot() {
  static const ComplexMatrix m = [] {
    ComplexMatrix c = ComplexMatrix::Zero(4, 4);
    c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
    return c;
  }();
  return m;
}

// Register-A preparation circuit on n qubits at the given site offset.
Circuit register_a_circuit(const TFDAnsatz& a, int offset, int total) {
  Circuit c(total);
  int p = 0;
  for (int layer = 0; layer <= a.layers_A; ++layer) {
    for (int i = 0; i < a.n; ++i)
      c.add(Gate::local(ry(a.theta[p++]), {offset + i}, "ry"));
    if (layer == a.layers_A) break;
    for (int i = 0; i + 1 < a.n; ++i)
      c.add(Gate::local(cnot(), {offset + i, offset + i + 1}, "cnot"));
  }
  return c;
}

Circuit register_s_circuit(const TFDAnsatz& a, int offset, int total) {
  Circuit c(total);
  int p = 0;
  for (int layer = 0; layer <= a.layers_S; ++layer) {
    for (int i = 0; i < a.n; ++i)
      c.add(Gate::local(ry(a.phi[p++]), {offset + i}, "ry"));
    for (int i = 0; i < a.n; ++i)
      c.add(Gate::local(rz(a.phi[p++]), {offset + i}, "rz"));
    if (layer == a.layers_S) break;
    for (int i = 0; i + 1 < a.n; ++i)
      c.add(Gate::local(cnot(), {offset + i, offset + i + 1}, "cnot"));
  }
  return c;
}

}  // namespace

DensityMatrix exact_gibbs(const GibbsSpec& spec) {
  if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta))
    throw std::invalid_argument("exact_gibbs: beta must be finite and >= 0");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(spec.H.dense);
  const RealVector& vals = es.eigenvalues();
  const double shift = vals.minCoeff();
  RealVector pops(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    pops[i] = std::exp(-spec.beta * (vals[i] - shift));
  pops /= pops.sum();
  ComplexMatrix rho = es.eigenvectors() *
                      pops.cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(spec.H.n, std::move(rho));
}

double free_energy(const DensityMatrix& rho, const HamiltonianTerms& H,
                   double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("free_energy: beta must be > 0");
  const double energy = (H.dense * rho.matrix).trace().real();
  return energy - von_neumann_entropy(rho) / beta;
}

double gibbs_free_energy(const GibbsSpec& spec) {
  if (!(spec.beta > 0.0))
    throw std::invalid_argument("gibbs_free_energy: beta must be > 0");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(spec.H.dense,
                                                  Eigen::EigenvaluesOnly);
  const RealVector& vals = es.eigenvalues();
  const double shift = vals.minCoeff();
  double z = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    z += std::exp(-spec.beta * (vals[i] - shift));
  return shift - std::log(z) / spec.beta;
}

TFDAnsatz TFDAnsatz::zeros(int n, int layers_A, int layers_S) {
  TFDAnsatz a;
  a.n = n;
  a.layers_A = layers_A;
  a.layers_S = layers_S;
  a.theta = RealVector::Zero(a.theta_size());
  a.phi = RealVector::Zero(a.phi_size());
  return a;
}

void TFDAnsatz::check() const {
  if (n < 1 || layers_A < 0 || layers_S < 0)
    throw std::invalid_argument("TFDAnsatz: bad shape");
  if (theta.size() != theta_size() || phi.size() != phi_size())
    throw std::invalid_argument("TFDAnsatz: parameter vector length mismatch");
  if (!theta.allFinite() || !phi.allFinite())
    throw std::invalid_argument("TFDAnsatz: non-finite angle");
}

Circuit tfd_circuit(const TFDAnsatz& ansatz) {
  ansatz.check();
  const int n = ansatz.n;
  Circuit c(2 * n);
  c.extend(register_a_circuit(ansatz, 0, 2 * n));
  for (int i = 0; i < n; ++i)
    c.add(Gate::local(cnot(), {i, n + i}, "cnot(A->S)"));
  c.extend(register_s_circuit(ansatz, n, 2 * n));
  return c;
}

std::vector<double> tfd_schmidt_probs(const TFDAnsatz& ansatz) {
  ansatz.check();
  const Circuit c = register_a_circuit(ansatz, 0, ansatz.n);
  const PureState psi = simulate_pure(c, PureState::zero(ansatz.n));
  std::vector<double> p(psi.dim());
  for (Eigen::Index i = 0; i < psi.dim(); ++i)
    p[i] = std::norm(psi.amplitudes[i]);
  return p;
}

DensityMatrix tfd_system_state(const TFDAnsatz& ansatz) {
  const PureState psi =
      simulate_pure(tfd_circuit(ansatz), PureState::zero(2 * ansatz.n));
  std::vector<int> keep(ansatz.n);
  std::iota(keep.begin(), keep.end(), ansatz.n);
  return partial_trace(DensityMatrix::from_pure(psi), keep);
}

RealVector nelder_mead(const CostFn& cost, const RealVector& init, int budget) {
  const int d = static_cast<int>(init.size());
  const double step = 0.3;
  const double tol = 1e-10;

  std::vector<RealVector> pts(d + 1, init);
  std::vector<double> vals(d + 1);
  for (int i = 1; i <= d; ++i) pts[i][i - 1] += step;
  int evals = 0;
  for (int i = 0; i <= d; ++i) {
    vals[i] = cost(pts[i]);
    ++evals;
  }

  std::vector<int> order(d + 1);
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[d], second = order[d - 1];
    if (vals[worst] - vals[best] < tol) break;

    RealVector centroid = RealVector::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= d;

    const RealVector refl = centroid + (centroid - pts[worst]);
    const double f_refl = cost(refl);
    ++evals;
    if (f_refl < vals[order[0]]) {
      const RealVector expa = centroid + 2.0 * (centroid - pts[worst]);
      const double f_expa = cost(expa);
      ++evals;
      if (f_expa < f_refl) {
        pts[worst] = expa;
        vals[worst] = f_expa;
      } else {
        pts[worst] = refl;
        vals[worst] = f_refl;
      }
    } else if (f_refl < vals[second]) {
      pts[worst] = refl;
      vals[worst] = f_refl;
    } else {
      const RealVector contr =
          centroid + 0.5 * ((f_refl < vals[worst] ? refl : pts[worst]) -
                            centroid);
      const double f_contr = cost(contr);
      ++evals;
      if (f_contr < std::min(f_refl, vals[worst])) {
        pts[worst] = contr;
        vals[worst] = f_contr;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
          vals[i] = cost(pts[i]);
          ++evals;
        }
      }
    }
  }
  const int best =
      static_cast<int>(std::min_element(vals.begin(), vals.end()) -
                       vals.begin());
  return pts[best];
}

VQAResult vqa_optimize(const GibbsSpec& spec, const TFDAnsatz& ansatz,
                       const OptimizerConfig& cfg, const Minimizer& minimize) {
  if (!(spec.beta > 0.0))
    throw std::invalid_argument("vqa_optimize: beta must be > 0");
  if (ansatz.n != spec.H.n)
    throw std::invalid_argument("vqa_optimize: ansatz/Hamiltonian size mismatch");
  ansatz.check();

  const int nt = ansatz.theta_size();
  const int np = ansatz.phi_size();

  auto with_params = [&](const RealVector& x) {
    TFDAnsatz a = ansatz;
    a.theta = x.head(nt);
    a.phi = x.tail(np);
    return a;
  };

  VQAResult result;
  int total_evals = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  RealVector best_x = RealVector::Zero(nt + np);

  auto cost = [&](const RealVector& x) {
    const TFDAnsatz a = with_params(x);
    // Energy from the prepared system state; entropy classically from p(theta).
    const double energy =
        (spec.H.dense * tfd_system_state(a).matrix).trace().real();
    double entropy = 0.0;
    for (double p : tfd_schmidt_probs(a))
      if (p > 1e-14) entropy -= p * std::log(p);
    const double f = energy - entropy / spec.beta;
    ++total_evals;
    if (f < best_cost) {
      best_cost = f;
      best_x = x;
      result.cost_history.push_back(f);
    }
    return f;
  };

  const Minimizer& driver =
      minimize ? minimize
               : Minimizer([](const CostFn& c, const RealVector& x0,
                              int budget) { return nelder_mead(c, x0, budget); });

  const int restarts = std::max(1, cfg.restarts);
  const int budget_per_run = std::max(1, cfg.max_evals / restarts);
  Rng rng(cfg.seed);
  for (int r = 0; r < restarts; ++r) {
    RealVector x0(nt + np);
    if (r == 0) {
      x0.head(nt) = ansatz.theta;
      x0.tail(np) = ansatz.phi;
    } else {
      for (Eigen::Index i = 0; i < x0.size(); ++i)
        x0[i] = (2.0 * rng.next_double() - 1.0) * M_PI;
    }
    const int before = total_evals;
    driver(cost, x0, budget_per_run);
    // Stopped before exhausting the budget -> simplex tolerance reached.
    if (total_evals - before < budget_per_run) result.converged = true;
  }

  const TFDAnsatz best = with_params(best_x);
  result.optimal_theta = best.theta;
  result.optimal_phi = best.phi;
  result.free_energy = best_cost;
  result.iterations = total_evals;
  result.fidelity_to_exact =
      uhlmann_fidelity(tfd_system_state(best), exact_gibbs(spec));
  return result;
}

}  // namespace otoc
