#include <doctest.h>

#include "otoc/hamiltonian.hpp"
#include "support/bruteforce.hpp"

#include <cmath>

using namespace otoc;

TEST_CASE("build_xxz matches an independent dense construction") {
  for (int n : {2, 3, 4}) {
    for (double delta : {0.1, 0.5, 0.9}) {
      const XXZParams p = XXZParams::with_field_rule(n, delta);
      const HamiltonianTerms H = build_xxz(p);
      CHECK(H.n == n);
      CHECK(max_abs_diff(H.dense, bruteforce::xxz(n, delta, p.h)) < 1e-13);
    }
  }
}

TEST_CASE("field rule is h = (1 - delta) / 2") {
  CHECK(XXZParams::with_field_rule(4, 0.1).h == doctest::Approx(0.45));
  CHECK(XXZParams::with_field_rule(4, 0.9).h ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(XXZParams::with_field_rule(2, 1.0).h == doctest::Approx(0.0));
}

TEST_CASE("hamiltonian term list resums to the dense matrix") {
  const HamiltonianTerms H = build_xxz(XXZParams::with_field_rule(3, 0.7));
  ComplexMatrix acc = ComplexMatrix::Zero(H.dim(), H.dim());
  for (const auto& [word, coeff] : H.terms)
    acc += coeff * word.to_matrix();
  CHECK(max_abs_diff(acc, H.dense) < 1e-13);
  CHECK(is_hermitian(H.dense));
}

TEST_CASE("build_xxz rejects chains shorter than two sites") {
  CHECK_THROWS(build_xxz(XXZParams{1, 0.5, 0.25}));
}

TEST_CASE("exact propagator is unitary and matches eigendecomposition") {
  const HamiltonianTerms H = build_xxz(XXZParams::with_field_rule(3, 0.3));
  for (double tau : {0.0, 0.4, 1.7, -0.8}) {
    const ComplexMatrix U = exact_propagator(H, tau);
    CHECK(is_unitary(U));
    CHECK(max_abs_diff(U, bruteforce::propagator(H.dense, tau)) < 1e-12);
  }
  // tau = 0 is the exact identity
  CHECK(max_abs_diff(exact_propagator(H, 0.0),
                     ComplexMatrix::Identity(H.dim(), H.dim())) == 0.0);
}

TEST_CASE("propagator composes: U(a) U(b) = U(a + b)") {
  const HamiltonianTerms H = build_xxz(XXZParams::with_field_rule(2, 0.5));
  const ComplexMatrix lhs =
      exact_propagator(H, 0.6) * exact_propagator(H, 0.9);
  CHECK(max_abs_diff(lhs, exact_propagator(H, 1.5)) < 1e-12);
  const ComplexMatrix inv =
      exact_propagator(H, 0.6) * exact_propagator(H, -0.6);
  CHECK(max_abs_diff(inv, ComplexMatrix::Identity(H.dim(), H.dim())) < 1e-13);
}

TEST_CASE("heisenberg evolution preserves spectrum and commutes with H") {
  const HamiltonianTerms H = build_xxz(XXZParams::with_field_rule(3, 0.5));
  const ComplexMatrix w0 = embed_local(pauli_matrix(Pauli::X), {0}, 3);
  const ComplexMatrix wt = heisenberg_op(w0, H, 1.3);
  CHECK(is_hermitian(wt));
  CHECK(is_unitary(wt));  // X is both
  CHECK(max_abs_diff(heisenberg_op(w0, H, 0.0), w0) < 1e-14);
  // energy is conserved under its own evolution
  const ComplexMatrix ht = heisenberg_op(H.dense, H, 0.9);
  CHECK(max_abs_diff(ht, H.dense) < 1e-12);
}
