#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace otoc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-10;

bool is_hermitian(const ComplexMatrix& m, double tol = kHermTol);
bool is_unitary(const ComplexMatrix& m, double tol = kHermTol);
bool all_finite(const ComplexMatrix& m);

/// Largest entrywise absolute difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Apply a scalar function to the spectrum of a Hermitian matrix.
/// Throws std::invalid_argument if the input is not Hermitian.
ComplexMatrix herm_fn(const ComplexMatrix& op,
                      const std::function<double(double)>& f);

/// Same, but f maps eigenvalues to complex values (e.g. lambda -> exp(-i*lambda*t)).
/// The result is generally not Hermitian.
ComplexMatrix herm_fn_complex(const ComplexMatrix& op,
                              const std::function<Complex(double)>& f);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace otoc
