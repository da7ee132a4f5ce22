#pragma once

// Small dense helpers shared by the channel and monotone code.

#include <Eigen/Dense>

#include "bsent/fock.hpp"

namespace bsent::linalg {

/// Largest |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);

/// Eigendecomposition of the Hermitian part of m.
Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eig(const Matrix& m);

/// PSD square root; eigenvalues in (-1e-10, 0) are clamped to zero.
Matrix psd_sqrt(const Matrix& m);

/// Singular values (descending) via a rank-revealing factorization: LU with
/// complete pivoting M = X D Y, pivoted QR of X D, then Jacobi SVD of R P^T Y.
/// Retains relative accuracy for row/column-graded matrices where a direct
/// SVD only resolves small singular values to absolute precision.
RealVector graded_singular_values(const Matrix& m);

/// log of the binomial weight C(n,m) T^m (1-T)^(n-m); -inf where the weight is zero.
double log_binomial_weight(int n, int m, double t);

/// sqrt of C(n,m) T^m (1-T)^(n-m), computed via lgamma so it stays finite for large n.
double sqrt_binomial_weight(int n, int m, double t);

} // namespace bsent::linalg
