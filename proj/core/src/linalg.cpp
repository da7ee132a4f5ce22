#include "bsent/linalg.hpp"

#include <cmath>
#include <limits>

namespace bsent::linalg {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::cutoff, "max_abs_diff: shape mismatch");
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eig(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix>(h);
}

Matrix psd_sqrt(const Matrix& m) {
  const auto eig = hermitian_eig(m);
  RealVector roots = eig.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (roots(i) < -kPsdTolerance)
      throw Error(ErrorCode::invalid_state, "psd_sqrt: matrix has a negative eigenvalue");
    roots(i) = roots(i) > 0.0 ? std::sqrt(roots(i)) : 0.0;
  }
  const Matrix& v = eig.eigenvectors();
  return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

double log_binomial_weight(int n, int m, double t) {
  if (m < 0 || m > n) return -std::numeric_limits<double>::infinity();
  // Endpoints are handled exactly so that 0 * log(0) never appears.
  if (t <= 0.0) return m == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (t >= 1.0) return m == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double log_binom = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
  return log_binom + m * std::log(t) + (n - m) * std::log1p(-t);
}

double sqrt_binomial_weight(int n, int m, double t) {
  const double lw = log_binomial_weight(n, m, t);
  return std::isinf(lw) ? 0.0 : std::exp(0.5 * lw);
}

} // namespace bsent::linalg

namespace bsent::linalg {

RealVector graded_singular_values(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::cutoff, "graded_singular_values: matrix must be square");
  const Eigen::Index n = m.rows();
  Eigen::FullPivLU<Matrix> lu(m);
  const Matrix& packed = lu.matrixLU();
  Matrix lower = Matrix::Identity(n, n);
  lower.triangularView<Eigen::StrictlyLower>() = packed.triangularView<Eigen::StrictlyLower>();
  const Vector pivots = packed.diagonal();
  Matrix unit_upper = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pivots(i) == Complex(0.0)) continue; // rank deficient: row stays as identity, D_ii = 0
    unit_upper.row(i).tail(n - i) = packed.row(i).tail(n - i) / pivots(i);
  }
  // Row/column permutations of the LU are unitary and drop out of the spectrum.
  const Matrix scaled = lower * pivots.asDiagonal();
  Eigen::ColPivHouseholderQR<Matrix> qr(scaled);
  const Matrix r = qr.matrixR().triangularView<Eigen::Upper>();
  const Matrix w = r * qr.colsPermutation().transpose() * unit_upper;
  Eigen::JacobiSVD<Matrix> svd(w);
  return svd.singularValues();
}

} // namespace bsent::linalg
