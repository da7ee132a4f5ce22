#include "bsent/channels.hpp"

#include <cmath>
#include <string>

#include "bsent/linalg.hpp"

namespace bsent {

namespace {

constexpr double kVacuumEnergy = 1e-12;

void require_energy(const DensityMatrix& rho, const char* where) {
  if (mean_photon_number(rho) <= kVacuumEnergy)
    throw Error(ErrorCode::undefined_state,
                std::string(where) + ": input has no photons (a rho a^dag vanishes)");
}

DensityMatrix normalized(const Matrix& m, const char* where) {
  const double trace = m.trace().real();
  if (!(trace > 0.0)) throw Error(ErrorCode::undefined_state, std::string(where) + ": zero trace");
  return DensityMatrix::from_matrix(m / trace);
}

} // namespace

Transmission::Transmission(double t) : t_(t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::domain, "Transmission: T = " + std::to_string(t) + " is outside [0, 1]");
}

SchmidtMatrix::SchmidtMatrix(Matrix entries, Transmission t, int max_occupied, bool finite_support)
    : entries_(std::move(entries)), t_(t), max_occupied_(max_occupied),
      finite_support_(finite_support) {}

SchmidtMatrix beam_splitter_output(const PureState& psi, Transmission t) {
  const int d = psi.cutoff();
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    const Complex amp = psi.amplitude(n);
    if (amp == Complex(0.0)) continue;
    for (int k = 0; k <= n; ++k) m(k, n - k) = amp * linalg::sqrt_binomial_weight(n, k, t.value());
  }
  return SchmidtMatrix(std::move(m), t, psi.max_occupied(), psi.finite_support());
}

RealVector schmidt_values(const SchmidtMatrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m.entries());
  return svd.singularValues();
}

Matrix kraus_operator(int n, Transmission t, int cutoff) {
  if (n < 0 || n >= cutoff)
    throw Error(ErrorCode::cutoff, "kraus_operator: index " + std::to_string(n) +
                                       " outside 0.." + std::to_string(cutoff - 1));
  Matrix k = Matrix::Zero(cutoff, cutoff);
  // (K_n)_{m, m+n} = sqrt(T)^m (1-T)^(n/2) sqrt(C(m+n, n))
  for (int m = 0; m + n < cutoff; ++m) k(m, m + n) = linalg::sqrt_binomial_weight(m + n, m, t.value());
  return k;
}

DensityMatrix loss_apply(const DensityMatrix& rho, Transmission t) {
  const int d = rho.cutoff();
  // w(m, n) = (K_n)_{m, m+n}
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; m + n < d; ++n) w(m, n) = linalg::sqrt_binomial_weight(m + n, m, t.value());
  const Matrix& in = rho.matrix();
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (int n = 0; i + n < d && j + n < d; ++n) acc += w(i, n) * w(j, n) * in(i + n, j + n);
      out(i, j) = acc;
    }
  return DensityMatrix::from_matrix(out, rho.truncation());
}

DensityMatrix reduced_state(const SchmidtMatrix& m) {
  return DensityMatrix::from_matrix(m.entries() * m.entries().adjoint());
}

DensityMatrix lossy_state(const PureState& psi, Transmission t) {
  return reduced_state(beam_splitter_output(psi, t));
}

DensityMatrix sigma_state(const DensityMatrix& rho) {
  require_energy(rho, "sigma_state");
  const Matrix a = annihilation_matrix(rho.cutoff());
  return normalized(a * rho.matrix() * a.adjoint(), "sigma_state");
}

DensityMatrix tau_state(const DensityMatrix& rho) {
  require_energy(rho, "tau_state");
  const Matrix root = linalg::psd_sqrt(rho.matrix());
  RealVector number(rho.cutoff());
  for (int n = 0; n < rho.cutoff(); ++n) number(n) = n;
  return normalized(root * number.cast<Complex>().asDiagonal() * root, "tau_state");
}

double check_kraus_commutation(Transmission t, int n, int cutoff) {
  if (n < 0 || cutoff < n + 2)
    throw Error(ErrorCode::cutoff, "check_kraus_commutation: need cutoff >= n + 2");
  const Matrix a = annihilation_matrix(cutoff);
  const Matrix k = kraus_operator(n, t, cutoff);
  const Matrix residual = a * k - std::sqrt(t.value()) * (k * a);
  const int rows = cutoff - n - 1;
  return linalg::max_abs(residual.topRows(rows));
}

double check_multiplicativity(const DensityMatrix& rho, Transmission t1, Transmission t2) {
  const DensityMatrix twice = loss_apply(loss_apply(rho, t2), t1);
  const DensityMatrix once = loss_apply(rho, Transmission(t1.value() * t2.value()));
  return linalg::max_abs_diff(twice.matrix(), once.matrix());
}

double check_schmidt_transpose(const PureState& psi, Transmission t) {
  const SchmidtMatrix forward = beam_splitter_output(psi, t);
  const SchmidtMatrix mirrored = beam_splitter_output(psi, t.complement());
  return linalg::max_abs_diff(mirrored.entries(), forward.entries().transpose());
}

} // namespace bsent
