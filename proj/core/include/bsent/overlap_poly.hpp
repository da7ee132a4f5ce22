#pragma once

// Hilbert-Schmidt overlap of two lossy states as a polynomial in
// lambda = 1 - 2T:
//
//   Tr[E_T(rho) E_T(sigma)] = sum_m p_m lambda^m,
//   p_m = Tr[(rho (x) sigma) Pi_m],
//
// where Pi_m projects two copies onto m photons in the difference mode
// (a_1 - a_2)/sqrt(2). Every p_m is a trace of a PSD operator against a
// projector and therefore nonnegative.

#include <vector>

#include "bsent/channels.hpp"

namespace bsent {

/// Largest total photon number the exact difference-mode amplitudes support.
inline constexpr int kMaxOverlapCutoff = 64;

class OverlapPolynomial {
public:
  explicit OverlapPolynomial(std::vector<double> coefficients);

  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  double coefficient(int m) const { return coefficients_.at(static_cast<std::size_t>(m)); }
  int m_max() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }

  /// sum_m p_m lambda^m at lambda = 1 - 2T.
  double evaluate(Transmission t) const;
  /// d^2/dT^2 of evaluate(): 4 sum_m m (m-1) p_m lambda^(m-2).
  double second_derivative(Transmission t) const;

private:
  std::vector<double> coefficients_;
};

/// Amplitude <p, n-p | k, m>_{+-}: two-mode Fock state |p, n-p> against the
/// state with k = n - m photons in the sum mode and m in the difference mode.
/// Computed from the exact integer Kravchuk sum; requires n <= 2(kMaxOverlapCutoff - 1).
double difference_mode_amplitude(int n, int m, int p);

/// p_m for m = 0..2(D-1). Throws Error(cutoff) for mismatched inputs.
OverlapPolynomial overlap_coefficients(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr[E_T(rho) E_T(sigma)].
double overlap_direct(const DensityMatrix& rho, const DensityMatrix& sigma, Transmission t);

double overlap_reconstruct(const OverlapPolynomial& poly, Transmission t);

/// Self-overlap of |psi><psi| (the purity after loss). Throws
/// Error(invalid_state) if an odd coefficient exceeds 1e-12.
OverlapPolynomial purity_polynomial(const PureState& psi);

/// max-abs entry of sum_n (1-T)^n a^dag^n (-T)^(a^dag a) a^n / n! - sum_m (1-2T)^m |m><m|
/// on the cutoff.
double check_difference_mode_identity(Transmission t, int cutoff);

} // namespace bsent
