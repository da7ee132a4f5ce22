#pragma once

// Beam splitter with vacuum in the second port, the induced loss channel and
// the states derived from it.
//
// Convention: in a SchmidtMatrix M, the row index is the photon number of the
// transmitted mode a and the column index that of the reflected mode b, so
// M(m, n) = <m, n | B(T) | psi, 0> and the kept state is rho_T = M M^dag.
// With this convention M(1-T) = M(T)^T.

#include <optional>

#include "bsent/fock.hpp"

namespace bsent {

/// Power transmission probability T in [0, 1].
class Transmission {
public:
  explicit Transmission(double t);

  double value() const noexcept { return t_; }
  /// lambda = 1 - 2T, the expansion variable of overlap polynomials.
  double lambda() const noexcept { return 1.0 - 2.0 * t_; }
  /// The mirrored splitter 1 - T.
  Transmission complement() const { return Transmission(1.0 - t_); }

private:
  double t_;
};

class SchmidtMatrix {
public:
  SchmidtMatrix(Matrix entries, Transmission t, int max_occupied, bool finite_support);

  const Matrix& entries() const noexcept { return entries_; }
  Transmission transmission() const noexcept { return t_; }
  int cutoff() const noexcept { return static_cast<int>(entries_.rows()); }
  /// Top occupied level N of the input; entries with m + n > N vanish.
  int max_occupied() const noexcept { return max_occupied_; }
  /// N when the input is a genuinely finite superposition, nullopt for
  /// truncated infinite-rank families.
  std::optional<int> support_bound() const {
    return finite_support_ ? std::optional<int>(max_occupied_) : std::nullopt;
  }

private:
  Matrix entries_;
  Transmission t_;
  int max_occupied_;
  bool finite_support_;
};

/// M(m, n-m) = psi_n sqrt(C(n,m) T^m (1-T)^(n-m)).
SchmidtMatrix beam_splitter_output(const PureState& psi, Transmission t);

/// Singular values of M, nonincreasing.
RealVector schmidt_values(const SchmidtMatrix& m);

/// K_n(T) = sqrt(T)^(a^dag a) (sqrt(1-T) a)^n / sqrt(n!) on the cutoff.
Matrix kraus_operator(int n, Transmission t, int cutoff);

/// sum_n K_n rho K_n^dag with n over 0..D-1 (exact for states on the cutoff).
DensityMatrix loss_apply(const DensityMatrix& rho, Transmission t);

/// rho_T = M M^dag.
DensityMatrix reduced_state(const SchmidtMatrix& m);

/// Convenience: reduced_state(beam_splitter_output(psi, t)).
DensityMatrix lossy_state(const PureState& psi, Transmission t);

/// a rho a^dag / Tr[a^dag a rho]. Throws Error(undefined_state) for vacuum support.
DensityMatrix sigma_state(const DensityMatrix& rho);

/// sqrt(rho) a^dag a sqrt(rho) / Tr[a^dag a rho]. Throws Error(undefined_state) for vacuum support.
DensityMatrix tau_state(const DensityMatrix& rho);

/// max-abs entry of a K_n - sqrt(T) K_n a on rows 0..D-n-2.
double check_kraus_commutation(Transmission t, int n, int cutoff);

/// max-abs entry of E_T1[E_T2[rho]] - E_{T1 T2}[rho].
double check_multiplicativity(const DensityMatrix& rho, Transmission t1, Transmission t2);

/// max-abs entry of M(1-T) - M(T)^T.
double check_schmidt_transpose(const PureState& psi, Transmission t);

} // namespace bsent
