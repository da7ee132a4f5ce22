#pragma once

// Truncated single-mode Fock space: state types, ladder operators and the
// analytic state families used throughout the library.
//
// Every object carries its cutoff D (number of Fock levels |0>..|D-1>).
// Operations that combine objects require equal cutoffs; nothing is padded
// implicitly. Use PureState::padded() to embed a state into a larger space.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bsent/error.hpp"

namespace bsent {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
/// |psi_n| above this counts as occupied when computing max_occupied.
inline constexpr double kSupportThreshold = 1e-12;
/// Largest probability mass an analytic family may leave above the cutoff.
inline constexpr double kTailBound = 1e-12;
/// Tail bound used when the cutoff is chosen automatically (see README).
inline constexpr double kAutoTailBound = 1e-20;
inline constexpr int kMaxAutoCutoff = 256;

struct TruncationBudget {
  double tail_weight = 0.0; // probability mass of the untruncated target above the cutoff
  double energy = 0.0;      // <a^dag a> of the untruncated target
};

class DensityMatrix;

/// Normalized amplitude vector over |0>..|D-1>.
class PureState {
public:
  /// Validates normalization to 1e-12; throws Error(invalid_state) otherwise.
  static PureState from_amplitudes(Vector amplitudes, TruncationBudget budget = {},
                                   bool finite_support = true);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(int n) const { return amplitudes_(n); }
  int cutoff() const noexcept { return static_cast<int>(amplitudes_.size()); }
  /// Largest n with |psi_n| > kSupportThreshold.
  int max_occupied() const noexcept { return max_occupied_; }
  /// False for truncated infinite-rank families (coherent states with alpha != 0).
  bool finite_support() const noexcept { return finite_support_; }
  const TruncationBudget& truncation() const noexcept { return budget_; }

  /// Same state embedded into a cutoff >= cutoff().
  PureState padded(int cutoff) const;
  DensityMatrix projector() const;

private:
  PureState(Vector amplitudes, TruncationBudget budget, bool finite_support);

  Vector amplitudes_;
  TruncationBudget budget_;
  int max_occupied_ = 0;
  bool finite_support_ = true;
};

/// Hermitian, unit-trace, numerically PSD D x D matrix.
class DensityMatrix {
public:
  /// Checks Hermiticity (1e-12, max-abs), trace (1e-12) and min eigenvalue
  /// (>= -1e-10). The stored matrix is the Hermitian part of the input.
  static DensityMatrix from_matrix(const Matrix& m, TruncationBudget budget = {});

  const Matrix& matrix() const noexcept { return matrix_; }
  int cutoff() const noexcept { return static_cast<int>(matrix_.rows()); }
  /// Eigenvalues in ascending order.
  const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
  const TruncationBudget& truncation() const noexcept { return budget_; }
  /// Diagonal entries (level populations).
  RealVector populations() const { return matrix_.diagonal().real(); }

private:
  DensityMatrix(Matrix m, RealVector eigenvalues, TruncationBudget budget);

  Matrix matrix_;
  RealVector eigenvalues_;
  TruncationBudget budget_;
};

/// Fixed pure-state decomposition rho = sum_i p_i |psi_i><psi_i|.
class Ensemble {
public:
  static Ensemble make(std::vector<double> weights, std::vector<PureState> members);

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<PureState>& members() const noexcept { return members_; }
  int cutoff() const noexcept { return members_.front().cutoff(); }
  std::size_t size() const noexcept { return members_.size(); }
  DensityMatrix mixture() const;

private:
  Ensemble(std::vector<double> weights, std::vector<PureState> members)
      : weights_(std::move(weights)), members_(std::move(members)) {}

  std::vector<double> weights_;
  std::vector<PureState> members_;
};

struct SuperpositionTerm {
  Complex coefficient;
  int level;
};

PureState make_fock(int level, int cutoff);

/// psi_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), renormalized on the cutoff.
/// Throws Error(truncation) if the Poisson tail above cutoff-1 is >= 1e-12.
PureState make_coherent(Complex alpha, int cutoff);
/// Coherent state at coherent_cutoff(alpha).
PureState make_coherent(Complex alpha);
/// Smallest cutoff whose Poisson tail is below kAutoTailBound.
int coherent_cutoff(Complex alpha);

/// Duplicate levels are summed before normalizing.
PureState make_superposition(std::span<const SuperpositionTerm> terms, int cutoff);

/// Independent standard complex Gaussian amplitudes, normalized. Reproducible per seed.
PureState make_random_pure(int cutoff, std::uint64_t seed);

/// Bose-Einstein populations (1-q) q^n with q = nbar/(1+nbar), renormalized.
DensityMatrix make_thermal(double nbar, int cutoff);
DensityMatrix make_thermal(double nbar);
int thermal_cutoff(double nbar);

/// G G^dag / Tr with G a D x rank complex Gaussian matrix. rank must be in [1, D].
DensityMatrix make_random_mixed(int cutoff, int rank, std::uint64_t seed);

/// D x D matrix with sqrt(n) at (n-1, n).
Matrix annihilation_matrix(int cutoff);

double mean_photon_number(const PureState& state);
double mean_photon_number(const DensityMatrix& rho);

/// P[Poisson(mean) >= from], summed directly in the log domain.
double poisson_tail(double mean, int from);

} // namespace bsent
