#include "bsent/fock.hpp"

#include <cmath>
#include <random>
#include <string>

#include "bsent/linalg.hpp"

namespace bsent {

namespace {

int compute_max_occupied(const Vector& amplitudes) {
  for (Eigen::Index n = amplitudes.size() - 1; n > 0; --n)
    if (std::abs(amplitudes(n)) > kSupportThreshold) return static_cast<int>(n);
  return 0;
}

void require_cutoff(int cutoff, int minimum, const char* where) {
  if (cutoff < minimum)
    throw Error(ErrorCode::cutoff, std::string(where) + ": cutoff " + std::to_string(cutoff) +
                                       " is below the minimum " + std::to_string(minimum));
}

double geometric_ratio(double nbar) { return nbar / (1.0 + nbar); }

// Re/Im parts drawn from N(0, 1/2) so each entry is a standard complex Gaussian.
Matrix gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

} // namespace

PureState::PureState(Vector amplitudes, TruncationBudget budget, bool finite_support)
    : amplitudes_(std::move(amplitudes)), budget_(budget),
      max_occupied_(compute_max_occupied(amplitudes_)), finite_support_(finite_support) {}

PureState PureState::from_amplitudes(Vector amplitudes, TruncationBudget budget,
                                     bool finite_support) {
  require_cutoff(static_cast<int>(amplitudes.size()), 1, "PureState");
  if (!amplitudes.allFinite())
    throw Error(ErrorCode::invalid_state, "PureState: non-finite amplitude");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance)
    throw Error(ErrorCode::invalid_state,
                "PureState: squared norm " + std::to_string(norm2) + " is not 1");
  return PureState(std::move(amplitudes), budget, finite_support);
}

PureState PureState::padded(int cutoff) const {
  if (cutoff < this->cutoff())
    throw Error(ErrorCode::cutoff, "PureState::padded: target cutoff is smaller than the state's");
  Vector out = Vector::Zero(cutoff);
  out.head(this->cutoff()) = amplitudes_;
  return PureState(std::move(out), budget_, finite_support_);
}

DensityMatrix PureState::projector() const {
  return DensityMatrix::from_matrix(amplitudes_ * amplitudes_.adjoint(), budget_);
}

DensityMatrix::DensityMatrix(Matrix m, RealVector eigenvalues, TruncationBudget budget)
    : matrix_(std::move(m)), eigenvalues_(std::move(eigenvalues)), budget_(budget) {}

DensityMatrix DensityMatrix::from_matrix(const Matrix& m, TruncationBudget budget) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw Error(ErrorCode::invalid_state, "DensityMatrix: matrix must be square and non-empty");
  if (!m.allFinite()) throw Error(ErrorCode::invalid_state, "DensityMatrix: non-finite entry");
  const double asym = linalg::max_abs_diff(m, m.adjoint());
  if (asym > kHermitianTolerance)
    throw Error(ErrorCode::invalid_state,
                "DensityMatrix: not Hermitian (max deviation " + std::to_string(asym) + ")");
  Matrix h = 0.5 * (m + m.adjoint());
  const double trace = h.trace().real();
  if (std::abs(trace - 1.0) > kNormTolerance)
    throw Error(ErrorCode::invalid_state,
                "DensityMatrix: trace " + std::to_string(trace) + " is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  RealVector values = eig.eigenvalues();
  if (values(0) < -kPsdTolerance)
    throw Error(ErrorCode::invalid_state,
                "DensityMatrix: eigenvalue " + std::to_string(values(0)) + " is negative");
  return DensityMatrix(std::move(h), std::move(values), budget);
}

Ensemble Ensemble::make(std::vector<double> weights, std::vector<PureState> members) {
  if (weights.empty() || weights.size() != members.size())
    throw Error(ErrorCode::invalid_state, "Ensemble: weights and members must be non-empty and match");
  double total = 0.0;
  for (double p : weights) {
    if (!(p > 0.0)) throw Error(ErrorCode::invalid_state, "Ensemble: weights must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw Error(ErrorCode::invalid_state, "Ensemble: weights do not sum to 1");
  const int d = members.front().cutoff();
  for (const auto& psi : members)
    if (psi.cutoff() != d) throw Error(ErrorCode::cutoff, "Ensemble: members have different cutoffs");
  return Ensemble(std::move(weights), std::move(members));
}

DensityMatrix Ensemble::mixture() const {
  const int d = cutoff();
  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < members_.size(); ++i)
    rho += weights_[i] * members_[i].amplitudes() * members_[i].amplitudes().adjoint();
  return DensityMatrix::from_matrix(rho);
}

PureState make_fock(int level, int cutoff) {
  if (level < 0) throw Error(ErrorCode::domain, "make_fock: negative level");
  if (level >= cutoff)
    throw Error(ErrorCode::cutoff, "make_fock: level " + std::to_string(level) +
                                       " does not fit cutoff " + std::to_string(cutoff));
  Vector v = Vector::Zero(cutoff);
  v(level) = 1.0;
  return PureState::from_amplitudes(std::move(v), {0.0, static_cast<double>(level)});
}

double poisson_tail(double mean, int from) {
  if (from <= 0) return 1.0;
  if (mean <= 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double total = 0.0;
  // Terms decrease once n > mean; stop when they no longer contribute.
  for (int n = from;; ++n) {
    const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    total += term;
    if (n > mean && term <= 1e-30 * total) break;
    if (n > from + 100000) break;
  }
  return total;
}

PureState make_coherent(Complex alpha, int cutoff) {
  require_cutoff(cutoff, 1, "make_coherent");
  const double mean = std::norm(alpha);
  const double tail = poisson_tail(mean, cutoff);
  if (tail >= kTailBound)
    throw Error(ErrorCode::truncation, "make_coherent: Poisson tail " + std::to_string(tail) +
                                           " above level " + std::to_string(cutoff - 1) +
                                           " exceeds 1e-12");
  Vector v = Vector::Zero(cutoff);
  if (mean == 0.0) {
    v(0) = 1.0;
    return PureState::from_amplitudes(std::move(v));
  }
  const double log_abs = std::log(std::abs(alpha));
  const double phase = std::arg(alpha);
  for (int n = 0; n < cutoff; ++n) {
    const double log_mag = -0.5 * mean + n * log_abs - 0.5 * std::lgamma(n + 1.0);
    v(n) = std::polar(std::exp(log_mag), n * phase);
  }
  v /= v.norm();
  return PureState::from_amplitudes(std::move(v), {tail, mean}, false);
}

int coherent_cutoff(Complex alpha) {
  const double mean = std::norm(alpha);
  for (int d = 1; d <= kMaxAutoCutoff; ++d)
    if (poisson_tail(mean, d) < kAutoTailBound) return d;
  throw Error(ErrorCode::truncation, "coherent_cutoff: |alpha|^2 too large for the maximum cutoff");
}

PureState make_coherent(Complex alpha) { return make_coherent(alpha, coherent_cutoff(alpha)); }

PureState make_superposition(std::span<const SuperpositionTerm> terms, int cutoff) {
  require_cutoff(cutoff, 1, "make_superposition");
  Vector v = Vector::Zero(cutoff);
  for (const auto& term : terms) {
    if (term.level < 0 || term.level >= cutoff)
      throw Error(ErrorCode::cutoff, "make_superposition: level " + std::to_string(term.level) +
                                         " does not fit cutoff " + std::to_string(cutoff));
    v(term.level) += term.coefficient;
  }
  const double norm = v.norm();
  if (!(norm > 0.0))
    throw Error(ErrorCode::degenerate_input, "make_superposition: all coefficients vanish");
  v /= norm;
  return PureState::from_amplitudes(std::move(v));
}

PureState make_random_pure(int cutoff, std::uint64_t seed) {
  require_cutoff(cutoff, 2, "make_random_pure");
  Vector v = gaussian_matrix(cutoff, 1, seed).col(0);
  v /= v.norm();
  return PureState::from_amplitudes(std::move(v));
}

int thermal_cutoff(double nbar) {
  if (!(nbar >= 0.0)) throw Error(ErrorCode::domain, "thermal_cutoff: nbar must be >= 0");
  if (nbar == 0.0) return 1;
  const double q = geometric_ratio(nbar);
  // tail = q^D
  const double d = std::ceil(std::log(kAutoTailBound) / std::log(q));
  if (d > kMaxAutoCutoff)
    throw Error(ErrorCode::truncation, "thermal_cutoff: nbar too large for the maximum cutoff");
  int cutoff = std::max(1, static_cast<int>(d));
  while (std::pow(q, cutoff) >= kAutoTailBound) ++cutoff;
  return cutoff;
}

DensityMatrix make_thermal(double nbar, int cutoff) {
  if (!(nbar >= 0.0)) throw Error(ErrorCode::domain, "make_thermal: nbar must be >= 0");
  require_cutoff(cutoff, 1, "make_thermal");
  const double q = geometric_ratio(nbar);
  const double tail = std::pow(q, cutoff);
  if (tail >= kTailBound)
    throw Error(ErrorCode::truncation, "make_thermal: geometric tail " + std::to_string(tail) +
                                           " above level " + std::to_string(cutoff - 1) +
                                           " exceeds 1e-12");
  RealVector w(cutoff);
  double p = 1.0;
  for (int n = 0; n < cutoff; ++n, p *= q) w(n) = p;
  w /= w.sum();
  Matrix rho = w.cast<Complex>().asDiagonal();
  return DensityMatrix::from_matrix(rho, {tail, nbar});
}

DensityMatrix make_thermal(double nbar) { return make_thermal(nbar, thermal_cutoff(nbar)); }

DensityMatrix make_random_mixed(int cutoff, int rank, std::uint64_t seed) {
  require_cutoff(cutoff, 1, "make_random_mixed");
  if (rank < 1 || rank > cutoff) throw Error(ErrorCode::domain, "make_random_mixed: rank must be in [1, D]");
  const Matrix g = gaussian_matrix(cutoff, rank, seed);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(rho);
}

Matrix annihilation_matrix(int cutoff) {
  require_cutoff(cutoff, 1, "annihilation_matrix");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

double mean_photon_number(const PureState& state) {
  double total = 0.0;
  for (int n = 1; n < state.cutoff(); ++n) total += n * std::norm(state.amplitude(n));
  return total;
}

double mean_photon_number(const DensityMatrix& rho) {
  double total = 0.0;
  for (int n = 1; n < rho.cutoff(); ++n) total += n * rho.matrix()(n, n).real();
  return std::max(total, 0.0);
}

} // namespace bsent
