#pragma once

// Entanglement monotones of the beam-splitter output and the entropic
// functionals used to certify their shape in T. All logarithms are natural.

#include <string>
#include <string_view>

#include "bsent/channels.hpp"

namespace bsent {

/// Eigenvalues at or below this are treated as exact zeros inside logarithms.
inline constexpr double kEigenvalueFloor = 1e-14;
/// X-weight allowed on the numerical kernel of Y in relative_entropy.
inline constexpr double kSupportWeight = 1e-10;
/// Base step for central differences in T (one Richardson refinement is applied).
inline constexpr double kDerivativeStep = 1e-4;

struct MonotoneKind {
  enum class Tag { von_neumann, renyi, purity, mixedness, g_concurrence, qcs_witness };

  Tag tag = Tag::von_neumann;
  double alpha = 1.0; // Renyi order; meaningful only for Tag::renyi

  static MonotoneKind von_neumann() { return {Tag::von_neumann, 1.0}; }
  /// Throws Error(domain) for alpha <= 0.
  static MonotoneKind renyi(double alpha);
  static MonotoneKind purity() { return {Tag::purity, 1.0}; }
  static MonotoneKind mixedness() { return {Tag::mixedness, 1.0}; }
  static MonotoneKind g_concurrence() { return {Tag::g_concurrence, 1.0}; }
  static MonotoneKind qcs_witness() { return {Tag::qcs_witness, 1.0}; }

  /// Bare family name: "von_neumann", "renyi", ...
  std::string name() const;
  /// name() plus ":alpha" for Renyi, e.g. "renyi:12".
  std::string label() const;
  /// Inverse of label() for a single order. Throws Error(domain).
  static MonotoneKind parse(std::string_view text);

  friend bool operator==(const MonotoneKind&, const MonotoneKind&) = default;
};

struct EntropyValue {
  double value;
  MonotoneKind kind;
};

EntropyValue von_neumann_entropy(const DensityMatrix& rho);
/// alpha == 1 dispatches to von_neumann_entropy.
EntropyValue renyi_entropy(const DensityMatrix& rho, double alpha);
EntropyValue purity(const DensityMatrix& rho);
EntropyValue mixedness(const DensityMatrix& rho);

/// d det(rho_T)^(1/d) with d = N + 1, where det runs over the occupied
/// (N+1) x (N+1) block: det(rho_T) = prod_i s_i^2 = |det M|^2. The block of M
/// is anti-triangular, so |det M| is taken from its anti-diagonal in the log
/// domain; general-purpose SVDs lose relative accuracy on this graded matrix.
/// Requires N >= m.max_occupied().
EntropyValue g_concurrence(const SchmidtMatrix& m, int max_occupied);
/// Uses m.support_bound(); throws Error(finite_dimension) when it is absent.
EntropyValue g_concurrence(const SchmidtMatrix& m);

/// log |det M| over the occupied block, from the anti-diagonal entries of M.
double log_abs_det_schmidt(const SchmidtMatrix& m, int max_occupied);
/// sum_i log s_i over the occupied block's singular values, computed with
/// linalg::graded_singular_values. Independent of the anti-triangular shortcut.
double log_schmidt_product(const SchmidtMatrix& m, int max_occupied);
/// Closed form of log |det M|: (N+1) log|psi_N| + (N+1)/2 log N! - sum_n log n!
/// + N(N+1)/4 log(T(1-T)).
double log_abs_det_closed_form(const PureState& psi, Transmission t);
/// The amplitude form d |det M|^(1/d) (scales as [T(1-T)]^(N/4)).
double g_concurrence_amplitude_form(const PureState& psi, Transmission t);

/// Tr[X (log X - log Y)]. Throws Error(support) when X has weight > 1e-10
/// on eigendirections of Y with eigenvalue <= 1e-14.
double relative_entropy(const DensityMatrix& x, const DensityMatrix& y);

struct DerivativeCheck {
  double lhs; // finite-difference dS/dT
  double rhs; // <a^dag a>_psi (H(tau_T||rho_T) - H(sigma_T||rho_T))
};

/// Both sides of the entropy-derivative identity. Requires T in [0.05, 0.95].
DerivativeCheck entropy_derivative_identity(const PureState& psi, Transmission t);

/// |H(tau_T||rho_T) - H(sigma_{1-T}||rho_{1-T})|. Requires T in (0, 1).
double relative_entropy_symmetry_residual(const PureState& psi, Transmission t);

/// 1 + T dlog(P)/dT with P the purity after loss.
double qcs_witness(const DensityMatrix& input, Transmission t);
double qcs_witness(const PureState& input, Transmission t);

/// sum_i p_i F(psi_i, T) for kind in {von_neumann, mixedness, g_concurrence}.
double ensemble_entanglement(const Ensemble& ens, MonotoneKind kind, Transmission t);

/// Value of a monotone for a pure input at transmission T.
double evaluate(const PureState& psi, MonotoneKind kind, Transmission t);
/// Same for a mixed input: the functional of E_T[rho]. g_concurrence is not
/// defined for mixed inputs (Error(domain)).
double evaluate(const DensityMatrix& rho, MonotoneKind kind, Transmission t);

/// Scalar function of T evaluated at one point; used by the derivative helpers.
template <class F>
double richardson_derivative(F&& f, double t, double h) {
  const double coarse = (f(t + h) - f(t - h)) / (2.0 * h);
  const double half = 0.5 * h;
  const double fine = (f(t + half) - f(t - half)) / (2.0 * half);
  return (4.0 * fine - coarse) / 3.0;
}

} // namespace bsent
