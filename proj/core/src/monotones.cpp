#include "bsent/monotones.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "bsent/linalg.hpp"

namespace bsent {

namespace {

constexpr double kValueSlack = 1e-10;

EntropyValue checked(double value, MonotoneKind kind) {
  bool ok = std::isfinite(value);
  switch (kind.tag) {
  case MonotoneKind::Tag::von_neumann:
  case MonotoneKind::Tag::renyi:
  case MonotoneKind::Tag::g_concurrence: ok = ok && value >= -kValueSlack; break;
  case MonotoneKind::Tag::purity: ok = ok && value >= -kValueSlack && value <= 1.0 + kValueSlack; break;
  case MonotoneKind::Tag::mixedness: ok = ok && value >= -kValueSlack && value <= 1.0; break;
  case MonotoneKind::Tag::qcs_witness: break;
  }
  if (!ok)
    throw Error(ErrorCode::invalid_state,
                kind.label() + " evaluated to out-of-range value " + std::to_string(value));
  return {value, kind};
}

void require_same_cutoff(const DensityMatrix& x, const DensityMatrix& y, const char* where) {
  if (x.cutoff() != y.cutoff())
    throw Error(ErrorCode::cutoff, std::string(where) + ": cutoffs differ (" +
                                       std::to_string(x.cutoff()) + " vs " +
                                       std::to_string(y.cutoff()) + ")");
}

double entropy_of(const PureState& psi, double t) { return von_neumann_entropy(lossy_state(psi, Transmission(t))).value; }

// Step that keeps t +- h inside the open interval.
double interior_step(double t) { return std::min({kDerivativeStep, 0.5 * t, 0.5 * (1.0 - t)}); }

} // namespace

MonotoneKind MonotoneKind::renyi(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::domain, "renyi: order must be positive and finite");
  return {Tag::renyi, alpha};
}

std::string MonotoneKind::name() const {
  switch (tag) {
  case Tag::von_neumann: return "von_neumann";
  case Tag::renyi: return "renyi";
  case Tag::purity: return "purity";
  case Tag::mixedness: return "mixedness";
  case Tag::g_concurrence: return "g_concurrence";
  case Tag::qcs_witness: return "qcs_witness";
  }
  return "unknown";
}

std::string MonotoneKind::label() const {
  if (tag != Tag::renyi) return name();
  std::ostringstream out;
  out.precision(17);
  out << "renyi:" << alpha;
  return out.str();
}

MonotoneKind MonotoneKind::parse(std::string_view text) {
  std::string lower(text);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "von_neumann" || lower == "entropy") return von_neumann();
  if (lower == "purity") return purity();
  if (lower == "mixedness") return mixedness();
  if (lower == "g_concurrence") return g_concurrence();
  if (lower == "qcs_witness" || lower == "qcs") return qcs_witness();
  constexpr std::string_view prefix = "renyi:";
  if (lower.starts_with(prefix)) {
    const char* first = lower.data() + prefix.size();
    const char* last = lower.data() + lower.size();
    double alpha = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, alpha);
    if (ec == std::errc() && ptr == last) return renyi(alpha);
  }
  throw Error(ErrorCode::domain, "unknown monotone '" + std::string(text) + "'");
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lam : rho.eigenvalues())
    if (lam > kEigenvalueFloor) s -= lam * std::log(lam);
  return checked(s, MonotoneKind::von_neumann());
}

EntropyValue renyi_entropy(const DensityMatrix& rho, double alpha) {
  const MonotoneKind kind = MonotoneKind::renyi(alpha);
  if (alpha == 1.0) return {von_neumann_entropy(rho).value, kind};
  double moment = 0.0;
  for (double lam : rho.eigenvalues())
    if (lam > kEigenvalueFloor) moment += std::pow(lam, alpha);
  return checked(std::log(moment) / (1.0 - alpha), kind);
}

EntropyValue purity(const DensityMatrix& rho) {
  return checked(rho.matrix().squaredNorm(), MonotoneKind::purity());
}

EntropyValue mixedness(const DensityMatrix& rho) {
  return checked(1.0 - rho.matrix().squaredNorm(), MonotoneKind::mixedness());
}

double log_abs_det_schmidt(const SchmidtMatrix& m, int max_occupied) {
  if (max_occupied < 0 || max_occupied >= m.cutoff())
    throw Error(ErrorCode::finite_dimension, "g_concurrence: top level outside the cutoff");
  if (max_occupied < m.max_occupied())
    throw Error(ErrorCode::domain, "g_concurrence: N is below the input's top occupied level");
  // The occupied block is anti-triangular, so |det| is the product of its anti-diagonal.
  double total = 0.0;
  for (int k = 0; k <= max_occupied; ++k) {
    const double entry = std::abs(m.entries()(k, max_occupied - k));
    if (!(entry > 0.0)) return -std::numeric_limits<double>::infinity();
    total += std::log(entry);
  }
  return total;
}

double log_schmidt_product(const SchmidtMatrix& m, int max_occupied) {
  if (max_occupied < 0 || max_occupied >= m.cutoff())
    throw Error(ErrorCode::finite_dimension, "log_schmidt_product: top level outside the cutoff");
  const Matrix block = m.entries().topLeftCorner(max_occupied + 1, max_occupied + 1);
  const RealVector s = linalg::graded_singular_values(block);
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!(s(i) > 0.0)) return -std::numeric_limits<double>::infinity();
    total += std::log(s(i));
  }
  return total;
}

EntropyValue g_concurrence(const SchmidtMatrix& m, int max_occupied) {
  const double d = max_occupied + 1.0;
  const double log_det = log_abs_det_schmidt(m, max_occupied);
  // det(rho_T) over the block = |det M|^2
  const double g = std::isinf(log_det) ? 0.0 : d * std::exp(2.0 * log_det / d);
  return checked(g, MonotoneKind::g_concurrence());
}

EntropyValue g_concurrence(const SchmidtMatrix& m) {
  const auto bound = m.support_bound();
  if (!bound)
    throw Error(ErrorCode::finite_dimension,
                "g_concurrence: input has no finite Fock support");
  return g_concurrence(m, *bound);
}

double log_abs_det_closed_form(const PureState& psi, Transmission t) {
  const int n = psi.max_occupied();
  const double top = std::abs(psi.amplitude(n));
  const double tt = t.value() * (1.0 - t.value());
  if (top == 0.0 || (n > 0 && tt == 0.0)) return -std::numeric_limits<double>::infinity();
  double sum_log_factorials = 0.0;
  for (int k = 0; k <= n; ++k) sum_log_factorials += std::lgamma(k + 1.0);
  const double log_n_factorial = std::lgamma(n + 1.0);
  const double log_tt = n > 0 ? std::log(tt) : 0.0;
  return (n + 1) * std::log(top) + 0.5 * (n + 1) * log_n_factorial - sum_log_factorials +
         0.25 * n * (n + 1) * log_tt;
}

double g_concurrence_amplitude_form(const PureState& psi, Transmission t) {
  const double d = psi.max_occupied() + 1.0;
  const double log_det = log_abs_det_closed_form(psi, t);
  return std::isinf(log_det) ? 0.0 : d * std::exp(log_det / d);
}

double relative_entropy(const DensityMatrix& x, const DensityMatrix& y) {
  require_same_cutoff(x, y, "relative_entropy");
  double x_log_x = 0.0;
  for (double lam : x.eigenvalues())
    if (lam > kEigenvalueFloor) x_log_x += lam * std::log(lam);

  const auto eig = linalg::hermitian_eig(y.matrix());
  const Matrix& v = eig.eigenvectors();
  const RealVector& mu = eig.eigenvalues();
  double x_log_y = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double weight = (v.col(j).adjoint() * x.matrix() * v.col(j)).value().real();
    if (mu(j) <= kEigenvalueFloor) {
      if (weight > kSupportWeight)
        throw Error(ErrorCode::support, "relative_entropy: X has weight " + std::to_string(weight) +
                                            " outside the support of Y");
      continue;
    }
    x_log_y += weight * std::log(mu(j));
  }
  return x_log_x - x_log_y;
}

DerivativeCheck entropy_derivative_identity(const PureState& psi, Transmission t) {
  const double tv = t.value();
  if (tv < 0.05 || tv > 0.95)
    throw Error(ErrorCode::domain, "entropy_derivative_identity: T must lie in [0.05, 0.95]");
  const double lhs = richardson_derivative([&](double s) { return entropy_of(psi, s); }, tv, kDerivativeStep);
  const double energy = mean_photon_number(psi);
  if (energy <= 1e-12)
    throw Error(ErrorCode::undefined_state, "entropy_derivative_identity: input has no photons");
  const DensityMatrix rho = lossy_state(psi, t);
  const double rhs = energy * (relative_entropy(tau_state(rho), rho) - relative_entropy(sigma_state(rho), rho));
  return {lhs, rhs};
}

double relative_entropy_symmetry_residual(const PureState& psi, Transmission t) {
  if (!(t.value() > 0.0 && t.value() < 1.0))
    throw Error(ErrorCode::domain, "relative_entropy_symmetry_residual: T must lie in (0, 1)");
  const DensityMatrix rho = lossy_state(psi, t);
  const DensityMatrix rho_mirror = lossy_state(psi, t.complement());
  const double lhs = relative_entropy(tau_state(rho), rho);
  const double rhs = relative_entropy(sigma_state(rho_mirror), rho_mirror);
  return std::abs(lhs - rhs);
}

double qcs_witness(const DensityMatrix& input, Transmission t) {
  const double tv = t.value();
  if (!(tv > 0.0 && tv < 1.0)) throw Error(ErrorCode::domain, "qcs_witness: T must lie in (0, 1)");
  auto p = [&](double s) { return purity(loss_apply(input, Transmission(s))).value; };
  const double slope = richardson_derivative(p, tv, interior_step(tv));
  return 1.0 + tv * slope / p(tv);
}

double qcs_witness(const PureState& input, Transmission t) {
  const double tv = t.value();
  if (!(tv > 0.0 && tv < 1.0)) throw Error(ErrorCode::domain, "qcs_witness: T must lie in (0, 1)");
  auto p = [&](double s) { return purity(lossy_state(input, Transmission(s))).value; };
  const double slope = richardson_derivative(p, tv, interior_step(tv));
  return 1.0 + tv * slope / p(tv);
}

double ensemble_entanglement(const Ensemble& ens, MonotoneKind kind, Transmission t) {
  using Tag = MonotoneKind::Tag;
  if (kind.tag != Tag::von_neumann && kind.tag != Tag::mixedness && kind.tag != Tag::g_concurrence)
    throw Error(ErrorCode::domain, "ensemble_entanglement: unsupported monotone " + kind.label());
  double total = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) total += ens.weights()[i] * evaluate(ens.members()[i], kind, t);
  return total;
}

double evaluate(const PureState& psi, MonotoneKind kind, Transmission t) {
  using Tag = MonotoneKind::Tag;
  switch (kind.tag) {
  case Tag::g_concurrence: return g_concurrence(beam_splitter_output(psi, t)).value;
  case Tag::qcs_witness: return qcs_witness(psi, t);
  default: break;
  }
  const DensityMatrix rho = lossy_state(psi, t);
  switch (kind.tag) {
  case Tag::von_neumann: return von_neumann_entropy(rho).value;
  case Tag::renyi: return renyi_entropy(rho, kind.alpha).value;
  case Tag::purity: return purity(rho).value;
  case Tag::mixedness: return mixedness(rho).value;
  default: break;
  }
  throw Error(ErrorCode::domain, "evaluate: unhandled monotone");
}

double evaluate(const DensityMatrix& input, MonotoneKind kind, Transmission t) {
  using Tag = MonotoneKind::Tag;
  if (kind.tag == Tag::g_concurrence)
    throw Error(ErrorCode::domain, "g_concurrence is defined for pure inputs only");
  if (kind.tag == Tag::qcs_witness) return qcs_witness(input, t);
  const DensityMatrix rho = loss_apply(input, t);
  switch (kind.tag) {
  case Tag::von_neumann: return von_neumann_entropy(rho).value;
  case Tag::renyi: return renyi_entropy(rho, kind.alpha).value;
  case Tag::purity: return purity(rho).value;
  case Tag::mixedness: return mixedness(rho).value;
  default: break;
  }
  throw Error(ErrorCode::domain, "evaluate: unhandled monotone");
}

} // namespace bsent
