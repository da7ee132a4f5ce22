#pragma once

// Sweeps of monotones over T grids and the checks that certify their shape:
// mirror symmetry, concavity/convexity, peak at the balanced splitter,
// G-concurrence monotonicity, the entropy-derivative identity and the higher
// Renyi counterexample. Each check produces a TheoremReport.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bsent/monotones.hpp"
#include "bsent/overlap_poly.hpp"

namespace bsent {

struct GridSpec {
  double t_min = 0.01;
  double t_max = 0.99;
  int points = 101;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// 101 points on [0.01, 0.99]; the centre point is exactly 0.5.
inline constexpr GridSpec kDefaultGrid{0.01, 0.99, 101};
inline constexpr GridSpec kCounterexampleGrid{0.01, 0.99, 99};
inline constexpr GridSpec kDerivativeGrid{0.05, 0.95, 91};

/// Uniform grid. Intervals symmetric about 1/2 are built mirror-exact
/// (t[n-1-i] == 1 - t[i]) with an exact 0.5 for odd point counts.
/// Throws Error(grid) unless 0 <= t_min < t_max <= 1 and points >= 5.
std::vector<double> make_grid(const GridSpec& spec);

struct LabeledState {
  std::string label;
  std::variant<PureState, DensityMatrix> state;

  bool is_pure() const noexcept { return std::holds_alternative<PureState>(state); }
  const PureState& pure() const { return std::get<PureState>(state); }
  const DensityMatrix& mixed() const { return std::get<DensityMatrix>(state); }
  int cutoff() const;
};

struct SweepCurve {
  std::vector<double> grid;
  std::vector<double> values;
  MonotoneKind kind;
  std::string state_label;
  GridSpec spec;
};

/// Errors from lower modules are rethrown with the same code and the offending T.
SweepCurve sweep(const LabeledState& state, MonotoneKind kind, const GridSpec& spec = kDefaultGrid);
SweepCurve sweep_ensemble(const std::string& label, const Ensemble& ens, MonotoneKind kind,
                          const GridSpec& spec = kDefaultGrid);

struct Tolerances {
  double symmetry = 1e-10;
  double concavity = 1e-8; // relative to max(1, max|v|)
  double convexity = 1e-8;
  double peak = 1e-12;
  double monotonicity = 1e-10;
  double log_concavity = 1e-8;
  double derivative = 1e-6; // relative to max(1, |rhs|)
  double lemma3 = 1e-8;
  double residual = 1e-12;
  double determinant = 1e-9; // relative
  double data_processing = 1e-10;
  double separability = 1e-8;
  double qcs = 1e-6;
  double polynomial = 1e-12;
  double reconstruction = 1e-10;
};

enum class Expectation { pass, fail, informational };

struct TheoremReport {
  std::string check;
  std::string state;
  std::string kind;
  bool passed = false;
  double worst_margin = 0.0; // signed; positive means slack
  double tolerance = 0.0;
  std::vector<double> locus; // T value(s) achieving the worst margin
  GridSpec grid;
  Expectation expected = Expectation::pass;

  bool meets_expectation() const noexcept {
    return expected == Expectation::informational || passed == (expected == Expectation::pass);
  }
};

/// Builds a report with passed = (worst_margin >= -tolerance).
TheoremReport make_report(std::string check, std::string state, std::string kind, double worst_margin,
                          double tolerance, std::vector<double> locus, const GridSpec& grid);

/// worst |v(T) - v(1-T)|. Throws Error(grid) on a grid that is not mirror symmetric.
TheoremReport check_symmetry(const SweepCurve& curve, double tolerance = 1e-10);
/// worst (v[i-1] - 2 v[i] + v[i+1]) / h^2, scaled by max(1, max|v|), must be <= tolerance.
TheoremReport check_concavity(const SweepCurve& curve, double tolerance = 1e-8);
TheoremReport check_convexity(const SweepCurve& curve, double tolerance = 1e-8);
/// argmax at the grid point 0.5; margin = v(0.5) - max_{T != 0.5} v(T).
TheoremReport check_peak_at_half(const SweepCurve& curve, double tolerance = 1e-12);
/// Nondecreasing below 1/2, nonincreasing above, and log G concave where G > 1e-13.
/// The report carries whichever of the two criteria is closer to failing.
TheoremReport check_gconc_monotonicity(const SweepCurve& curve, double monotonicity_tol = 1e-10,
                                       double log_concavity_tol = 1e-8);
/// worst |lhs - rhs| / max(1, |rhs|) of entropy_derivative_identity over a grid inside [0.05, 0.95].
TheoremReport check_derivative_identity_sweep(const std::string& label, const PureState& psi,
                                              const GridSpec& spec = kDerivativeGrid,
                                              double tolerance = 1e-6);

/// qcs_witness <= 1 + tolerance at every grid point with T <= 1/2.
TheoremReport check_qcs_bound(const SweepCurve& curve, double tolerance = 1e-6);
/// |qcs_witness - 1| <= tolerance everywhere (classical inputs).
TheoremReport check_qcs_classical(const SweepCurve& curve, double tolerance = 1e-6);

/// Generic residual sweep: worst f(T) over the grid must stay below tolerance.
TheoremReport check_residual_sweep(std::string check, std::string label, const GridSpec& spec,
                                   double tolerance, const std::function<double(double)>& residual);

struct RenyiSummary {
  double alpha;
  double argmax_t;
  double max_value;
  bool concave;
  bool peak_at_half;
  double max_second_difference; // unscaled, largest (v[i-1] - 2v[i] + v[i+1]) / h^2
  double max_second_difference_t;
};

struct CounterexampleResult {
  std::vector<SweepCurve> curves;
  std::vector<RenyiSummary> summaries;
  std::vector<TheoremReport> reports;
};

/// Renyi entropies of orders 1..12 for |6> on the 99-point grid over [0.01, 0.99].
CounterexampleResult run_counterexample(const Tolerances& tol = {});

/// Ensemble-average checks (symmetry, peak, plus concavity for von_neumann and
/// mixedness or monotonicity for g_concurrence) and the concavity of
/// H_1(E_T[rho]) for the ensemble's density matrix itself.
std::vector<TheoremReport> check_mixed_state_suite(const std::string& label, const Ensemble& ens,
                                                   MonotoneKind kind,
                                                   const GridSpec& spec = kDefaultGrid,
                                                   const Tolerances& tol = {});

/// Concavity of H_1(E_T[rho]) for a mixed input (no symmetry is expected).
TheoremReport check_mixed_input_concavity(const LabeledState& mixed, const GridSpec& spec = kDefaultGrid,
                                          double tolerance = 1e-8);

enum class SuiteKind { full, quick };

struct CatalogueEntry {
  LabeledState state;
  std::string spec; // state-spec text that reproduces the state
};

/// The catalogued pure states: Fock 1..8, coherent 0.5 and 1.0, three
/// cat-like superpositions and five seeded random states (D <= 16).
std::vector<CatalogueEntry> pure_catalogue(SuiteKind kind = SuiteKind::full);

struct NamedEnsemble {
  std::string label;
  Ensemble ensemble;
};
/// Two finite-support ensembles with a common cutoff.
std::vector<NamedEnsemble> ensemble_catalogue();

/// Corrupted curves that each check must reject.
std::vector<TheoremReport> run_detector_fixtures(const Tolerances& tol = {});

struct SuiteOptions {
  SuiteKind kind = SuiteKind::full;
  GridSpec grid = kDefaultGrid;
  Tolerances tolerances;
  /// Perturbs an expected-pass curve so that the suite must fail.
  bool inject_corruption = false;
  /// Seeds the random pairs of the data-processing and overlap checks.
  std::uint64_t seed = 20260101;
};

std::vector<TheoremReport> run_suite(const SuiteOptions& options);

/// True iff every report meets its expectation.
bool suite_passed(const std::vector<TheoremReport>& reports);

} // namespace bsent
