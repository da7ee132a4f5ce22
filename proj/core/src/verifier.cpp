#include "bsent/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>

#include "bsent/linalg.hpp"

namespace bsent {

namespace {

constexpr double kMirrorTolerance = 1e-12;
constexpr double kUniformTolerance = 1e-9;
constexpr double kPeakLocation = 1e-12;
constexpr double kGFloor = 1e-13;
constexpr double kStrictSecondDifference = 1e-4;

std::string format_t(double t) {
  std::ostringstream out;
  out.precision(17);
  out << t;
  return out.str();
}

void require_curve(const SweepCurve& c, std::size_t min_points, const char* where) {
  if (c.grid.size() != c.values.size())
    throw Error(ErrorCode::grid, std::string(where) + ": grid and values differ in length");
  if (c.grid.size() < min_points)
    throw Error(ErrorCode::grid, std::string(where) + ": need at least " + std::to_string(min_points) +
                                     " grid points");
  for (std::size_t i = 1; i < c.grid.size(); ++i)
    if (!(c.grid[i] > c.grid[i - 1]))
      throw Error(ErrorCode::grid, std::string(where) + ": grid is not strictly increasing");
  for (double v : c.values)
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_state, std::string(where) + ": non-finite value");
}

double uniform_step(const SweepCurve& c, const char* where) {
  const double h = (c.grid.back() - c.grid.front()) / static_cast<double>(c.grid.size() - 1);
  for (std::size_t i = 1; i < c.grid.size(); ++i)
    if (std::abs((c.grid[i] - c.grid[i - 1]) - h) > kUniformTolerance * h)
      throw Error(ErrorCode::grid, std::string(where) + ": grid is not uniform");
  return h;
}

void require_mirror(const SweepCurve& c, const char* where) {
  const std::size_t n = c.grid.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(c.grid[n - 1 - i] - (1.0 - c.grid[i])) > kMirrorTolerance)
      throw Error(ErrorCode::grid, std::string(where) + ": grid is not symmetric about 0.5");
}

std::size_t center_index(const SweepCurve& c, const char* where) {
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    if (std::abs(c.grid[i] - 0.5) <= kPeakLocation) return i;
  throw Error(ErrorCode::grid, std::string(where) + ": grid does not contain T = 0.5");
}

struct SecondDifference {
  double worst; // largest signed value of sign * d2
  double t;
};

SecondDifference worst_second_difference(const std::vector<double>& grid, const std::vector<double>& v,
                                         double h, double sign) {
  SecondDifference out{-std::numeric_limits<double>::infinity(), grid.front()};
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double d2 = sign * (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (h * h);
    if (d2 > out.worst) out = {d2, grid[i]};
  }
  return out;
}

double curve_scale(const SweepCurve& c) {
  double m = 1.0;
  for (double v : c.values) m = std::max(m, std::abs(v));
  return m;
}

TheoremReport shape_report(const SweepCurve& c, double tolerance, double sign, const char* name) {
  require_curve(c, 7, name);
  const double h = uniform_step(c, name);
  const SecondDifference sd = worst_second_difference(c.grid, c.values, h, sign);
  return make_report(name, c.state_label, c.kind.label(), -sd.worst / curve_scale(c), tolerance, {sd.t},
                     c.spec);
}

[[noreturn]] void rethrow_at(const Error& e, const std::string& label, double t) {
  throw Error(e.code(), std::string(e.what()) + " [state " + label + ", T = " + format_t(t) + "]");
}

template <class F>
SweepCurve sweep_with(const std::string& label, MonotoneKind kind, const GridSpec& spec, F&& f) {
  SweepCurve curve{make_grid(spec), {}, kind, label, spec};
  curve.values.reserve(curve.grid.size());
  for (double t : curve.grid) {
    try {
      curve.values.push_back(f(Transmission(t)));
    } catch (const Error& e) {
      rethrow_at(e, label, t);
    }
  }
  return curve;
}

} // namespace

std::vector<double> make_grid(const GridSpec& spec) {
  if (!(spec.t_min >= 0.0 && spec.t_max <= 1.0 && spec.t_min < spec.t_max))
    throw Error(ErrorCode::grid, "grid: need 0 <= t_min < t_max <= 1");
  if (spec.points < 5) throw Error(ErrorCode::grid, "grid: need at least 5 points");
  const int n = spec.points;
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double h = (spec.t_max - spec.t_min) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = spec.t_min + i * h;
  grid.back() = spec.t_max;
  if (std::abs(spec.t_min + spec.t_max - 1.0) <= 1e-15) {
    for (int i = 0; i < n / 2; ++i) grid[n - 1 - i] = 1.0 - grid[i];
    if (n % 2 == 1) grid[n / 2] = 0.5;
  }
  return grid;
}

int LabeledState::cutoff() const {
  return is_pure() ? pure().cutoff() : mixed().cutoff();
}

SweepCurve sweep(const LabeledState& state, MonotoneKind kind, const GridSpec& spec) {
  return sweep_with(state.label, kind, spec, [&](Transmission t) {
    return std::visit([&](const auto& s) { return evaluate(s, kind, t); }, state.state);
  });
}

SweepCurve sweep_ensemble(const std::string& label, const Ensemble& ens, MonotoneKind kind,
                          const GridSpec& spec) {
  return sweep_with(label, kind, spec, [&](Transmission t) { return ensemble_entanglement(ens, kind, t); });
}

TheoremReport make_report(std::string check, std::string state, std::string kind, double worst_margin,
                          double tolerance, std::vector<double> locus, const GridSpec& grid) {
  TheoremReport r;
  r.check = std::move(check);
  r.state = std::move(state);
  r.kind = std::move(kind);
  r.worst_margin = worst_margin;
  r.tolerance = tolerance;
  r.passed = worst_margin >= -tolerance;
  r.locus = std::move(locus);
  r.grid = grid;
  return r;
}

TheoremReport check_symmetry(const SweepCurve& c, double tolerance) {
  require_curve(c, 2, "symmetry");
  require_mirror(c, "symmetry");
  const std::size_t n = c.grid.size();
  double worst = 0.0;
  std::vector<double> locus{c.grid.front(), c.grid.back()};
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double d = std::abs(c.values[i] - c.values[n - 1 - i]);
    if (d > worst) {
      worst = d;
      locus = {c.grid[i], c.grid[n - 1 - i]};
    }
  }
  return make_report("symmetry", c.state_label, c.kind.label(), -worst, tolerance, locus, c.spec);
}

TheoremReport check_concavity(const SweepCurve& c, double tolerance) {
  return shape_report(c, tolerance, 1.0, "concavity");
}

TheoremReport check_convexity(const SweepCurve& c, double tolerance) {
  return shape_report(c, tolerance, -1.0, "convexity");
}

TheoremReport check_peak_at_half(const SweepCurve& c, double tolerance) {
  require_curve(c, 2, "peak_at_half");
  const std::size_t centre = center_index(c, "peak_at_half");
  double rival = -std::numeric_limits<double>::infinity();
  double rival_t = c.grid[centre];
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    if (i == centre) continue;
    if (c.values[i] > rival) {
      rival = c.values[i];
      rival_t = c.grid[i];
    }
  }
  const double margin = c.values[centre] - rival;
  const double locus = margin >= -tolerance ? 0.5 : rival_t;
  return make_report("peak_at_half", c.state_label, c.kind.label(), margin, tolerance, {locus}, c.spec);
}

TheoremReport check_gconc_monotonicity(const SweepCurve& c, double monotonicity_tol,
                                       double log_concavity_tol) {
  require_curve(c, 7, "gconc_monotonicity");
  require_mirror(c, "gconc_monotonicity");
  const double h = uniform_step(c, "gconc_monotonicity");
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    if (c.grid[i] > 0.0 && c.grid[i] < 1.0 && !(c.values[i] > 0.0))
      throw Error(ErrorCode::domain, "gconc_monotonicity: nonpositive G = " + format_t(c.values[i]) +
                                         " at T = " + format_t(c.grid[i]));

  double mono = std::numeric_limits<double>::infinity();
  double mono_t = 0.5;
  for (std::size_t i = 0; i + 1 < c.grid.size(); ++i) {
    const double diff = c.values[i + 1] - c.values[i];
    double slack = std::numeric_limits<double>::infinity();
    if (c.grid[i + 1] <= 0.5 + kPeakLocation) slack = diff;
    else if (c.grid[i] >= 0.5 - kPeakLocation) slack = -diff;
    if (slack < mono) {
      mono = slack;
      mono_t = c.grid[i];
    }
  }

  double logc = std::numeric_limits<double>::infinity();
  double logc_t = 0.5;
  for (std::size_t i = 1; i + 1 < c.grid.size(); ++i) {
    if (c.values[i - 1] <= kGFloor || c.values[i] <= kGFloor || c.values[i + 1] <= kGFloor) continue;
    const double d2 =
        (std::log(c.values[i - 1]) - 2.0 * std::log(c.values[i]) + std::log(c.values[i + 1])) / (h * h);
    if (-d2 < logc) {
      logc = -d2;
      logc_t = c.grid[i];
    }
  }

  // Report the criterion with the smallest slack relative to its own tolerance.
  const double mono_ratio = mono / monotonicity_tol;
  const double logc_ratio = logc / log_concavity_tol;
  if (mono_ratio <= logc_ratio)
    return make_report("gconc_monotonicity", c.state_label, c.kind.label(), mono, monotonicity_tol, {mono_t},
                       c.spec);
  return make_report("gconc_monotonicity", c.state_label, c.kind.label(), logc, log_concavity_tol, {logc_t},
                     c.spec);
}

TheoremReport check_residual_sweep(std::string check, std::string label, const GridSpec& spec,
                                   double tolerance, const std::function<double(double)>& residual) {
  const std::vector<double> grid = make_grid(spec);
  double worst = 0.0;
  double worst_t = grid.front();
  for (double t : grid) {
    double r = 0.0;
    try {
      r = residual(t);
    } catch (const Error& e) {
      rethrow_at(e, label, t);
    }
    if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
    if (r > worst) {
      worst = r;
      worst_t = t;
    }
  }
  return make_report(std::move(check), std::move(label), "", -worst, tolerance, {worst_t}, spec);
}

TheoremReport check_derivative_identity_sweep(const std::string& label, const PureState& psi,
                                              const GridSpec& spec, double tolerance) {
  if (spec.t_min < 0.05 || spec.t_max > 0.95)
    throw Error(ErrorCode::grid, "derivative_identity: grid must lie inside [0.05, 0.95]");
  TheoremReport r = check_residual_sweep("derivative_identity", label, spec, tolerance, [&](double t) {
    const DerivativeCheck d = entropy_derivative_identity(psi, Transmission(t));
    return std::abs(d.lhs - d.rhs) / std::max(1.0, std::abs(d.rhs));
  });
  r.kind = MonotoneKind::von_neumann().label();
  return r;
}

TheoremReport check_qcs_bound(const SweepCurve& c, double tolerance) {
  require_curve(c, 1, "qcs_bound");
  double worst = std::numeric_limits<double>::infinity();
  double worst_t = 0.5;
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    if (c.grid[i] <= 0.5 && 1.0 - c.values[i] < worst) {
      worst = 1.0 - c.values[i];
      worst_t = c.grid[i];
    }
  if (!std::isfinite(worst)) worst = 0.0; // no grid point at or below 1/2
  return make_report("qcs_bound", c.state_label, c.kind.label(), worst, tolerance, {worst_t}, c.spec);
}

TheoremReport check_qcs_classical(const SweepCurve& c, double tolerance) {
  require_curve(c, 1, "qcs_classical");
  double dev = 0.0;
  double dev_t = c.grid.front();
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    if (std::abs(c.values[i] - 1.0) > dev) {
      dev = std::abs(c.values[i] - 1.0);
      dev_t = c.grid[i];
    }
  return make_report("qcs_classical", c.state_label, c.kind.label(), -dev, tolerance, {dev_t}, c.spec);
}

CounterexampleResult run_counterexample(const Tolerances& tol) {
  CounterexampleResult out;
  const LabeledState fock6{"fock:6", make_fock(6, 7)};
  const GridSpec spec = kCounterexampleGrid;
  double strict = -std::numeric_limits<double>::infinity();
  double strict_t = 0.5;
  double offset = 0.0;
  double offset_t = 0.5;

  for (int a = 1; a <= 12; ++a) {
    SweepCurve curve = sweep(fock6, MonotoneKind::renyi(a), spec);
    const double h = uniform_step(curve, "counterexample");
    const SecondDifference sd = worst_second_difference(curve.grid, curve.values, h, 1.0);
    const auto argmax = std::max_element(curve.values.begin(), curve.values.end());

    TheoremReport conc = check_concavity(curve, tol.concavity);
    TheoremReport peak = check_peak_at_half(curve, tol.peak);
    TheoremReport sym = check_symmetry(curve, tol.symmetry);
    // The grid argmax with ties toward the centre.
    const double argmax_t = peak.passed ? 0.5 : curve.grid[argmax - curve.values.begin()];

    out.summaries.push_back({static_cast<double>(a), argmax_t, *argmax, conc.passed, peak.passed, sd.worst, sd.t});
    if (a > 2) {
      conc.expected = Expectation::informational;
      peak.expected = Expectation::informational;
      if (sd.worst > strict) {
        strict = sd.worst;
        strict_t = sd.t;
      }
      if (std::abs(argmax_t - 0.5) > offset) {
        offset = std::abs(argmax_t - 0.5);
        offset_t = argmax_t;
      }
    }
    out.reports.push_back(std::move(sym));
    out.reports.push_back(std::move(conc));
    out.reports.push_back(std::move(peak));
    out.curves.push_back(std::move(curve));
  }

  // Adjacent orders: H_a(T) >= H_{a+1}(T) pointwise.
  double ordering = std::numeric_limits<double>::infinity();
  double ordering_t = 0.5;
  for (std::size_t k = 0; k + 1 < out.curves.size(); ++k)
    for (std::size_t i = 0; i < out.curves[k].grid.size(); ++i) {
      const double slack = out.curves[k].values[i] - out.curves[k + 1].values[i];
      if (slack < ordering) {
        ordering = slack;
        ordering_t = out.curves[k].grid[i];
      }
    }
  out.reports.push_back(make_report("renyi_ordering", "fock:6", "renyi:1..12", ordering, tol.monotonicity,
                                    {ordering_t}, spec));
  out.reports.push_back(make_report("counterexample_strict_nonconcave", "fock:6", "renyi:3..12",
                                    strict - kStrictSecondDifference, 0.0, {strict_t}, spec));
  const double h = (spec.t_max - spec.t_min) / (spec.points - 1);
  out.reports.push_back(make_report("counterexample_off_center", "fock:6", "renyi:3..12", offset - h,
                                    0.0, {offset_t}, spec));
  return out;
}

TheoremReport check_mixed_input_concavity(const LabeledState& mixed, const GridSpec& spec, double tolerance) {
  TheoremReport r = check_concavity(sweep(mixed, MonotoneKind::von_neumann(), spec), tolerance);
  r.check = "mixed_input_concavity";
  return r;
}

std::vector<TheoremReport> check_mixed_state_suite(const std::string& label, const Ensemble& ens,
                                                   MonotoneKind kind, const GridSpec& spec,
                                                   const Tolerances& tol) {
  using Tag = MonotoneKind::Tag;
  if (kind.tag != Tag::von_neumann && kind.tag != Tag::mixedness && kind.tag != Tag::g_concurrence)
    throw Error(ErrorCode::domain, "mixed_state_suite: unsupported monotone " + kind.label());
  const SweepCurve curve = sweep_ensemble(label, ens, kind, spec);
  std::vector<TheoremReport> out;
  out.push_back(check_symmetry(curve, tol.symmetry));
  out.push_back(check_peak_at_half(curve, tol.peak));
  if (kind.tag == Tag::g_concurrence)
    out.push_back(check_gconc_monotonicity(curve, tol.monotonicity, tol.log_concavity));
  else
    out.push_back(check_concavity(curve, tol.concavity));
  for (auto& r : out) r.check = "ensemble_" + r.check;
  out.push_back(check_mixed_input_concavity({label, ens.mixture()}, spec, tol.concavity));
  return out;
}

std::vector<CatalogueEntry> pure_catalogue(SuiteKind kind) {
  std::vector<CatalogueEntry> out;
  const int fock_max = kind == SuiteKind::full ? 8 : 4;
  for (int n = 1; n <= fock_max; ++n) {
    const std::string s = "fock:" + std::to_string(n);
    out.push_back({{s, make_fock(n, n + 1)}, s});
  }
  out.push_back({{"coherent:0.5", make_coherent(Complex(0.5, 0.0))}, "coherent:0.5"});
  if (kind == SuiteKind::full)
    out.push_back({{"coherent:1", make_coherent(Complex(1.0, 0.0))}, "coherent:1"});

  const SuperpositionTerm sup1[] = {{0.6, 0}, {0.8, 3}};
  out.push_back({{"sup:0.6|0>+0.8|3>", make_superposition(sup1, 4)}, "sup:0.6|0>+0.8|3>"});
  if (kind == SuiteKind::full) {
    const SuperpositionTerm sup2[] = {{1.0, 0}, {1.0, 4}};
    out.push_back({{"sup:1|0>+1|4>", make_superposition(sup2, 5)}, "sup:1|0>+1|4>"});
    // Even cat with alpha = 1 kept through level 6: weights 1/sqrt(n!).
    const SuperpositionTerm cat[] = {{1.0, 0}, {1.0 / std::sqrt(2.0), 2}, {1.0 / std::sqrt(24.0), 4},
                                     {1.0 / std::sqrt(720.0), 6}};
    std::ostringstream spec;
    spec.precision(17);
    spec << "sup:";
    for (std::size_t i = 0; i < std::size(cat); ++i)
      spec << (i ? "+" : "") << cat[i].coefficient.real() << "|" << cat[i].level << ">";
    out.push_back({{spec.str(), make_superposition(cat, 7)}, spec.str()});
  }

  const std::vector<std::pair<int, int>> randoms =
      kind == SuiteKind::full ? std::vector<std::pair<int, int>>{{4, 100}, {6, 101}, {8, 102}, {12, 103}, {16, 104}}
                              : std::vector<std::pair<int, int>>{{6, 101}};
  for (const auto& [dim, seed] : randoms) {
    const std::string s = "random:" + std::to_string(dim) + "," + std::to_string(seed);
    out.push_back({{s, make_random_pure(dim, static_cast<std::uint64_t>(seed))}, s});
  }
  return out;
}

std::vector<NamedEnsemble> ensemble_catalogue() {
  std::vector<NamedEnsemble> out;
  {
    std::vector<PureState> members{make_fock(1, 4), make_fock(3, 4)};
    out.push_back({"{0.5 fock:1, 0.5 fock:3}", Ensemble::make({0.5, 0.5}, std::move(members))});
  }
  {
    const SuperpositionTerm sup[] = {{0.6, 0}, {0.8, 3}};
    std::vector<PureState> members{make_fock(2, 4), make_superposition(sup, 4)};
    out.push_back({"{0.3 fock:2, 0.7 sup:0.6|0>+0.8|3>}", Ensemble::make({0.3, 0.7}, std::move(members))});
  }
  return out;
}

std::vector<TheoremReport> run_detector_fixtures(const Tolerances& tol) {
  const LabeledState fock3{"fixture:fock:3", make_fock(3, 4)};
  const GridSpec spec = kDefaultGrid;
  std::vector<TheoremReport> out;
  auto expect_fail = [&](TheoremReport r) {
    r.expected = Expectation::fail;
    out.push_back(std::move(r));
  };
  auto at = [](const SweepCurve& c, double t) {
    const auto it = std::min_element(c.grid.begin(), c.grid.end(),
                                     [&](double a, double b) { return std::abs(a - t) < std::abs(b - t); });
    return static_cast<std::size_t>(it - c.grid.begin());
  };

  SweepCurve s = sweep(fock3, MonotoneKind::von_neumann(), spec);
  s.values[at(s, 0.2)] += 1e-6;
  expect_fail(check_symmetry(s, tol.symmetry));

  SweepCurve c = sweep(fock3, MonotoneKind::von_neumann(), spec);
  c.values[at(c, 0.3)] -= 1e-3;
  expect_fail(check_concavity(c, tol.concavity));

  SweepCurve v = sweep(fock3, MonotoneKind::purity(), spec);
  v.values[at(v, 0.3)] += 1e-3;
  expect_fail(check_convexity(v, tol.convexity));

  SweepCurve p = sweep(fock3, MonotoneKind::von_neumann(), spec);
  p.values[at(p, 0.3)] += 0.5;
  expect_fail(check_peak_at_half(p, tol.peak));

  SweepCurve g = sweep(fock3, MonotoneKind::g_concurrence(), spec);
  g.values[at(g, 0.3)] *= 0.9;
  expect_fail(check_gconc_monotonicity(g, tol.monotonicity, tol.log_concavity));

  expect_fail(check_residual_sweep("residual", "fixture:constant", spec, tol.residual,
                                   [](double) { return 1e-6; }));
  return out;
}

namespace {

void append(std::vector<TheoremReport>& out, std::vector<TheoremReport>&& more) {
  for (auto& r : more) out.push_back(std::move(r));
}

TheoremReport named(TheoremReport r, std::string check, std::string kind) {
  r.check = std::move(check);
  r.kind = std::move(kind);
  return r;
}

std::vector<TheoremReport> pure_state_reports(const CatalogueEntry& entry, const SuiteOptions& o,
                                              bool corrupt) {
  const Tolerances& tol = o.tolerances;
  const GridSpec& grid = o.grid;
  const LabeledState& ls = entry.state;
  const PureState& psi = ls.pure();
  const std::string& label = ls.label;
  std::vector<TheoremReport> out;

  SweepCurve vn = sweep(ls, MonotoneKind::von_neumann(), grid);
  if (corrupt) vn.values[vn.values.size() / 4] -= 1e-3;
  out.push_back(check_symmetry(vn, tol.symmetry));
  out.push_back(check_concavity(vn, tol.concavity));
  out.push_back(check_peak_at_half(vn, tol.peak));

  const SweepCurve pur = sweep(ls, MonotoneKind::purity(), grid);
  out.push_back(check_symmetry(pur, tol.symmetry));
  out.push_back(check_convexity(pur, tol.convexity));
  const SweepCurve mix = sweep(ls, MonotoneKind::mixedness(), grid);
  out.push_back(check_peak_at_half(mix, tol.peak));
  out.push_back(check_concavity(mix, tol.concavity));

  out.push_back(check_peak_at_half(sweep(ls, MonotoneKind::renyi(2.0), grid), tol.peak));

  if (psi.finite_support()) {
    const SweepCurve g = sweep(ls, MonotoneKind::g_concurrence(), grid);
    out.push_back(check_symmetry(g, tol.symmetry));
    out.push_back(check_gconc_monotonicity(g, tol.monotonicity, tol.log_concavity));
    out.push_back(check_peak_at_half(g, tol.peak));
    const int n = psi.max_occupied();
    out.push_back(named(check_residual_sweep("gconc_determinant", label, grid, tol.determinant,
                                             [&](double t) {
                                               const Transmission tt(t);
                                               const SchmidtMatrix m = beam_splitter_output(psi, tt);
                                               const double anti = log_abs_det_schmidt(m, n);
                                               const double svd = log_schmidt_product(m, n);
                                               const double closed = log_abs_det_closed_form(psi, tt);
                                               // |det ratio - 1| ~ |log difference|
                                               return std::max(std::abs(std::expm1(anti - svd)),
                                                               std::abs(std::expm1(anti - closed)));
                                             }),
                        "gconc_determinant", MonotoneKind::g_concurrence().label()));
  }

  {
    const SweepCurve q = sweep(ls, MonotoneKind::qcs_witness(), grid);
    out.push_back(check_qcs_bound(q, tol.qcs));
    if (!psi.finite_support()) out.push_back(check_qcs_classical(q, tol.qcs));
  }

  if (!psi.finite_support()) {
    // Separable output: every Schmidt value beyond the first and every monotone vanish.
    out.push_back(named(check_residual_sweep("separability", label, grid, tol.separability,
                                             [&](double t) {
                                               const Transmission tt(t);
                                               const RealVector s = schmidt_values(beam_splitter_output(psi, tt));
                                               const DensityMatrix rho = lossy_state(psi, tt);
                                               return std::max({s.size() > 1 ? s(1) : 0.0,
                                                                von_neumann_entropy(rho).value,
                                                                mixedness(rho).value,
                                                                renyi_entropy(rho, 2.0).value});
                                             }),
                        "separability", "all"));
  }

  out.push_back(check_derivative_identity_sweep(label, psi, kDerivativeGrid, tol.derivative));
  out.push_back(named(check_residual_sweep("lemma3_symmetry", label, grid, tol.lemma3,
                                           [&](double t) {
                                             return relative_entropy_symmetry_residual(psi, Transmission(t));
                                           }),
                      "lemma3_symmetry", "relative_entropy"));
  out.push_back(named(check_residual_sweep("schmidt_transpose", label, grid, tol.residual,
                                           [&](double t) { return check_schmidt_transpose(psi, Transmission(t)); }),
                      "schmidt_transpose", "schmidt"));
  out.push_back(named(check_residual_sweep("multiplicativity", label, grid, tol.residual,
                                           [&](double t) {
                                             const DensityMatrix rho = psi.projector();
                                             return check_multiplicativity(rho, Transmission(t),
                                                                           Transmission(1.0 - 0.5 * t));
                                           }),
                      "multiplicativity", "channel"));

  {
    const OverlapPolynomial poly = purity_polynomial(psi);
    double odd = 0.0;
    double low = 0.0;
    for (int m = 0; m <= poly.m_max(); ++m) {
      if (m % 2 == 1) odd = std::max(odd, std::abs(poly.coefficient(m)));
      low = std::min(low, poly.coefficient(m));
    }
    out.push_back(make_report("purity_polynomial_even", label, "purity", -odd, tol.polynomial, {}, grid));
    out.push_back(make_report("purity_polynomial_nonnegative", label, "purity", low, tol.polynomial, {}, grid));
    out.push_back(named(check_residual_sweep("purity_polynomial_reconstruction", label, grid,
                                             tol.reconstruction,
                                             [&](double t) {
                                               const Transmission tt(t);
                                               return std::abs(poly.evaluate(tt) -
                                                               purity(lossy_state(psi, tt)).value);
                                             }),
                        "purity_polynomial_reconstruction", "purity"));
  }
  return out;
}

std::vector<TheoremReport> channel_reports(const SuiteOptions& o, int pairs_dp, int pairs_overlap) {
  const Tolerances& tol = o.tolerances;
  std::vector<TheoremReport> out;
  constexpr int kKrausCutoff = 16;
  out.push_back(named(check_residual_sweep("kraus_commutation", "cutoff:16", o.grid, tol.residual,
                                           [&](double t) {
                                             double worst = 0.0;
                                             for (int n = 0; n + 2 <= kKrausCutoff; ++n)
                                               worst = std::max(worst, check_kraus_commutation(Transmission(t), n,
                                                                                               kKrausCutoff));
                                             return worst;
                                           }),
                      "kraus_commutation", "channel"));
  out.push_back(named(check_residual_sweep("difference_mode_identity", "cutoff:16", o.grid, tol.residual,
                                           [&](double t) {
                                             return check_difference_mode_identity(Transmission(t), kKrausCutoff);
                                           }),
                      "difference_mode_identity", "channel"));

  // Data processing: H(E(X)||E(Y)) <= H(X||Y) on seeded full-rank pairs.
  {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> t_dist(0.05, 0.95);
    std::uniform_int_distribution<int> d_dist(2, 8);
    double worst = std::numeric_limits<double>::infinity();
    double worst_t = 0.5;
    for (int k = 0; k < pairs_dp; ++k) {
      const int d = d_dist(rng);
      const DensityMatrix x = make_random_mixed(d, d, o.seed + 1000 + 2 * static_cast<std::uint64_t>(k));
      const DensityMatrix y = make_random_mixed(d, d, o.seed + 1001 + 2 * static_cast<std::uint64_t>(k));
      const Transmission t(t_dist(rng));
      const double slack = relative_entropy(x, y) - relative_entropy(loss_apply(x, t), loss_apply(y, t));
      if (slack < worst) {
        worst = slack;
        worst_t = t.value();
      }
    }
    out.push_back(make_report("data_processing", std::to_string(pairs_dp) + " seeded pairs", "relative_entropy",
                              worst, tol.data_processing, {worst_t}, o.grid));
  }

  // Overlap polynomial on seeded PSD pairs of mixed rank.
  {
    std::mt19937_64 rng(o.seed + 1);
    std::uniform_int_distribution<int> d_dist(1, 10);
    const std::vector<double> grid = make_grid(o.grid);
    double low = std::numeric_limits<double>::infinity();
    double resid = 0.0;
    double resid_t = 0.5;
    for (int k = 0; k < pairs_overlap; ++k) {
      const int d = d_dist(rng);
      std::uniform_int_distribution<int> r_dist(1, d);
      const DensityMatrix x = make_random_mixed(d, r_dist(rng), o.seed + 5000 + 2 * static_cast<std::uint64_t>(k));
      const DensityMatrix y = make_random_mixed(d, r_dist(rng), o.seed + 5001 + 2 * static_cast<std::uint64_t>(k));
      const OverlapPolynomial poly = overlap_coefficients(x, y);
      for (double p : poly.coefficients()) low = std::min(low, p);
      for (double t : grid) {
        const double r = std::abs(overlap_reconstruct(poly, Transmission(t)) - overlap_direct(x, y, Transmission(t)));
        if (r > resid) {
          resid = r;
          resid_t = t;
        }
      }
    }
    const std::string label = std::to_string(pairs_overlap) + " seeded pairs";
    out.push_back(make_report("overlap_nonnegative", label, "overlap", low, tol.polynomial, {}, o.grid));
    out.push_back(make_report("overlap_reconstruction", label, "overlap", -resid, tol.reconstruction,
                              {resid_t}, o.grid));
  }
  return out;
}

} // namespace

std::vector<TheoremReport> run_suite(const SuiteOptions& o) {
  const bool full = o.kind == SuiteKind::full;
  std::vector<TheoremReport> out;
  const std::vector<CatalogueEntry> catalogue = pure_catalogue(o.kind);
  for (std::size_t i = 0; i < catalogue.size(); ++i)
    append(out, pure_state_reports(catalogue[i], o, o.inject_corruption && i == 0));

  out.push_back(check_mixed_input_concavity({"thermal:0.5", make_thermal(0.5)}, o.grid, o.tolerances.concavity));

  const std::vector<NamedEnsemble> ensembles = ensemble_catalogue();
  for (std::size_t e = 0; e < (full ? ensembles.size() : 1); ++e)
    for (MonotoneKind kind : {MonotoneKind::von_neumann(), MonotoneKind::mixedness(), MonotoneKind::g_concurrence()})
      append(out, check_mixed_state_suite(ensembles[e].label, ensembles[e].ensemble, kind, o.grid, o.tolerances));

  append(out, std::move(run_counterexample(o.tolerances).reports));
  append(out, channel_reports(o, full ? 100 : 10, full ? 200 : 20));
  append(out, run_detector_fixtures(o.tolerances));
  return out;
}

bool suite_passed(const std::vector<TheoremReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const TheoremReport& r) { return r.meets_expectation(); });
}

} // namespace bsent
