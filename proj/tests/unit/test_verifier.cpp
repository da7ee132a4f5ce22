#include <doctest.h>

#include <cmath>

#include "bsent/verifier.hpp"

using namespace bsent;

namespace {

SweepCurve synthetic(const GridSpec& spec, double (*f)(double), const char* label = "synthetic") {
  SweepCurve c{make_grid(spec), {}, MonotoneKind::von_neumann(), label, spec};
  for (double t : c.grid) c.values.push_back(f(t));
  return c;
}

} // namespace

TEST_CASE("default grid is mirror-exact and contains 0.5") {
  const std::vector<double> g = make_grid(kDefaultGrid);
  REQUIRE(g.size() == 101);
  CHECK(g.front() == 0.01);
  CHECK(g.back() == 0.99);
  CHECK(g[50] == 0.5);
  for (std::size_t i = 0; i < g.size() / 2; ++i) CHECK(g[g.size() - 1 - i] == 1.0 - g[i]);
  CHECK_THROWS_AS(make_grid({0.5, 0.4, 11}), Error);
  CHECK_THROWS_AS(make_grid({0.0, 1.0, 4}), Error);
  CHECK_THROWS_AS(make_grid({-0.1, 1.0, 11}), Error);
}

TEST_CASE("shape checks on synthetic curves") {
  const SweepCurve bump = synthetic(kDefaultGrid, [](double t) { return t * (1 - t); });
  CHECK(check_symmetry(bump).passed);
  CHECK(check_concavity(bump).passed);
  CHECK_FALSE(check_convexity(bump).passed);
  CHECK(check_peak_at_half(bump).passed);
  const SweepCurve skew = synthetic(kDefaultGrid, [](double t) { return t * (1 - t) * (1 + 0.3 * t); });
  CHECK_FALSE(check_symmetry(skew).passed);
  CHECK_FALSE(check_peak_at_half(skew).passed);
  const SweepCurve flat = synthetic(kDefaultGrid, [](double) { return 1.0; });
  CHECK(check_peak_at_half(flat).passed); // ties resolve toward 0.5
  CHECK(check_concavity(flat).passed);
  CHECK(check_convexity(flat).passed);
}

TEST_CASE("report invariant: passed iff margin >= -tolerance") {
  const SweepCurve bump = synthetic(kDefaultGrid, [](double t) { return std::sin(3.0 * t); });
  for (const TheoremReport& r : {check_symmetry(bump), check_concavity(bump), check_convexity(bump),
                                 check_peak_at_half(bump)})
    CHECK(r.passed == (r.worst_margin >= -r.tolerance));
}

TEST_CASE("grid preconditions are enforced") {
  const SweepCurve off = synthetic({0.1, 0.8, 11}, [](double t) { return t; });
  CHECK_THROWS_AS(check_symmetry(off), Error);
  const SweepCurve even = synthetic({0.01, 0.99, 100}, [](double t) { return t; });
  CHECK_THROWS_AS(check_peak_at_half(even), Error);
  SweepCurve short_curve = synthetic({0.01, 0.99, 5}, [](double t) { return t; });
  CHECK_THROWS_AS(check_concavity(short_curve), Error);
  SweepCurve jittered = synthetic(kDefaultGrid, [](double t) { return t; });
  jittered.grid[10] += 1e-4;
  CHECK_THROWS_AS(check_concavity(jittered), Error);
  CHECK_THROWS_AS(check_derivative_identity_sweep("fock:1", make_fock(1, 2), kDefaultGrid), Error);
}

TEST_CASE("G monotonicity check rejects nonpositive values") {
  SweepCurve g = synthetic(kDefaultGrid, [](double t) { return std::sqrt(t * (1 - t)); });
  CHECK(check_gconc_monotonicity(g).passed);
  g.values[20] = 0.0;
  CHECK_THROWS_AS(check_gconc_monotonicity(g), Error);
}

TEST_CASE("sweeps annotate errors with the offending T") {
  const LabeledState thermal{"thermal:0.5", make_thermal(0.5)};
  try {
    sweep(thermal, MonotoneKind::g_concurrence());
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
    CHECK(std::string(e.what()).find("T = 0.01") != std::string::npos);
  }
}

TEST_CASE("fock 1 sweep is the binary entropy") {
  const SweepCurve c = sweep({"fock:1", make_fock(1, 2)}, MonotoneKind::von_neumann(), {0.0, 1.0, 11});
  CHECK(c.values[5] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(c.values[0] == doctest::Approx(0.0));
  CHECK(check_peak_at_half(c).passed);
}

TEST_CASE("worked examples for individual checks") {
  const LabeledState f6{"fock:6", make_fock(6, 7)};
  CHECK(check_concavity(sweep(f6, MonotoneKind::von_neumann())).passed);
  const SweepCurve r12 = sweep(f6, MonotoneKind::renyi(12));
  CHECK(check_symmetry(r12).passed);
  CHECK_FALSE(check_concavity(r12).passed);
  CHECK_FALSE(check_peak_at_half(r12).passed);
  const LabeledState f1{"fock:1", make_fock(1, 2)};
  CHECK(check_concavity(sweep(f1, MonotoneKind::mixedness())).passed);
  CHECK(check_peak_at_half(sweep(f1, MonotoneKind::g_concurrence())).passed);
  CHECK(check_convexity(sweep({"fock:4", make_fock(4, 5)}, MonotoneKind::purity())).passed);
  CHECK(check_convexity(sweep({"coherent:1", make_coherent(Complex(1.0))}, MonotoneKind::purity())).passed);
  CHECK(check_gconc_monotonicity(sweep({"fock:3", make_fock(3, 4)}, MonotoneKind::g_concurrence())).passed);
  const SuperpositionTerm sup[] = {{0.6, 0}, {0.8, 3}};
  CHECK(check_gconc_monotonicity(sweep({"sup", make_superposition(sup, 4)}, MonotoneKind::g_concurrence())).passed);
  CHECK(check_derivative_identity_sweep("random:6,3", make_random_pure(6, 3)).passed);
  CHECK(check_derivative_identity_sweep("coherent:0.8", make_coherent(Complex(0.8))).passed);
}

TEST_CASE("counterexample bundle") {
  const CounterexampleResult r = run_counterexample();
  REQUIRE(r.curves.size() == 12);
  REQUIRE(r.summaries.size() == 12);
  CHECK(r.summaries[0].concave);
  CHECK(r.summaries[0].argmax_t == 0.5);
  CHECK(r.summaries[1].argmax_t == 0.5);
  CHECK_FALSE(r.summaries[11].concave);
  CHECK(r.summaries[11].argmax_t != 0.5);
  bool strict = false;
  for (int a = 2; a < 12; ++a) strict = strict || r.summaries[a].max_second_difference > 1e-4;
  CHECK(strict);
  CHECK(suite_passed(r.reports));
  for (const auto& c : r.curves) CHECK(c.grid.size() == 99);
}

TEST_CASE("mixed-state suite") {
  for (const NamedEnsemble& e : ensemble_catalogue())
    for (MonotoneKind k : {MonotoneKind::von_neumann(), MonotoneKind::mixedness(), MonotoneKind::g_concurrence()})
      for (const TheoremReport& r : check_mixed_state_suite(e.label, e.ensemble, k)) CHECK(r.passed);
  CHECK(check_mixed_input_concavity({"thermal:0.5", make_thermal(0.5)}).passed);
  // Direct mixed-input curves need not be symmetric.
  const SweepCurve th = sweep({"thermal:0.5", make_thermal(0.5)}, MonotoneKind::von_neumann());
  CHECK_FALSE(check_symmetry(th).passed);
}

TEST_CASE("single-member ensemble reduces to the pure-state curve") {
  const Ensemble e = Ensemble::make({1.0}, {make_fock(4, 5)});
  const SweepCurve a = sweep_ensemble("e", e, MonotoneKind::von_neumann());
  const SweepCurve b = sweep({"fock:4", make_fock(4, 5)}, MonotoneKind::von_neumann());
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("every detector fixture is rejected") {
  const std::vector<TheoremReport> fixtures = run_detector_fixtures();
  CHECK(fixtures.size() >= 6);
  for (const TheoremReport& r : fixtures) {
    CHECK_FALSE(r.passed);
    CHECK(r.worst_margin < 0.0);
    CHECK(r.meets_expectation());
  }
}

TEST_CASE("grid refinement leaves second-difference margins stable") {
  const GridSpec fine{0.01, 0.99, 201};
  for (const LabeledState& s : {LabeledState{"fock:3", make_fock(3, 4)}, LabeledState{"random:6,101", make_random_pure(6, 101)}}) {
    for (MonotoneKind k : {MonotoneKind::von_neumann(), MonotoneKind::purity()}) {
      const SweepCurve coarse = sweep(s, k);
      const SweepCurve refined = sweep(s, k, fine);
      const bool concave = k == MonotoneKind::von_neumann();
      const double a = concave ? check_concavity(coarse).worst_margin : check_convexity(coarse).worst_margin;
      const double b = concave ? check_concavity(refined).worst_margin : check_convexity(refined).worst_margin;
      CHECK(std::abs(a - b) < 0.1 * std::abs(a));
    }
  }
}

TEST_CASE("quick suite meets every expectation; corruption is caught") {
  SuiteOptions o;
  o.kind = SuiteKind::quick;
  CHECK(suite_passed(run_suite(o)));
  o.inject_corruption = true;
  CHECK_FALSE(suite_passed(run_suite(o)));
}
