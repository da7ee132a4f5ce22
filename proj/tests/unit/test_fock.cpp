#include <doctest.h>

#include <cmath>
#include <complex>

#include "bsent/fock.hpp"

using namespace bsent;

TEST_CASE("fock states are unit vectors on their level") {
  const PureState s = make_fock(3, 5);
  CHECK(s.cutoff() == 5);
  CHECK(s.max_occupied() == 3);
  CHECK(s.finite_support());
  CHECK(std::abs(s.amplitude(3) - Complex(1.0)) == 0.0);
  CHECK(mean_photon_number(s) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(make_fock(5, 5), Error);
  CHECK_THROWS_AS(make_fock(-1, 5), Error);
}

TEST_CASE("coherent amplitudes match the Poisson closed form") {
  const Complex alpha(0.7, -0.3);
  const PureState s = make_coherent(alpha);
  CHECK_FALSE(s.finite_support());
  CHECK(s.truncation().tail_weight < kAutoTailBound);
  double fact = 1.0;
  for (int n = 0; n < s.cutoff(); ++n) {
    if (n > 0) fact *= n;
    const Complex expected = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(fact);
    CHECK(std::abs(s.amplitude(n) - expected) < 1e-12);
  }
  CHECK(mean_photon_number(s) == doctest::Approx(std::norm(alpha)).epsilon(1e-12));
}

TEST_CASE("explicit coherent cutoffs enforce the tail bound") {
  CHECK_NOTHROW(make_coherent(Complex(1.0), 21));
  try {
    make_coherent(Complex(1.0), 5);
    FAIL("expected a truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::truncation);
  }
  // Vacuum is exactly representable at any cutoff.
  CHECK(make_coherent(Complex(0.0), 1).finite_support());
}

TEST_CASE("poisson tail agrees with one minus the partial sum") {
  for (double mean : {0.25, 1.0, 4.0}) {
    double partial = 0.0;
    double term = std::exp(-mean);
    for (int n = 0; n < 6; ++n) {
      partial += term;
      term *= mean / (n + 1);
    }
    CHECK(poisson_tail(mean, 6) == doctest::Approx(1.0 - partial).epsilon(1e-10));
  }
  CHECK(poisson_tail(0.0, 1) == 0.0);
}

TEST_CASE("superpositions sum duplicates and normalize") {
  const SuperpositionTerm terms[] = {{0.3, 1}, {0.3, 1}, {0.8, 2}};
  const PureState s = make_superposition(terms, 4);
  CHECK(std::abs(s.amplitude(1) - Complex(0.6)) < 1e-15);
  CHECK(std::abs(s.amplitude(2) - Complex(0.8)) < 1e-15);
  CHECK(s.max_occupied() == 2);
  const SuperpositionTerm zero[] = {{1.0, 0}, {-1.0, 0}};
  try {
    make_superposition(zero, 2);
    FAIL("expected degenerate input");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_input);
  }
}

TEST_CASE("random pure states are reproducible per seed") {
  const PureState a = make_random_pure(8, 42);
  const PureState b = make_random_pure(8, 42);
  const PureState c = make_random_pure(8, 43);
  CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
  CHECK((a.amplitudes() - c.amplitudes()).norm() > 0.1);
  CHECK(a.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("thermal populations are geometric") {
  const DensityMatrix rho = make_thermal(0.5);
  const double q = 0.5 / 1.5;
  const RealVector pop = rho.populations();
  for (int n = 0; n < 6; ++n) CHECK(pop(n) == doctest::Approx((1.0 - q) * std::pow(q, n)).epsilon(1e-12));
  CHECK(mean_photon_number(rho) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(make_thermal(0.5, 5), Error);
  CHECK_THROWS_AS(make_thermal(-0.1), Error);
}

TEST_CASE("density matrix validation") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK_NOTHROW(DensityMatrix::from_matrix(m));
  Matrix bad_trace = m * 1.1;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad_trace), Error);
  Matrix not_hermitian = m;
  not_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(not_hermitian), Error);
  Matrix negative = m;
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(negative), Error);
}

TEST_CASE("random mixed states have the requested rank") {
  const DensityMatrix rho = make_random_mixed(6, 2, 7);
  const RealVector ev = rho.eigenvalues();
  int positive = 0;
  for (int i = 0; i < ev.size(); ++i) positive += ev(i) > 1e-12;
  CHECK(positive == 2);
  CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ensembles need positive normalized weights on a common cutoff") {
  CHECK_NOTHROW(Ensemble::make({0.5, 0.5}, {make_fock(1, 3), make_fock(2, 3)}));
  CHECK_THROWS_AS(Ensemble::make({0.5, 0.6}, {make_fock(1, 3), make_fock(2, 3)}), Error);
  CHECK_THROWS_AS(Ensemble::make({0.5, 0.5}, {make_fock(1, 2), make_fock(2, 3)}), Error);
  const Ensemble e = Ensemble::make({0.25, 0.75}, {make_fock(0, 2), make_fock(1, 2)});
  CHECK(e.mixture().matrix()(1, 1).real() == doctest::Approx(0.75));
}

TEST_CASE("padding embeds without changing amplitudes") {
  const PureState s = make_random_pure(4, 1).padded(7);
  CHECK(s.cutoff() == 7);
  CHECK(std::abs(s.amplitude(6)) == 0.0);
  CHECK_THROWS_AS(make_random_pure(4, 1).padded(3), Error);
}
