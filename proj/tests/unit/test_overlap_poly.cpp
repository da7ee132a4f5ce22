#include <doctest.h>

#include <cmath>

#include "bsent/overlap_poly.hpp"
#include "../support/oracles.hpp"

using namespace bsent;

TEST_CASE("purity polynomial of fock 1") {
  const OverlapPolynomial p = purity_polynomial(make_fock(1, 2));
  REQUIRE(p.m_max() == 2);
  CHECK(p.coefficient(0) == 0.5);
  CHECK(p.coefficient(1) == 0.0);
  CHECK(p.coefficient(2) == 0.5);
  CHECK(purity_polynomial(make_fock(0, 1)).coefficient(0) == doctest::Approx(1.0));
}

TEST_CASE("coefficients match a Vandermonde fit of the direct overlap") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const int d = 2 + static_cast<int>(s % 6);
    const DensityMatrix x = make_random_mixed(d, 1 + static_cast<int>(s % d), 700 + s);
    const DensityMatrix y = make_random_mixed(d, d, 800 + s);
    const std::vector<double> fit = oracle::vandermonde_coefficients(x, y);
    const OverlapPolynomial poly = overlap_coefficients(x, y);
    REQUIRE(fit.size() == poly.coefficients().size());
    for (std::size_t m = 0; m < fit.size(); ++m) CHECK(std::abs(fit[m] - poly.coefficient(static_cast<int>(m))) < 1e-8);
  }
}

TEST_CASE("coefficients are nonnegative and sum to the product of traces") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const int d = 1 + static_cast<int>(s % 10);
    const DensityMatrix x = make_random_mixed(d, 1 + static_cast<int>(s % d), 900 + s);
    const DensityMatrix y = make_random_mixed(d, 1 + static_cast<int>((s / 2) % d), 1900 + s);
    const OverlapPolynomial poly = overlap_coefficients(x, y);
    double total = 0.0;
    for (double c : poly.coefficients()) {
      CHECK(c >= -1e-12);
      total += c;
    }
    // lambda = 1 (T = 0) sends both states to vacuum.
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.0, 0.13, 0.5, 0.81, 1.0})
      CHECK(std::abs(overlap_reconstruct(poly, Transmission(t)) - overlap_direct(x, y, Transmission(t))) < 1e-10);
  }
}

TEST_CASE("pure self-overlaps are even in lambda") {
  for (const PureState& psi : {make_fock(5, 6), make_random_pure(9, 3), make_coherent(Complex(0.6))}) {
    const OverlapPolynomial p = purity_polynomial(psi);
    for (int m = 1; m <= p.m_max(); m += 2) CHECK(std::abs(p.coefficient(m)) < 1e-12);
    // P''(T) >= 0 follows from even, nonnegative coefficients.
    for (double t : {0.05, 0.5, 0.9}) CHECK(p.second_derivative(Transmission(t)) >= -1e-12);
  }
}

TEST_CASE("difference-mode amplitudes are orthonormal") {
  for (int n : {0, 1, 4, 9, 20}) {
    for (int m1 = 0; m1 <= n; ++m1)
      for (int m2 = 0; m2 <= n; ++m2) {
        double dot = 0.0;
        for (int p = 0; p <= n; ++p) dot += difference_mode_amplitude(n, m1, p) * difference_mode_amplitude(n, m2, p);
        CHECK(dot == doctest::Approx(m1 == m2 ? 1.0 : 0.0).epsilon(1e-12));
      }
  }
  CHECK_THROWS_AS(difference_mode_amplitude(3, 4, 0), Error);
}

TEST_CASE("difference-mode operator identity") {
  for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK(check_difference_mode_identity(Transmission(t), 12) < 1e-12);
}

TEST_CASE("second derivative matches finite differences") {
  const OverlapPolynomial p = purity_polynomial(make_random_pure(6, 2));
  auto f = [&](double t) { return p.evaluate(Transmission(t)); };
  for (double t : {0.2, 0.5, 0.7}) {
    const double h = 2e-4;
    const double fd = (f(t - h) - 2 * f(t) + f(t + h)) / (h * h);
    CHECK(p.second_derivative(Transmission(t)) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("overlap rejects mismatched or oversize cutoffs") {
  CHECK_THROWS_AS(overlap_coefficients(make_fock(1, 2).projector(), make_fock(1, 3).projector()), Error);
  CHECK_THROWS_AS(overlap_coefficients(make_fock(1, 65).projector(), make_fock(1, 65).projector()), Error);
}
