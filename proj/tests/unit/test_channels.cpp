#include <doctest.h>

#include <cmath>

#include "bsent/channels.hpp"
#include "bsent/linalg.hpp"
#include "../support/oracles.hpp"

using namespace bsent;

namespace {

const double kTs[] = {0.0, 0.01, 0.2, 0.5, 0.73, 0.99, 1.0};

} // namespace

TEST_CASE("transmission domain") {
  CHECK_NOTHROW(Transmission(0.0));
  CHECK_NOTHROW(Transmission(1.0));
  CHECK_THROWS_AS(Transmission(-1e-9), Error);
  CHECK_THROWS_AS(Transmission(1.0 + 1e-9), Error);
  CHECK_THROWS_AS(Transmission(std::nan("")), Error);
  CHECK(Transmission(0.25).lambda() == 0.5);
}

TEST_CASE("beam-splitter amplitudes match an explicit two-mode unitary") {
  for (const PureState& psi : {make_fock(4, 5), make_random_pure(7, 11), make_coherent(Complex(0.4, 0.2))}) {
    for (double t : kTs) {
      const Matrix m = beam_splitter_output(psi, Transmission(t)).entries();
      const Matrix u = oracle::unitary_output(psi, t);
      CHECK(linalg::max_abs_diff(m.cwiseAbs().cast<Complex>(), u.cwiseAbs().cast<Complex>()) < 1e-12);
      // Reduced states agree as operators up to the phase convention of the unitary,
      // which is diagonal in the number basis; spectra must agree exactly.
      const RealVector sa = schmidt_values(beam_splitter_output(psi, Transmission(t)));
      Eigen::JacobiSVD<Matrix> svd(u);
      CHECK((sa - svd.singularValues()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("fock 1 gives the two-term Schmidt form") {
  const RealVector s = schmidt_values(beam_splitter_output(make_fock(1, 2), Transmission(0.3)));
  CHECK(s(0) == doctest::Approx(std::sqrt(0.7)).epsilon(1e-14));
  CHECK(s(1) == doctest::Approx(std::sqrt(0.3)).epsilon(1e-14));
}

TEST_CASE("reduced state of the output equals the loss channel") {
  const PureState psi = make_random_pure(6, 5);
  for (double t : kTs) {
    const DensityMatrix a = lossy_state(psi, Transmission(t));
    const DensityMatrix b = loss_apply(psi.projector(), Transmission(t));
    CHECK(linalg::max_abs_diff(a.matrix(), b.matrix()) < 1e-14);
  }
}

TEST_CASE("loss channel agrees with an independent Kraus sum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DensityMatrix rho = make_random_mixed(7, 3, seed);
    for (double t : kTs) {
      const Matrix expected = oracle::kraus_sum(rho.matrix(), t);
      CHECK(linalg::max_abs_diff(loss_apply(rho, Transmission(t)).matrix(), expected) < 1e-13);
      Matrix via_library = Matrix::Zero(7, 7);
      for (int n = 0; n < 7; ++n) {
        const Matrix k = kraus_operator(n, Transmission(t), 7);
        via_library += k * rho.matrix() * k.adjoint();
      }
      CHECK(linalg::max_abs_diff(via_library, expected) < 1e-13);
    }
  }
}

TEST_CASE("Kraus operators are complete on the truncated space") {
  for (double t : kTs) {
    Matrix sum = Matrix::Zero(9, 9);
    for (int n = 0; n < 9; ++n) {
      const Matrix k = kraus_operator(n, Transmission(t), 9);
      sum += k.adjoint() * k;
    }
    CHECK(linalg::max_abs_diff(sum, Matrix::Identity(9, 9)) < 1e-13);
  }
  CHECK_THROWS_AS(kraus_operator(9, Transmission(0.5), 9), Error);
}

TEST_CASE("loss channel invariants") {
  const DensityMatrix rho = make_random_mixed(8, 8, 3);
  CHECK(linalg::max_abs_diff(loss_apply(rho, Transmission(1.0)).matrix(), rho.matrix()) < 1e-15);
  const Matrix vac = loss_apply(rho, Transmission(0.0)).matrix();
  CHECK(std::abs(vac(0, 0) - Complex(1.0)) < 1e-13);
  // Mean photon number scales by T.
  CHECK(mean_photon_number(loss_apply(rho, Transmission(0.3))) ==
        doctest::Approx(0.3 * mean_photon_number(rho)).epsilon(1e-12));
  for (double t1 : {0.1, 0.6, 0.9})
    for (double t2 : {0.2, 0.5, 0.95})
      CHECK(check_multiplicativity(rho, Transmission(t1), Transmission(t2)) < 1e-12);
}

TEST_CASE("Kraus commutation holds on the block unaffected by truncation") {
  for (double t : {0.05, 0.5, 0.8})
    for (int n = 0; n < 10; ++n) CHECK(check_kraus_commutation(Transmission(t), n, 12) < 1e-12);
  CHECK_THROWS_AS(check_kraus_commutation(Transmission(0.5), 11, 12), Error);
}

TEST_CASE("mirrored splitter transposes the Schmidt matrix") {
  for (const PureState& psi : {make_fock(6, 7), make_random_pure(10, 2)})
    for (double t : kTs) CHECK(check_schmidt_transpose(psi, Transmission(t)) < 1e-12);
}

TEST_CASE("sigma and tau companions") {
  const DensityMatrix rho = lossy_state(make_random_pure(6, 9), Transmission(0.4));
  const DensityMatrix sigma = sigma_state(rho);
  const DensityMatrix tau = tau_state(rho);
  CHECK(sigma.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-13));
  // a rho a^dag and sqrt(rho) n sqrt(rho) are isospectral up to normalization.
  CHECK((sigma.eigenvalues() - tau.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  try {
    sigma_state(make_fock(0, 3).projector());
    FAIL("expected undefined state");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::undefined_state);
  }
}

TEST_CASE("support bound reflects finite rank inputs") {
  CHECK(beam_splitter_output(make_fock(3, 6), Transmission(0.5)).support_bound() == 3);
  CHECK_FALSE(beam_splitter_output(make_coherent(Complex(0.5)), Transmission(0.5)).support_bound().has_value());
}

TEST_CASE("graded singular values match exact values of a graded diagonal") {
  Matrix m = Matrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) m(i, 4 - i) = std::pow(1e-6, i);
  const RealVector s = linalg::graded_singular_values(m);
  for (int i = 0; i < 5; ++i) CHECK(s(i) == doctest::Approx(std::pow(1e-6, i)).epsilon(1e-13));
}
