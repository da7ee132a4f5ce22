#include "bsent/overlap_poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bsent/linalg.hpp"

namespace bsent {

namespace {

constexpr int kMaxTotal = 2 * (kMaxOverlapCutoff - 1);

__extension__ using Int128 = __int128;

// Pascal's triangle up to kMaxTotal; C(126, 63) ~ 6.1e36 fits in a signed 128-bit integer.
struct BinomialTable {
  std::array<std::array<Int128, kMaxTotal + 1>, kMaxTotal + 1> c{};

  BinomialTable() {
    for (int n = 0; n <= kMaxTotal; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

// sum_j C(k, p-j) C(m, j) (-1)^(m-j); bounded in magnitude by C(n, p).
Int128 kravchuk_sum(int k, int m, int p) {
  const auto& c = binomials().c;
  Int128 total = 0;
  const int j_lo = std::max(0, p - k);
  const int j_hi = std::min(m, p);
  for (int j = j_lo; j <= j_hi; ++j) {
    const Int128 term = c[k][p - j] * c[m][j];
    total += ((m - j) % 2 == 0) ? term : -term;
  }
  return total;
}

} // namespace

OverlapPolynomial::OverlapPolynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty())
    throw Error(ErrorCode::invalid_state, "OverlapPolynomial: no coefficients");
}

double OverlapPolynomial::evaluate(Transmission t) const {
  const double lambda = t.lambda();
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

double OverlapPolynomial::second_derivative(Transmission t) const {
  const double lambda = t.lambda();
  double acc = 0.0;
  for (int m = m_max(); m >= 2; --m) acc = acc * lambda + m * (m - 1.0) * coefficients_[m];
  // d lambda / dT = -2
  return 4.0 * acc;
}

namespace {

// Common factor C(n, n-m) / 2^n of the squared amplitudes in the (n, m) block; exact for
// binomials below 2^53.
double block_weight(int n, int m) {
  return std::ldexp(static_cast<double>(binomials().c[n][n - m]), -n);
}

} // namespace

double difference_mode_amplitude(int n, int m, int p) {
  if (n < 0 || n > kMaxTotal || m < 0 || m > n || p < 0 || p > n)
    throw Error(ErrorCode::cutoff, "difference_mode_amplitude: indices outside the supported range");
  const Int128 integer_part = kravchuk_sum(n - m, m, p);
  if (integer_part == 0) return 0.0;
  // <p, n-p | Pi_m> = K(p) sqrt(C(n, n-m) / (2^n C(n, p)))
  return static_cast<double>(integer_part) *
         std::sqrt(block_weight(n, m) / static_cast<double>(binomials().c[n][p]));
}

OverlapPolynomial overlap_coefficients(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.cutoff() != sigma.cutoff())
    throw Error(ErrorCode::cutoff, "overlap_coefficients: cutoffs differ (" +
                                       std::to_string(rho.cutoff()) + " vs " +
                                       std::to_string(sigma.cutoff()) + ")");
  const int d = rho.cutoff();
  if (d > kMaxOverlapCutoff)
    throw Error(ErrorCode::cutoff, "overlap_coefficients: cutoff " + std::to_string(d) +
                                       " exceeds the supported maximum " +
                                       std::to_string(kMaxOverlapCutoff));
  const int m_max = 2 * (d - 1);
  std::vector<double> p(static_cast<std::size_t>(m_max) + 1, 0.0);
  const Matrix& r = rho.matrix();
  const Matrix& s = sigma.matrix();
  const auto& c = binomials().c;

  // Pi_m conserves the total photon number n, so only the diagonal blocks of
  // rho (x) sigma in n contribute: A_n(p, p') = rho(p, p') sigma(n-p, n-p').
  // The amplitudes factor as sqrt(block_weight) K(p) / sqrt(C(n, p)); the
  // diagonal terms divide by C(n, p) directly so integer cases stay exact.
  for (int n = 0; n <= m_max; ++n) {
    const int p_lo = std::max(0, n - (d - 1));
    const int p_hi = std::min(n, d - 1);
    const int size = p_hi - p_lo + 1;
    Matrix block(size, size);
    Eigen::VectorXd binom(size);
    for (int i = 0; i < size; ++i) {
      binom(i) = static_cast<double>(c[n][p_lo + i]);
      for (int j = 0; j < size; ++j) {
        const int pi = p_lo + i;
        const int pj = p_lo + j;
        block(i, j) = r(pi, pj) * s(n - pi, n - pj);
      }
    }
    Eigen::VectorXd k(size);
    for (int m = 0; m <= n; ++m) {
      for (int i = 0; i < size; ++i) k(i) = static_cast<double>(kravchuk_sum(n - m, m, p_lo + i));
      double q = 0.0;
      for (int i = 0; i < size; ++i) {
        if (k(i) == 0.0) continue;
        q += k(i) * k(i) * block(i, i).real() / binom(i);
        for (int j = i + 1; j < size; ++j)
          if (k(j) != 0.0) q += 2.0 * k(i) * k(j) * block(i, j).real() / std::sqrt(binom(i) * binom(j));
      }
      p[static_cast<std::size_t>(m)] += block_weight(n, m) * q;
    }
  }
  return OverlapPolynomial(std::move(p));
}

double overlap_direct(const DensityMatrix& rho, const DensityMatrix& sigma, Transmission t) {
  if (rho.cutoff() != sigma.cutoff())
    throw Error(ErrorCode::cutoff, "overlap_direct: cutoffs differ");
  const Matrix a = loss_apply(rho, t).matrix();
  const Matrix b = loss_apply(sigma, t).matrix();
  return a.cwiseProduct(b.transpose()).sum().real();
}

double overlap_reconstruct(const OverlapPolynomial& poly, Transmission t) { return poly.evaluate(t); }

OverlapPolynomial purity_polynomial(const PureState& psi) {
  const DensityMatrix rho = psi.projector();
  OverlapPolynomial poly = overlap_coefficients(rho, rho);
  for (int m = 1; m <= poly.m_max(); m += 2)
    if (std::abs(poly.coefficient(m)) > 1e-12)
      throw Error(ErrorCode::invalid_state, "purity_polynomial: odd coefficient p_" +
                                                std::to_string(m) + " = " +
                                                std::to_string(poly.coefficient(m)) +
                                                " does not vanish");
  return poly;
}

double check_difference_mode_identity(Transmission t, int cutoff) {
  const Matrix a = annihilation_matrix(cutoff);
  const double tv = t.value();
  Matrix parity = Matrix::Zero(cutoff, cutoff);
  Matrix expected = Matrix::Zero(cutoff, cutoff);
  for (int j = 0; j < cutoff; ++j) {
    parity(j, j) = std::pow(-tv, j);
    expected(j, j) = std::pow(1.0 - 2.0 * tv, j);
  }
  Matrix lhs = Matrix::Zero(cutoff, cutoff);
  Matrix a_pow = Matrix::Identity(cutoff, cutoff);
  double factorial = 1.0;
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) {
      a_pow = a_pow * a;
      factorial *= n;
    }
    lhs += std::pow(1.0 - tv, n) / factorial * (a_pow.adjoint() * parity * a_pow);
  }
  return linalg::max_abs_diff(lhs, expected);
}

} // namespace bsent
