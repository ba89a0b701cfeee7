#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "compactwave/errors.hpp"
#include "compactwave/tridiagonal.hpp"

using namespace compactwave;

namespace {

Eigen::MatrixXd dense(const TriDiagToeplitz& m) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.order, m.order);
  for (int i = 0; i < m.order; ++i) {
    d(i, i) = m.diag;
    if (i > 0) d(i, i - 1) = d(i - 1, i) = m.offdiag;
  }
  return d;
}

void check_vector(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(tol));
}

}  // namespace

TEST_CASE("thomas_solve examples") {
  check_vector(thomas_solve({3, 1.0, 0.0}, std::vector<double>{3, -1, 2}), {3, -1, 2}, 1e-15);
  check_vector(thomas_solve({2, 1.0, 0.1}, std::vector<double>{1.1, 1.1}), {1, 1}, 1e-14);
  check_vector(thomas_solve({3, 1.0, 0.1}, std::vector<double>{1.2, 2.4, 3.2}), {1, 2, 3}, 1e-14);
  CHECK_THROWS_AS(thomas_solve({3, 1.0, 0.1}, std::vector<double>{1, 2}), ConfigError);
}

TEST_CASE("apply_toeplitz examples") {
  check_vector(apply_toeplitz({3, -2.4, 1.2}, std::vector<double>{1, 1, 1}), {-1.2, 0, -1.2}, 1e-14);
  check_vector(apply_toeplitz({3, 1.0, 0.1}, std::vector<double>{1, 2, 3}), {1.2, 2.4, 3.2}, 1e-14);
  for (double v : apply_toeplitz({4, 5.0, -3.0}, std::vector<double>(4, 0.0))) CHECK(v == 0.0);
}

TEST_CASE("solve inverts apply on random vectors") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n = 1; n <= 64; ++n) {
    const TriDiagToeplitz a = matrix_a(SchemeCoefficients{}, n);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    const auto back = thomas_solve(a, apply_toeplitz(a, v));
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      err = std::max(err, std::abs(back[i] - v[i]));
      scale = std::max(scale, std::abs(v[i]));
    }
    CHECK(err <= 1e-12 * scale);
  }
}

TEST_CASE("strided solves match column-by-column solves") {
  const TriDiagToeplitz a = matrix_a(SchemeCoefficients{}, 6);
  const ToeplitzSolver solver(a);
  const std::size_t width = 3, stride = 5;
  std::vector<double> block(stride * 6, 99.0);
  for (int r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < width; ++c) block[r * stride + c] = r + 10.0 * c;
  solver.solve_strided(block.data(), width, stride);
  for (std::size_t c = 0; c < width; ++c) {
    std::vector<double> column(6);
    for (int r = 0; r < 6; ++r) column[r] = r + 10.0 * c;
    const auto want = thomas_solve(a, column);
    for (int r = 0; r < 6; ++r) CHECK(block[r * stride + c] == doctest::Approx(want[r]).epsilon(1e-14));
  }
  for (int r = 0; r < 6; ++r)
    for (std::size_t c = width; c < stride; ++c) CHECK(block[r * stride + c] == 99.0);
}

TEST_CASE("closed-form spectra match a dense eigensolver") {
  const SchemeCoefficients c;
  for (int n : {1, 2, 4, 8, 16}) {
    for (const TriDiagToeplitz& m : {matrix_a(c, n), matrix_b(c, n)}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(m));
      const auto closed = toeplitz_spectrum(m);
      for (int l = 0; l < n; ++l) CHECK(std::abs(closed[l] - es.eigenvalues()(l)) <= 1e-12);
    }
  }
  CHECK(toeplitz_spectrum(matrix_a(c, 1)) == std::vector<double>{1.0});
  CHECK(toeplitz_spectrum(matrix_b(c, 1))[0] == doctest::Approx(-2.4));
}

TEST_CASE("coefficient validation and pivots") {
  SchemeCoefficients bad;
  bad.a1 = 0.6;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_NOTHROW(SchemeCoefficients{}.validate());
  CHECK_THROWS(ToeplitzSolver(TriDiagToeplitz{2, 0.0, 1.0}));
}
