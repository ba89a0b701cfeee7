#include "compactwave/tridiagonal.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "compactwave/errors.hpp"

namespace compactwave {

void SchemeCoefficients::validate() const {
  if (!(std::abs(a0) > 2.0 * std::abs(a1))) {
    throw ConfigError("scheme coefficients: left-hand matrix must be strictly diagonally dominant");
  }
}

TriDiagToeplitz matrix_a(const SchemeCoefficients& c, int n) { return {n, c.a0, c.a1}; }
TriDiagToeplitz matrix_b(const SchemeCoefficients& c, int n) { return {n, c.b0, c.b1}; }

namespace {

void check_length(const TriDiagToeplitz& m, std::size_t length) {
  if (m.order < 1) throw ConfigError("tridiagonal: order must be >= 1");
  if (length != static_cast<std::size_t>(m.order)) {
    throw ConfigError("tridiagonal: vector length does not match matrix order");
  }
}

}  // namespace

ToeplitzSolver::ToeplitzSolver(const TriDiagToeplitz& m)
    : offdiag_(m.offdiag), upper_(m.order), inv_pivot_(m.order) {
  if (m.order < 1) throw ConfigError("tridiagonal: order must be >= 1");
  double prev_upper = 0.0;
  for (int i = 0; i < m.order; ++i) {
    const double pivot = m.diag - m.offdiag * prev_upper;
    // Strict diagonal dominance keeps every pivot away from zero.
    assert(pivot != 0.0);
    if (pivot == 0.0) throw ConfigError("tridiagonal: zero pivot");
    inv_pivot_[i] = 1.0 / pivot;
    upper_[i] = m.offdiag * inv_pivot_[i];
    prev_upper = upper_[i];
  }
}

void ToeplitzSolver::solve(std::span<double> x) const {
  const std::size_t n = inv_pivot_.size();
  if (x.size() != n) throw ConfigError("tridiagonal: vector length does not match matrix order");
  x[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) x[i] = (x[i] - offdiag_ * x[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper_[i] * x[i + 1];
}

void ToeplitzSolver::solve_strided(double* x, std::size_t width, std::size_t stride) const {
  const std::size_t n = inv_pivot_.size();
  {
    const double p = inv_pivot_[0];
    for (std::size_t c = 0; c < width; ++c) x[c] *= p;
  }
  for (std::size_t r = 1; r < n; ++r) {
    double* row = x + r * stride;
    const double* prev = row - stride;
    const double p = inv_pivot_[r];
    for (std::size_t c = 0; c < width; ++c) row[c] = (row[c] - offdiag_ * prev[c]) * p;
  }
  for (std::size_t r = n - 1; r-- > 0;) {
    double* row = x + r * stride;
    const double* next = row + stride;
    const double u = upper_[r];
    for (std::size_t c = 0; c < width; ++c) row[c] -= u * next[c];
  }
}

std::vector<double> thomas_solve(const TriDiagToeplitz& m, std::span<const double> rhs) {
  check_length(m, rhs.size());
  std::vector<double> x(rhs.begin(), rhs.end());
  ToeplitzSolver(m).solve(x);
  return x;
}

std::vector<double> apply_toeplitz(const TriDiagToeplitz& m, std::span<const double> v) {
  check_length(m, v.size());
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = m.diag * v[i];
    if (i > 0) acc += m.offdiag * v[i - 1];
    if (i + 1 < n) acc += m.offdiag * v[i + 1];
    out[i] = acc;
  }
  return out;
}

std::vector<double> toeplitz_spectrum(const TriDiagToeplitz& m) {
  if (m.order < 1) throw ConfigError("tridiagonal: order must be >= 1");
  std::vector<double> eig(m.order);
  for (int l = 1; l <= m.order; ++l) {
    eig[l - 1] = m.diag + 2.0 * m.offdiag * std::cos(std::numbers::pi * l / (m.order + 1));
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace compactwave
