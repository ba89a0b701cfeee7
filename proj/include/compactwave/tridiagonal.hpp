#pragma once

#include <span>
#include <vector>

namespace compactwave {

/// Coefficients of the three-point compact second-derivative relation
///   a1 v''_{i-1} + a0 v''_i + a1 v''_{i+1} = (b1 v_{i-1} + b0 v_i + b1 v_{i+1}) / h^2.
struct SchemeCoefficients {
  double a0 = 1.0;
  double a1 = 1.0 / 10.0;
  double b0 = -12.0 / 5.0;
  double b1 = 6.0 / 5.0;

  /// Throws ConfigError unless |a0| > 2|a1|.
  void validate() const;
};

/// Symmetric tridiagonal Toeplitz matrix of order N.
struct TriDiagToeplitz {
  int order = 1;
  double diag = 1.0;
  double offdiag = 0.0;
};

TriDiagToeplitz matrix_a(const SchemeCoefficients& c, int n);
TriDiagToeplitz matrix_b(const SchemeCoefficients& c, int n);

std::vector<double> thomas_solve(const TriDiagToeplitz& m, std::span<const double> rhs);
std::vector<double> apply_toeplitz(const TriDiagToeplitz& m, std::span<const double> v);

/// Closed-form eigenvalues diag + 2 offdiag cos(pi l / (N+1)), sorted ascending.
std::vector<double> toeplitz_spectrum(const TriDiagToeplitz& m);

/// Precomputed Thomas elimination for a fixed Toeplitz matrix. The forward
/// sweep coefficients depend only on the matrix, so line solves reuse them.
///
/// `solve_strided` treats `x` as `n` rows of `width` contiguous values, row r
/// at offset r*stride; every column is an independent system solved in place.
/// This is how the y and z sweeps run over whole planes at once.
class ToeplitzSolver {
 public:
  explicit ToeplitzSolver(const TriDiagToeplitz& m);

  int order() const { return static_cast<int>(inv_pivot_.size()); }

  void solve(std::span<double> x) const;
  void solve_strided(double* x, std::size_t width, std::size_t stride) const;

 private:
  double offdiag_;
  std::vector<double> upper_;      // c'_i
  std::vector<double> inv_pivot_;  // 1 / (diag - offdiag c'_{i-1})
};

}  // namespace compactwave
