#pragma once

#include <array>
#include <span>
#include <vector>

#include "compactwave/grid.hpp"
#include "compactwave/problem.hpp"
#include "compactwave/tridiagonal.hpp"

namespace compactwave {

/// Dirichlet values d^d f / dt^d at the interior nodes of every face.
FacePlanes face_values(const FaceData& faces, const Grid& grid, double t, int d = 0);

/// Second normal derivative of d^d u / dt^d on every face, obtained from the
/// wave equation itself: on x = x_min,
///   (u_xx) = (d_t^{d+2} f0 - d_t^d s) / nu^2 - d_t^d (f0_yy + f0_zz),
/// and likewise on the other five faces. Throws ConfigError if the face data
/// or source lack the required time derivatives.
FacePlanes boundary_closure(const FaceData& faces, const VelocityModel& velocity,
                            const SourceTerm& source, double t, int d = 0);

/// Compact second derivative of one grid line with Dirichlet values and
/// second-derivative closures at both ends. Solves
///   A v'' = (B v + b1 q_b) / h^2 - a1 q_a.
std::vector<double> second_derivative_line(std::span<const double> line, double left_value,
                                           double right_value, double left_closure,
                                           double right_closure, double h,
                                           const SchemeCoefficients& coeffs = {});

/// Matrix-free compact Laplacian on a fixed grid. Holds the per-axis Thomas
/// factorizations and a reusable scratch field, so one instance must not be
/// used from several threads at once.
class CompactLaplacian {
 public:
  explicit CompactLaplacian(const Grid& grid, const SchemeCoefficients& coeffs = {});

  const Grid& grid() const { return grid_; }
  const SchemeCoefficients& coefficients() const { return coeffs_; }

  /// out = d^2 u / d axis^2 (overwrites out).
  void second_derivative(Axis axis, const Field3D& u, const FacePlanes& dirichlet,
                         const FacePlanes& closure, Field3D& out) const;

  /// out = u_xx + u_yy + u_zz.
  void apply(const Field3D& u, const FacePlanes& dirichlet, const FacePlanes& closure,
             Field3D& out) const;

  /// Laplacian with zero Dirichlet data and zero closures.
  void apply_homogeneous(const Field3D& u, Field3D& out) const;

 private:
  enum class Mode { overwrite, accumulate };
  void sweep(Axis axis, const Field3D& u, const FacePlanes* dirichlet, const FacePlanes* closure,
             Field3D& out, Mode mode) const;

  Grid grid_;
  SchemeCoefficients coeffs_;
  std::array<ToeplitzSolver, 3> solvers_;
  mutable std::vector<double> scratch_;
};

/// Convenience wrapper around CompactLaplacian::apply.
Field3D laplacian(const Field3D& u, const FacePlanes& dirichlet, const FacePlanes& closure,
                  const SchemeCoefficients& coeffs = {});

/// Laplacian of the solution at time t, with Dirichlet data and closures taken
/// from the problem's face data.
Field3D laplacian(const Field3D& u, const FaceData& faces, const VelocityModel& velocity,
                  const SourceTerm& source, double t, const SchemeCoefficients& coeffs = {});

}  // namespace compactwave
