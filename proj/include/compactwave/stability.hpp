#pragma once

#include <string>

#include "compactwave/grid.hpp"
#include "compactwave/problem.hpp"

namespace compactwave {

/// Largest Courant number max(nu tau / h) for which the leapfrog scheme with
/// the compact Laplacian is energy-stable: sqrt(2)/3.
double cfl_limit();

/// Upper bound of the spectrum of -(A^{-1} B) is 6; the lower bound is
///   r(N) = (12/5 - 12/5 cos(pi/(N+1))) / (1 + 1/5 cos(pi/(N+1))).
double r_of_n(int n);

struct StabilityReport {
  int n = 0;            // per-axis count used for r(N) (smallest axis)
  double r_n = 0.0;
  double m = 0.0;       // 3 r(N), lower coercivity bound of -L
  double big_m = 18.0;  // upper coercivity bound of -L
  double cfl_limit = 0.0;
  double courant = 0.0;
  double margin = 0.0;  // cfl_limit - courant
  bool pass = false;
};

/// Courant number uses the smallest spacing when the grid is anisotropic.
StabilityReport cfl_check(const VelocityModel& velocity, double tau);
StabilityReport cfl_check(double max_speed, double tau, double h, int n);

/// Plain-text `key = value` rendering used for stability.txt.
std::string format_report(const StabilityReport& report);

/// Discrete energy
///   R = <Phi o G, G> + 1/4 <L G, G> - 1/4 <L (u + u_prev), u + u_prev>,
/// G = u - u_prev, Phi = h^2 / (tau^2 nu^2), L = h^2 times the compact
/// Laplacian with zero boundary data (h = h_x). It is conserved exactly by the
/// leapfrog scheme with zero source and zero Dirichlet data.
double energy_functional(const Field3D& u_curr, const Field3D& u_prev,
                         const VelocityModel& velocity, double tau);

/// As above but rejects problems with non-zero boundary data or source, for
/// which the conservation identity does not hold.
double energy_functional(const ProblemSpec& spec, const Field3D& u_curr, const Field3D& u_prev,
                         double tau);

/// 2 ||u||^2 + 2 ||u_prev||^2 (unweighted sums over interior nodes).
double discrete_energy(const Field3D& u_curr, const Field3D& u_prev);

}  // namespace compactwave
