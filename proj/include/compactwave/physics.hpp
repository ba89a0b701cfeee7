#pragma once

#include "compactwave/grid.hpp"
#include "compactwave/problem.hpp"

namespace compactwave {

/// Ricker wavelet point source.
struct RickerSource {
  double peak_frequency = 10.0;  // f_p, Hz
  double delay = 0.05;           // d_r, s
  double x = 0.0, y = 0.0, z = 0.0;
};

/// [1 - 2 pi^2 f^2 (t - d)^2] exp(-pi^2 f^2 (t - d)^2)
double ricker_amplitude(double t, const RickerSource& src);

/// d-th time derivative of the wavelet, d in [0, 3].
double ricker_derivative(int d, double t, const RickerSource& src);

/// Interior node nearest to the source location. Throws if the source lies
/// outside the domain or on a boundary face.
std::array<int, 3> nearest_interior_node(const RickerSource& src, const Grid& grid);

/// Discrete delta: amplitude / (h_x h_y h_z) at the nearest interior node.
Field3D point_source_field(const RickerSource& src, const Grid& grid, double t);

/// Source term for a Ricker point source (zero on the boundary faces).
SourceTerm point_source_term(const RickerSource& src, const Grid& grid);

/// Two-layer medium: v_upper for z <= interface_z, v_lower below.
struct LayeredVelocity {
  double interface_z = 879.75;
  double v_upper = 1200.0;
  double v_lower = 2500.0;

  double operator()(double x, double y, double z) const;
};

VelocityModel layered_velocity(const LayeredVelocity& model, const Grid& grid);

}  // namespace compactwave
