#include "compactwave/physics.hpp"

#include <cmath>
#include <numbers>

#include "compactwave/errors.hpp"

namespace compactwave {

namespace {

void check_frequency(const RickerSource& src) {
  if (!(src.peak_frequency > 0.0)) throw ConfigError("ricker: peak frequency must be positive");
}

}  // namespace

double ricker_amplitude(double t, const RickerSource& src) { return ricker_derivative(0, t, src); }

double ricker_derivative(int d, double t, const RickerSource& src) {
  check_frequency(src);
  const double a = std::numbers::pi * std::numbers::pi * src.peak_frequency * src.peak_frequency;
  const double s = t - src.delay;
  const double s2 = s * s;
  const double g = std::exp(-a * s2);
  switch (d) {
    case 0:
      return (1.0 - 2.0 * a * s2) * g;
    case 1:
      return (-6.0 * a * s + 4.0 * a * a * s2 * s) * g;
    case 2:
      return (-6.0 * a + 24.0 * a * a * s2 - 8.0 * a * a * a * s2 * s2) * g;
    case 3:
      return (60.0 * a * a * s - 80.0 * a * a * a * s2 * s + 16.0 * a * a * a * a * s2 * s2 * s) * g;
    default:
      throw ConfigError("ricker: time derivatives above order 3 are not available");
  }
}

std::array<int, 3> nearest_interior_node(const RickerSource& src, const Grid& grid) {
  const std::array<double, 3> pos{src.x, src.y, src.z};
  std::array<int, 3> node{};
  for (Axis axis : kAxes) {
    const int a = static_cast<int>(axis);
    const double lo = grid.domain().lower(axis), hi = grid.domain().upper(axis);
    if (!(pos[a] > lo && pos[a] < hi)) {
      throw ConfigError("point source must lie strictly inside the domain");
    }
    const long idx = std::lround((pos[a] - lo) / grid.h(axis));
    if (idx < 1 || idx > grid.n(axis)) {
      throw ConfigError("point source is nearest to a boundary face node");
    }
    node[a] = static_cast<int>(idx);
  }
  return node;
}

Field3D point_source_field(const RickerSource& src, const Grid& grid, double t) {
  Field3D out(grid);
  const auto node = nearest_interior_node(src, grid);
  const double volume = grid.h(Axis::x) * grid.h(Axis::y) * grid.h(Axis::z);
  out(node[0], node[1], node[2]) = ricker_amplitude(t, src) / volume;
  return out;
}

SourceTerm point_source_term(const RickerSource& src, const Grid& grid) {
  const auto node = nearest_interior_node(src, grid);
  const double inv_volume = 1.0 / (grid.h(Axis::x) * grid.h(Axis::y) * grid.h(Axis::z));
  SourceTerm s;
  s.pointwise = [](int, double, double, double, double) { return 0.0; };
  s.sampler = [src, node, inv_volume](int d, double t, Field3D& out) {
    out.fill(0.0);
    out(node[0], node[1], node[2]) = ricker_derivative(d, t, src) * inv_volume;
  };
  s.max_time_derivative = 3;
  return s;
}

double LayeredVelocity::operator()(double, double, double z) const {
  return z <= interface_z ? v_upper : v_lower;
}

VelocityModel layered_velocity(const LayeredVelocity& model, const Grid& grid) {
  if (!(model.v_upper > 0.0) || !(model.v_lower > 0.0)) {
    throw ConfigError("layered velocity: speeds must be positive");
  }
  return VelocityModel(grid, model);
}

}  // namespace compactwave
