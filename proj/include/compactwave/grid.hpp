#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace compactwave {

enum class Axis : int { x = 0, y = 1, z = 2 };

constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

char axis_name(Axis axis);

/// Rectangular box [x_min,x_max] x [y_min,y_max] x [z_min,z_max].
struct Domain {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  double z_min = 0.0, z_max = 1.0;

  double lower(Axis axis) const;
  double upper(Axis axis) const;
  double length(Axis axis) const { return upper(axis) - lower(axis); }
};

/// Uniform structured grid with N interior nodes per axis. Node indices run
/// 0..N+1; indices 0 and N+1 lie on the boundary faces.
class Grid {
 public:
  Grid() = default;
  Grid(const Domain& domain, int nx, int ny, int nz);

  const Domain& domain() const { return domain_; }
  int n(Axis axis) const { return counts_[static_cast<int>(axis)]; }
  int nx() const { return counts_[0]; }
  int ny() const { return counts_[1]; }
  int nz() const { return counts_[2]; }
  double h(Axis axis) const { return spacing_[static_cast<int>(axis)]; }
  double h_min() const;

  /// Coordinate of node `index` along `axis`; index in [0, N+1].
  double coord(Axis axis, int index) const;
  double x(int i) const { return coord(Axis::x, i); }
  double y(int j) const { return coord(Axis::y, j); }
  double z(int k) const { return coord(Axis::z, k); }

  std::size_t interior_size() const {
    return static_cast<std::size_t>(counts_[0]) * counts_[1] * counts_[2];
  }
  /// Linear offset of interior node (i, j, k), 1-based, i fastest.
  std::size_t offset(int i, int j, int k) const {
    return static_cast<std::size_t>(i - 1) +
           static_cast<std::size_t>(counts_[0]) *
               (static_cast<std::size_t>(j - 1) +
                static_cast<std::size_t>(counts_[1]) * static_cast<std::size_t>(k - 1));
  }

  bool same_shape(const Grid& other) const;

 private:
  Domain domain_{};
  std::array<int, 3> counts_{0, 0, 0};
  std::array<double, 3> spacing_{0.0, 0.0, 0.0};
};

Grid build_grid(const Domain& domain, int nx, int ny, int nz);

/// Picks N per axis so the spacing equals `h` (the axis length must be a
/// whole multiple of h up to rounding).
Grid build_grid_with_spacing(const Domain& domain, double h);

/// Scalar field on the interior nodes of a grid.
class Field3D {
 public:
  Field3D() = default;
  explicit Field3D(const Grid& grid, double fill = 0.0);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j, int k) { return data_[grid_.offset(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[grid_.offset(i, j, k)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double value);
  bool all_finite() const;
  double max_abs() const;

 private:
  Grid grid_{};
  std::vector<double> data_;
};

using SpatialFunction = std::function<double(double x, double y, double z)>;
using SpaceTimeFunction = std::function<double(double t, double x, double y, double z)>;

Field3D sample_scalar(const SpatialFunction& f, const Grid& grid);
Field3D sample_scalar(const SpaceTimeFunction& f, const Grid& grid, double t);

/// Wave speed at every node including the boundary faces.
class VelocityModel {
 public:
  VelocityModel() = default;
  VelocityModel(const Grid& grid, const SpatialFunction& speed);

  const Grid& grid() const { return grid_; }
  /// Speed at node (i, j, k), indices in [0, N+1].
  double speed(int i, int j, int k) const { return speed_[node_offset(i, j, k)]; }
  double speed_squared(int i, int j, int k) const {
    double v = speed(i, j, k);
    return v * v;
  }
  /// nu^2 on interior nodes in Field3D layout.
  const Field3D& speed_squared_interior() const { return speed_sq_interior_; }
  /// Maximum speed over interior nodes.
  double max_interior_speed() const;

 private:
  std::size_t node_offset(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(grid_.nx() + 2) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(grid_.ny() + 2) * static_cast<std::size_t>(k));
  }

  Grid grid_{};
  std::vector<double> speed_;
  Field3D speed_sq_interior_;
};

}  // namespace compactwave
