#include "compactwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "compactwave/errors.hpp"

namespace compactwave {

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::x:
      return 'x';
    case Axis::y:
      return 'y';
    case Axis::z:
      return 'z';
  }
  return '?';
}

double Domain::lower(Axis axis) const {
  switch (axis) {
    case Axis::x:
      return x_min;
    case Axis::y:
      return y_min;
    case Axis::z:
      return z_min;
  }
  return 0.0;
}

double Domain::upper(Axis axis) const {
  switch (axis) {
    case Axis::x:
      return x_max;
    case Axis::y:
      return y_max;
    case Axis::z:
      return z_max;
  }
  return 0.0;
}

Grid::Grid(const Domain& domain, int nx, int ny, int nz) : domain_(domain), counts_{nx, ny, nz} {
  for (Axis axis : kAxes) {
    const int a = static_cast<int>(axis);
    if (counts_[a] < 1) {
      throw ConfigError(std::string("grid: interior node count along ") + axis_name(axis) +
                        " must be >= 1");
    }
    if (!(domain.upper(axis) > domain.lower(axis)) || !std::isfinite(domain.length(axis))) {
      throw ConfigError(std::string("grid: degenerate domain along ") + axis_name(axis));
    }
    spacing_[a] = domain.length(axis) / (counts_[a] + 1);
  }
}

double Grid::h_min() const { return std::min({spacing_[0], spacing_[1], spacing_[2]}); }

double Grid::coord(Axis axis, int index) const {
  const int a = static_cast<int>(axis);
  if (index == counts_[a] + 1) return domain_.upper(axis);
  return domain_.lower(axis) + index * spacing_[a];
}

bool Grid::same_shape(const Grid& other) const {
  return counts_ == other.counts_ && spacing_ == other.spacing_;
}

Grid build_grid(const Domain& domain, int nx, int ny, int nz) { return Grid(domain, nx, ny, nz); }

Grid build_grid_with_spacing(const Domain& domain, double h) {
  if (!(h > 0.0)) throw ConfigError("grid: spacing must be positive");
  std::array<int, 3> n{};
  for (Axis axis : kAxes) {
    const double cells = domain.length(axis) / h;
    const double rounded = std::round(cells);
    if (rounded < 2.0 || std::abs(cells - rounded) > 1e-6 * rounded) {
      throw ConfigError(std::string("grid: spacing does not divide the domain along ") +
                        axis_name(axis));
    }
    n[static_cast<int>(axis)] = static_cast<int>(rounded) - 1;
  }
  return Grid(domain, n[0], n[1], n[2]);
}

Field3D::Field3D(const Grid& grid, double fill) : grid_(grid), data_(grid.interior_size(), fill) {}

void Field3D::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Field3D::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Field3D::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

template <typename Eval>
Field3D sample_with(const Grid& grid, Eval&& eval) {
  Field3D out(grid);
  for (int k = 1; k <= grid.nz(); ++k) {
    const double z = grid.z(k);
    for (int j = 1; j <= grid.ny(); ++j) {
      const double y = grid.y(j);
      for (int i = 1; i <= grid.nx(); ++i) {
        const double v = eval(grid.x(i), y, z);
        if (!std::isfinite(v)) {
          throw ConfigError("sample_scalar: function returned a non-finite value");
        }
        out(i, j, k) = v;
      }
    }
  }
  return out;
}

}  // namespace

Field3D sample_scalar(const SpatialFunction& f, const Grid& grid) {
  return sample_with(grid, [&](double x, double y, double z) { return f(x, y, z); });
}

Field3D sample_scalar(const SpaceTimeFunction& f, const Grid& grid, double t) {
  return sample_with(grid, [&](double x, double y, double z) { return f(t, x, y, z); });
}

VelocityModel::VelocityModel(const Grid& grid, const SpatialFunction& speed)
    : grid_(grid),
      speed_(static_cast<std::size_t>(grid.nx() + 2) * (grid.ny() + 2) * (grid.nz() + 2)),
      speed_sq_interior_(grid) {
  for (int k = 0; k <= grid.nz() + 1; ++k) {
    for (int j = 0; j <= grid.ny() + 1; ++j) {
      for (int i = 0; i <= grid.nx() + 1; ++i) {
        const double v = speed(grid.x(i), grid.y(j), grid.z(k));
        if (!(v > 0.0) || !std::isfinite(v)) {
          throw ConfigError("velocity model: speed must be positive and finite everywhere");
        }
        speed_[node_offset(i, j, k)] = v;
      }
    }
  }
  for (int k = 1; k <= grid.nz(); ++k)
    for (int j = 1; j <= grid.ny(); ++j)
      for (int i = 1; i <= grid.nx(); ++i) speed_sq_interior_(i, j, k) = speed_squared(i, j, k);
}

double VelocityModel::max_interior_speed() const {
  return std::sqrt(speed_sq_interior_.max_abs());
}

}  // namespace compactwave
