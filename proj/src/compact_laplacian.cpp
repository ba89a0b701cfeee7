#include "compactwave/compact_laplacian.hpp"

#include <algorithm>
#include <string>

#include "compactwave/errors.hpp"

namespace compactwave {

namespace {

// Node index of a face along its normal axis.
int normal_index(const Grid& grid, Face f) { return is_upper(f) ? grid.n(normal_axis(f)) + 1 : 0; }

// (i, j, k) of the face node with tangential indices (p, q).
std::array<int, 3> face_node(const Grid& grid, Face f, int p, int q) {
  const int c = normal_index(grid, f);
  switch (normal_axis(f)) {
    case Axis::x:
      return {c, p, q};
    case Axis::y:
      return {p, c, q};
    case Axis::z:
      return {p, q, c};
  }
  return {0, 0, 0};
}

void require_time_derivative(const FaceData& faces, int d) {
  if (!faces.homogeneous && faces.max_time_derivative() < d) {
    throw ConfigError("face data: time derivative of order " + std::to_string(d) +
                      " is required but not provided");
  }
}

}  // namespace

FacePlanes face_values(const FaceData& faces, const Grid& grid, double t, int d) {
  FacePlanes out(grid);
  if (faces.homogeneous) return out;
  require_time_derivative(faces, d);
  for (Face f : kFaces) {
    const auto tang = tangential_axes(f);
    const FaceFunction& ff = faces[f];
    for (int q = 1; q <= grid.n(tang[1]); ++q) {
      const double b = grid.coord(tang[1], q);
      for (int p = 1; p <= grid.n(tang[0]); ++p) {
        out.at(f, p, q) = ff.value(d, t, grid.coord(tang[0], p), b);
      }
    }
  }
  return out;
}

FacePlanes boundary_closure(const FaceData& faces, const VelocityModel& velocity,
                            const SourceTerm& source, double t, int d) {
  const Grid& grid = velocity.grid();
  FacePlanes out(grid);
  if (faces.homogeneous && source.zero) return out;
  require_time_derivative(faces, d + 2);
  for (Face f : kFaces) {
    const auto tang = tangential_axes(f);
    const FaceFunction& ff = faces[f];
    for (int q = 1; q <= grid.n(tang[1]); ++q) {
      const double b = grid.coord(tang[1], q);
      for (int p = 1; p <= grid.n(tang[0]); ++p) {
        const double a = grid.coord(tang[0], p);
        const auto node = face_node(grid, f, p, q);
        const double s = source.at(d, t, grid.x(node[0]), grid.y(node[1]), grid.z(node[2]));
        double value = -s / velocity.speed_squared(node[0], node[1], node[2]);
        if (!faces.homogeneous) {
          value += ff.value(d + 2, t, a, b) / velocity.speed_squared(node[0], node[1], node[2]) -
                   ff.tangential_d2(d, 0, t, a, b) - ff.tangential_d2(d, 1, t, a, b);
        }
        out.at(f, p, q) = value;
      }
    }
  }
  return out;
}

std::vector<double> second_derivative_line(std::span<const double> line, double left_value,
                                           double right_value, double left_closure,
                                           double right_closure, double h,
                                           const SchemeCoefficients& coeffs) {
  coeffs.validate();
  if (!(h > 0.0)) throw ConfigError("second_derivative_line: spacing must be positive");
  const std::size_t n = line.size();
  if (n == 0) throw ConfigError("second_derivative_line: empty line");
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> rhs(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double left = m == 0 ? left_value : line[m - 1];
    const double right = m + 1 == n ? right_value : line[m + 1];
    rhs[m] = (coeffs.b1 * (left + right) + coeffs.b0 * line[m]) * inv_h2;
  }
  rhs.front() -= coeffs.a1 * left_closure;
  rhs.back() -= coeffs.a1 * right_closure;
  ToeplitzSolver(matrix_a(coeffs, static_cast<int>(n))).solve(rhs);
  return rhs;
}

CompactLaplacian::CompactLaplacian(const Grid& grid, const SchemeCoefficients& coeffs)
    : grid_(grid),
      coeffs_((coeffs.validate(), coeffs)),
      solvers_{ToeplitzSolver(matrix_a(coeffs, grid.nx())),
               ToeplitzSolver(matrix_a(coeffs, grid.ny())),
               ToeplitzSolver(matrix_a(coeffs, grid.nz()))},
      scratch_(grid.interior_size()) {}

void CompactLaplacian::second_derivative(Axis axis, const Field3D& u, const FacePlanes& dirichlet,
                                         const FacePlanes& closure, Field3D& out) const {
  sweep(axis, u, &dirichlet, &closure, out, Mode::overwrite);
}

void CompactLaplacian::apply(const Field3D& u, const FacePlanes& dirichlet,
                             const FacePlanes& closure, Field3D& out) const {
  sweep(Axis::x, u, &dirichlet, &closure, out, Mode::overwrite);
  sweep(Axis::y, u, &dirichlet, &closure, out, Mode::accumulate);
  sweep(Axis::z, u, &dirichlet, &closure, out, Mode::accumulate);
}

void CompactLaplacian::apply_homogeneous(const Field3D& u, Field3D& out) const {
  sweep(Axis::x, u, nullptr, nullptr, out, Mode::overwrite);
  sweep(Axis::y, u, nullptr, nullptr, out, Mode::accumulate);
  sweep(Axis::z, u, nullptr, nullptr, out, Mode::accumulate);
}

// Every sweep views the field as `rows` rows of `width` contiguous values with
// `stride` between rows; each column is one tridiagonal system along `axis`.
// The x sweep has width 1 (one system per (j,k) line, rows contiguous), the y
// sweep runs per k-plane with width nx, the z sweep once with width nx*ny.
void CompactLaplacian::sweep(Axis axis, const Field3D& u, const FacePlanes* dirichlet,
                             const FacePlanes* closure, Field3D& out, Mode mode) const {
  if (!u.grid().same_shape(grid_) || !out.grid().same_shape(grid_)) {
    throw ConfigError("compact Laplacian: field does not match the grid");
  }
  const std::size_t nx = grid_.nx(), ny = grid_.ny(), nz = grid_.nz();
  const double inv_h2 = 1.0 / (grid_.h(axis) * grid_.h(axis));
  const double b0 = coeffs_.b0 * inv_h2, b1 = coeffs_.b1 * inv_h2, a1 = coeffs_.a1;
  const ToeplitzSolver& solver = solvers_[static_cast<int>(axis)];
  const Face lo = static_cast<Face>(2 * static_cast<int>(axis));
  const Face hi = static_cast<Face>(2 * static_cast<int>(axis) + 1);
  const double* src = u.values().data();
  double* dst = out.values().data();
  double* work = scratch_.data();

  // Builds the right-hand side for one block, solves it and stores it.
  // `face_offset` locates the block's first column in the face planes.
  auto block = [&](std::size_t base, std::size_t rows, std::size_t width, std::size_t stride,
                   std::size_t face_offset) {
    const double* ub = src + base;
    double* wb = work + base;
    for (std::size_t r = 0; r < rows; ++r) {
      const double* row = ub + r * stride;
      double* wrow = wb + r * stride;
      const double* prev = r > 0 ? row - stride : nullptr;
      const double* next = r + 1 < rows ? row + stride : nullptr;
      for (std::size_t c = 0; c < width; ++c) {
        double neighbours = 0.0;
        if (prev) neighbours += prev[c];
        if (next) neighbours += next[c];
        wrow[c] = b1 * neighbours + b0 * row[c];
      }
    }
    if (dirichlet) {
      const double* dl = dirichlet->plane(lo).data() + face_offset;
      const double* dh = dirichlet->plane(hi).data() + face_offset;
      const double* cl = closure->plane(lo).data() + face_offset;
      const double* ch = closure->plane(hi).data() + face_offset;
      double* first = wb;
      double* last = wb + (rows - 1) * stride;
      for (std::size_t c = 0; c < width; ++c) {
        first[c] += b1 * dl[c] - a1 * cl[c];
        last[c] += b1 * dh[c] - a1 * ch[c];
      }
    }
    solver.solve_strided(wb, width, stride);
    double* ob = dst + base;
    for (std::size_t r = 0; r < rows; ++r) {
      const double* wrow = wb + r * stride;
      double* orow = ob + r * stride;
      if (mode == Mode::overwrite) {
        std::copy(wrow, wrow + width, orow);
      } else {
        for (std::size_t c = 0; c < width; ++c) orow[c] += wrow[c];
      }
    }
  };

  switch (axis) {
    case Axis::x:
      // Face planes of x faces are indexed (j, k) with j fastest.
      for (std::size_t k = 0; k < nz; ++k)
        for (std::size_t j = 0; j < ny; ++j) block((k * ny + j) * nx, nx, 1, 1, k * ny + j);
      break;
    case Axis::y:
      // y faces are indexed (i, k).
      for (std::size_t k = 0; k < nz; ++k) block(k * nx * ny, ny, nx, nx, k * nx);
      break;
    case Axis::z:
      // z faces are indexed (i, j), same layout as a k-plane.
      block(0, nz, nx * ny, nx * ny, 0);
      break;
  }
}

Field3D laplacian(const Field3D& u, const FacePlanes& dirichlet, const FacePlanes& closure,
                  const SchemeCoefficients& coeffs) {
  Field3D out(u.grid());
  CompactLaplacian(u.grid(), coeffs).apply(u, dirichlet, closure, out);
  return out;
}

Field3D laplacian(const Field3D& u, const FaceData& faces, const VelocityModel& velocity,
                  const SourceTerm& source, double t, const SchemeCoefficients& coeffs) {
  return laplacian(u, face_values(faces, u.grid(), t), boundary_closure(faces, velocity, source, t),
                   coeffs);
}

}  // namespace compactwave
