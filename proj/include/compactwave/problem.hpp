#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "compactwave/grid.hpp"

namespace compactwave {

enum class Face : int { x_min = 0, x_max = 1, y_min = 2, y_max = 3, z_min = 4, z_max = 5 };

constexpr std::array<Face, 6> kFaces{Face::x_min, Face::x_max, Face::y_min,
                                     Face::y_max, Face::z_min, Face::z_max};

inline Axis normal_axis(Face f) { return static_cast<Axis>(static_cast<int>(f) / 2); }
inline bool is_upper(Face f) { return static_cast<int>(f) % 2 == 1; }
/// The two tangential axes of a face, in increasing axis order.
std::array<Axis, 2> tangential_axes(Face f);

/// Dirichlet data on one face as a function of time and the two tangential
/// coordinates (a, b), ordered as in `tangential_axes`.
///
/// `value(d, t, a, b)` returns the d-th time derivative of the face data;
/// `tangential_d2(d, which, t, a, b)` the d-th time derivative of its second
/// derivative along tangential axis `which` (0 or 1). Callers never request
/// d above `max_time_derivative`.
struct FaceFunction {
  std::function<double(int d, double t, double a, double b)> value;
  std::function<double(int d, int which, double t, double a, double b)> tangential_d2;
  int max_time_derivative = 2;
};

/// Time derivatives and pure second space derivatives of a field given in
/// closed form. Used to derive face data and closures from a known solution.
struct SolutionJet {
  std::function<double(int d, double t, double x, double y, double z)> value;
  std::function<double(int d, Axis axis, double t, double x, double y, double z)> d2;
  int max_time_derivative = 2;
};

/// Dirichlet data on the six faces. Edge and corner compatibility between
/// faces is the caller's responsibility and is not checked.
struct FaceData {
  std::array<FaceFunction, 6> faces;
  /// Set when every face function is identically zero (all derivatives).
  bool homogeneous = false;

  const FaceFunction& operator[](Face f) const { return faces[static_cast<int>(f)]; }
  int max_time_derivative() const;

  static FaceData zero();
  /// Face data of a known solution restricted to the faces of `domain`.
  static FaceData from_solution(const Domain& domain, const SolutionJet& jet);
};

/// Source term s(t, x, y, z) with its time derivatives.
///
/// `pointwise(d, t, x, y, z)` is used on the boundary faces. Interior values
/// come from `sampler` when set (point sources) and from `pointwise` otherwise.
struct SourceTerm {
  std::function<double(int d, double t, double x, double y, double z)> pointwise;
  std::function<void(int d, double t, Field3D& out)> sampler;
  int max_time_derivative = 0;
  bool zero = false;

  /// Writes d^d s / dt^d at time t into `out` (interior nodes).
  void sample(int d, double t, Field3D& out) const;
  double at(int d, double t, double x, double y, double z) const;

  static SourceTerm none();
  static SourceTerm from_function(
      std::function<double(int d, double t, double x, double y, double z)> f, int max_d);
};

/// Full initial-boundary value problem u_tt = nu^2 Lap u + s on a box.
struct ProblemSpec {
  std::string name;
  Grid grid;
  VelocityModel velocity;
  SourceTerm source;
  SpatialFunction alpha;  // u(0)
  SpatialFunction beta;   // u_t(0)
  /// Analytic Laplacians of alpha and beta. When empty the compact Laplacian
  /// of the sampled data is used instead.
  SpatialFunction laplacian_alpha;
  SpatialFunction laplacian_beta;
  FaceData faces;
  double t_final = 1.0;
  /// Exact solution for error measurement, when known.
  SpaceTimeFunction exact;
};

/// Values on the interior nodes of each face, e.g. Dirichlet data or second
/// normal derivatives. The plane of face f is laid out with its first
/// tangential index fastest.
class FacePlanes {
 public:
  FacePlanes() = default;
  explicit FacePlanes(const Grid& grid);

  std::vector<double>& plane(Face f) { return planes_[static_cast<int>(f)]; }
  const std::vector<double>& plane(Face f) const { return planes_[static_cast<int>(f)]; }

  /// Entry at tangential indices (p, q), both 1-based.
  double& at(Face f, int p, int q) { return plane(f)[offset(f, p, q)]; }
  double at(Face f, int p, int q) const { return plane(f)[offset(f, p, q)]; }

  void fill(double v);
  bool all_finite() const;
  /// this += factor * other
  void add_scaled(double factor, const FacePlanes& other);

 private:
  std::size_t offset(Face f, int p, int q) const {
    return static_cast<std::size_t>(p - 1) +
           static_cast<std::size_t>(width_[static_cast<int>(f)]) * static_cast<std::size_t>(q - 1);
  }

  std::array<std::vector<double>, 6> planes_;
  std::array<int, 6> width_{};
};

}  // namespace compactwave
