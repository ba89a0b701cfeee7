#include "compactwave/problem.hpp"

#include <algorithm>
#include <cmath>

#include "compactwave/errors.hpp"

namespace compactwave {

std::array<Axis, 2> tangential_axes(Face f) {
  switch (normal_axis(f)) {
    case Axis::x:
      return {Axis::y, Axis::z};
    case Axis::y:
      return {Axis::x, Axis::z};
    case Axis::z:
      return {Axis::x, Axis::y};
  }
  return {Axis::y, Axis::z};
}

int FaceData::max_time_derivative() const {
  int m = faces[0].max_time_derivative;
  for (const auto& f : faces) m = std::min(m, f.max_time_derivative);
  return m;
}

FaceData FaceData::zero() {
  FaceData data;
  for (auto& f : data.faces) {
    f.value = [](int, double, double, double) { return 0.0; };
    f.tangential_d2 = [](int, int, double, double, double) { return 0.0; };
    f.max_time_derivative = 1 << 20;
  }
  data.homogeneous = true;
  return data;
}

namespace {

// Maps (a, b) tangential coordinates on face f back to (x, y, z).
std::array<double, 3> face_point(const Domain& domain, Face f, double a, double b) {
  const Axis n = normal_axis(f);
  const double c = is_upper(f) ? domain.upper(n) : domain.lower(n);
  switch (n) {
    case Axis::x:
      return {c, a, b};
    case Axis::y:
      return {a, c, b};
    case Axis::z:
      return {a, b, c};
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace

FaceData FaceData::from_solution(const Domain& domain, const SolutionJet& jet) {
  FaceData data;
  for (Face f : kFaces) {
    const auto tang = tangential_axes(f);
    FaceFunction& ff = data.faces[static_cast<int>(f)];
    ff.value = [domain, f, jet](int d, double t, double a, double b) {
      const auto p = face_point(domain, f, a, b);
      return jet.value(d, t, p[0], p[1], p[2]);
    };
    ff.tangential_d2 = [domain, f, jet, tang](int d, int which, double t, double a, double b) {
      const auto p = face_point(domain, f, a, b);
      return jet.d2(d, tang[which], t, p[0], p[1], p[2]);
    };
    ff.max_time_derivative = jet.max_time_derivative;
  }
  return data;
}

void SourceTerm::sample(int d, double t, Field3D& out) const {
  if (zero) {
    out.fill(0.0);
    return;
  }
  if (d > max_time_derivative) {
    throw ConfigError("source term: time derivative of order " + std::to_string(d) +
                      " not available");
  }
  if (sampler) {
    sampler(d, t, out);
    return;
  }
  const Grid& g = out.grid();
  for (int k = 1; k <= g.nz(); ++k)
    for (int j = 1; j <= g.ny(); ++j)
      for (int i = 1; i <= g.nx(); ++i) out(i, j, k) = pointwise(d, t, g.x(i), g.y(j), g.z(k));
}

double SourceTerm::at(int d, double t, double x, double y, double z) const {
  if (zero) return 0.0;
  if (d > max_time_derivative) {
    throw ConfigError("source term: time derivative of order " + std::to_string(d) +
                      " not available");
  }
  return pointwise(d, t, x, y, z);
}

SourceTerm SourceTerm::none() {
  SourceTerm s;
  s.pointwise = [](int, double, double, double, double) { return 0.0; };
  s.max_time_derivative = 1 << 20;
  s.zero = true;
  return s;
}

SourceTerm SourceTerm::from_function(
    std::function<double(int d, double t, double x, double y, double z)> f, int max_d) {
  SourceTerm s;
  s.pointwise = std::move(f);
  s.max_time_derivative = max_d;
  return s;
}

FacePlanes::FacePlanes(const Grid& grid) {
  for (Face f : kFaces) {
    const auto tang = tangential_axes(f);
    width_[static_cast<int>(f)] = grid.n(tang[0]);
    planes_[static_cast<int>(f)].assign(
        static_cast<std::size_t>(grid.n(tang[0])) * grid.n(tang[1]), 0.0);
  }
}

void FacePlanes::fill(double v) {
  for (auto& p : planes_) std::fill(p.begin(), p.end(), v);
}

bool FacePlanes::all_finite() const {
  for (const auto& p : planes_)
    for (double v : p)
      if (!std::isfinite(v)) return false;
  return true;
}

void FacePlanes::add_scaled(double factor, const FacePlanes& other) {
  for (std::size_t f = 0; f < planes_.size(); ++f) {
    auto& dst = planes_[f];
    const auto& src = other.planes_[f];
    for (std::size_t n = 0; n < dst.size(); ++n) dst[n] += factor * src[n];
  }
}

}  // namespace compactwave
