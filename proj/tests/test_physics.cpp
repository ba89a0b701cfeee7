#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "compactwave/errors.hpp"
#include "compactwave/physics.hpp"

using namespace compactwave;

TEST_CASE("Ricker amplitude values") {
  const RickerSource src{10.0, 0.05, 0, 0, 0};
  CHECK(ricker_amplitude(0.05, src) == doctest::Approx(1.0));
  const double root = 0.05 + 1.0 / (std::numbers::pi * 10.0 * std::sqrt(2.0));
  CHECK(std::abs(ricker_amplitude(root, src)) <= 1e-14);
  CHECK(ricker_amplitude(0.0, src) == doctest::Approx(-0.33368).epsilon(1e-5));
  CHECK_THROWS_AS(ricker_amplitude(0.0, RickerSource{0.0, 0.05, 0, 0, 0}), ConfigError);
  CHECK_THROWS_AS(ricker_derivative(4, 0.0, src), ConfigError);
}

TEST_CASE("Ricker derivatives match finite differences") {
  const RickerSource src{10.0, 0.05, 0, 0, 0};
  const double e = 1e-5;
  for (double t : {0.0, 0.03, 0.05, 0.071, 0.12}) {
    for (int d = 1; d <= 3; ++d) {
      auto f = [&](double s) { return ricker_derivative(d - 1, s, src); };
      const double fd = (-f(t + 2 * e) + 8 * f(t + e) - 8 * f(t - e) + f(t - 2 * e)) / (12 * e);
      const double scale = std::pow(std::numbers::pi * 10.0, d) * 10.0;
      CHECK(std::abs(ricker_derivative(d, t, src) - fd) <= 1e-7 * scale);
    }
  }
}

TEST_CASE("point source lands on the nearest node") {
  const Grid g = build_grid_with_spacing(Domain{0, 1200, 0, 1200, 0, 1350}, 5.0);
  const auto node = nearest_interior_node(RickerSource{10, 0.05, 600, 600, 600}, g);
  CHECK(node == std::array<int, 3>{120, 120, 120});
  CHECK_THROWS_AS(nearest_interior_node(RickerSource{10, 0.05, 600, 600, 1400}, g), ConfigError);
  CHECK_THROWS_AS(nearest_interior_node(RickerSource{10, 0.05, 1, 600, 600}, g), ConfigError);
}

TEST_CASE("discrete delta") {
  const Grid g = build_grid(Domain{0, 4, 0, 4, 0, 4}, 3, 3, 3);
  const RickerSource src{10, 0.05, 2.2, 1.9, 3.1};
  const double t = 0.04;
  const Field3D f = point_source_field(src, g, t);
  double sum = 0.0;
  int nonzero = 0;
  for (double v : f.values()) {
    sum += v;
    nonzero += v != 0.0;
  }
  CHECK(nonzero == 1);
  CHECK(f(2, 2, 3) != 0.0);
  CHECK(std::abs(sum - ricker_amplitude(t, src)) <= 1e-14);

  const Field3D late = point_source_field(src, g, 0.05 + 3.0 / 10.0 + 0.01);
  CHECK(late.max_abs() < 1e-12);

  const Field3D peak = point_source_field(RickerSource{10, 0.05, 2.0, 2.0, 2.0}, g, 0.05);
  CHECK(peak(2, 2, 2) == 1.0);
}

TEST_CASE("point source term samples derivatives") {
  const Grid g = build_grid(Domain{0, 4, 0, 4, 0, 4}, 3, 3, 3);
  const RickerSource src{10, 0.05, 2.0, 2.0, 2.0};
  const SourceTerm s = point_source_term(src, g);
  Field3D out(g, 7.0);
  s.sample(2, 0.03, out);
  CHECK(out(2, 2, 2) == doctest::Approx(ricker_derivative(2, 0.03, src)));
  CHECK(out(1, 2, 2) == 0.0);
  CHECK(s.at(0, 0.03, 0.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("layered velocity") {
  const LayeredVelocity layers;
  CHECK(layers(0, 0, 600) == 1200.0);
  CHECK(layers(0, 0, 1000) == 2500.0);
  CHECK(layers(0, 0, 879.75) == 1200.0);

  const Grid g = build_grid_with_spacing(Domain{0, 1200, 0, 1200, 0, 1350}, 75.0);
  const VelocityModel v = layered_velocity(layers, g);
  std::set<double> speeds;
  for (int k = 0; k <= g.nz() + 1; ++k) {
    const double want = g.z(k) <= 879.75 ? 1200.0 : 2500.0;
    CHECK(v.speed(3, 4, k) == want);
    speeds.insert(v.speed(1, 1, k));
  }
  CHECK(speeds.size() == 2);
  CHECK_THROWS_AS(layered_velocity(LayeredVelocity{500, -1, 2}, g), ConfigError);
}
