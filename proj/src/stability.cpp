#include "compactwave/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "compactwave/compact_laplacian.hpp"
#include "compactwave/errors.hpp"

namespace compactwave {

double cfl_limit() { return std::numbers::sqrt2 / 3.0; }

double r_of_n(int n) {
  if (n < 1) throw ConfigError("r(N): N must be >= 1");
  const double c = std::cos(std::numbers::pi / (n + 1));
  return (12.0 / 5.0 - 12.0 / 5.0 * c) / (1.0 + c / 5.0);
}

StabilityReport cfl_check(double max_speed, double tau, double h, int n) {
  if (!(tau > 0.0) || !(h > 0.0) || !(max_speed > 0.0)) {
    throw ConfigError("cfl_check: speed, time step and spacing must be positive");
  }
  StabilityReport report;
  report.n = n;
  report.r_n = r_of_n(n);
  report.m = 3.0 * report.r_n;
  report.cfl_limit = cfl_limit();
  report.courant = max_speed * tau / h;
  report.margin = report.cfl_limit - report.courant;
  report.pass = report.courant < report.cfl_limit;
  return report;
}

StabilityReport cfl_check(const VelocityModel& velocity, double tau) {
  const Grid& g = velocity.grid();
  const int n = std::min({g.nx(), g.ny(), g.nz()});
  return cfl_check(velocity.max_interior_speed(), tau, g.h_min(), n);
}

std::string format_report(const StabilityReport& r) {
  std::ostringstream os;
  os.precision(15);
  os << "n = " << r.n << '\n'
     << "r_n = " << r.r_n << '\n'
     << "m = " << r.m << '\n'
     << "M = " << r.big_m << '\n'
     << "cfl_limit = " << r.cfl_limit << '\n'
     << "courant = " << r.courant << '\n'
     << "margin = " << r.margin << '\n'
     << "pass = " << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) acc += a[n] * b[n];
  return acc;
}

}  // namespace

double energy_functional(const Field3D& u_curr, const Field3D& u_prev,
                         const VelocityModel& velocity, double tau) {
  const Grid& g = u_curr.grid();
  if (!u_prev.grid().same_shape(g) || !velocity.grid().same_shape(g)) {
    throw ConfigError("energy_functional: fields do not share one grid");
  }
  if (!(tau > 0.0)) throw ConfigError("energy_functional: time step must be positive");
  const double h = g.h(Axis::x);
  const double scale = h * h;

  Field3D gamma(g), sum(g), l_gamma(g), l_sum(g);
  auto uc = u_curr.values();
  auto up = u_prev.values();
  auto gv = gamma.values();
  auto sv = sum.values();
  for (std::size_t n = 0; n < uc.size(); ++n) {
    gv[n] = uc[n] - up[n];
    sv[n] = uc[n] + up[n];
  }
  CompactLaplacian lap(g);
  lap.apply_homogeneous(gamma, l_gamma);
  lap.apply_homogeneous(sum, l_sum);

  const auto nu2 = velocity.speed_squared_interior().values();
  double phi_term = 0.0;
  for (std::size_t n = 0; n < gv.size(); ++n) phi_term += gv[n] * gv[n] / nu2[n];
  phi_term *= scale / (tau * tau);

  return phi_term + 0.25 * scale * dot(l_gamma.values(), gv) -
         0.25 * scale * dot(l_sum.values(), sv);
}

double energy_functional(const ProblemSpec& spec, const Field3D& u_curr, const Field3D& u_prev,
                         double tau) {
  if (!spec.faces.homogeneous || !spec.source.zero) {
    throw ConfigError(
        "energy_functional: conservation holds only for zero boundary data and zero source");
  }
  return energy_functional(u_curr, u_prev, spec.velocity, tau);
}

double discrete_energy(const Field3D& u_curr, const Field3D& u_prev) {
  return 2.0 * dot(u_curr.values(), u_curr.values()) + 2.0 * dot(u_prev.values(), u_prev.values());
}

}  // namespace compactwave
