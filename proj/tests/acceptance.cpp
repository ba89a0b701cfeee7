// Acceptance suite: one PASS/FAIL line per primary criterion. Exits non-zero
// when any criterion fails.

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "compactwave/compact_laplacian.hpp"
#include "compactwave/harness.hpp"
#include "compactwave/stability.hpp"
#include "compactwave/time_integration.hpp"

using namespace compactwave;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

const std::vector<double> kSweep{1.0 / 10, 1.0 / 15, 1.0 / 20};

Outcome spatial_order() {
  const auto rows =
      convergence_sweep("example1", kSweep, TauRule::h_squared, 0, 1.0, Integrator::leapfrog);
  Outcome o{true, "orders (max, energy):"};
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double om = *rows[r].report.order_max, oe = *rows[r].report.order_energy;
    o.pass = o.pass && within(om, 3.7, 4.3) && within(oe, 3.7, 4.3);
    o.detail += fmt(" (%.4f", om) + fmt(", %.4f)", oe);
  }
  o.detail += " required in [3.7, 4.3]";
  return o;
}

Outcome temporal_upgrade() {
  const auto re =
      convergence_sweep("example2", kSweep, TauRule::h_over_10, 0, 1.0, Integrator::richardson);
  const auto rk = convergence_sweep("example2", kSweep, TauRule::h_over_10, 0, 1.0, Integrator::rk4);
  Outcome o{true, "RE orders:"};
  for (std::size_t r = 1; r < re.size(); ++r) {
    const double a = *re[r].report.order_max, b = *re[r].report.order_energy;
    o.pass = o.pass && within(a, 3.8, 4.4) && within(b, 3.8, 4.4);
    o.detail += fmt(" (%.4f", a) + fmt(", %.4f)", b);
  }
  o.detail += "; RK4 orders:";
  for (std::size_t r = 1; r < rk.size(); ++r) {
    const double a = *rk[r].report.order_max, b = *rk[r].report.order_energy;
    o.pass = o.pass && within(a, 3.8, 4.4) && within(b, 3.8, 4.4);
    o.detail += fmt(" (%.4f", a) + fmt(", %.4f)", b);
  }
  o.detail += "; |E_RE-E_RK4|/E_RK4:";
  for (std::size_t r = 0; r < re.size(); ++r) {
    const double e_re = re[r].report.e_energy, e_rk = rk[r].report.e_energy;
    const double rel = std::abs(e_re - e_rk) / e_rk;
    const double rel_max = std::abs(re[r].report.e_max - rk[r].report.e_max) / rk[r].report.e_max;
    o.pass = o.pass && rel <= 0.02;
    o.detail += fmt(" %.2e", rel) + fmt(" (max norm %.2e)", rel_max);
  }
  o.detail += " required <= 0.02 in the energy norm";
  return o;
}

Outcome table1_magnitude() {
  const auto rows = convergence_sweep("example1", {1.0 / 10, 1.0 / 15}, TauRule::h_squared, 0, 1.0,
                                      Integrator::leapfrog);
  const double paper[2] = {0.0047, 9.5748e-4};
  Outcome o{true, "reported only, T = 1:"};
  for (int r = 0; r < 2; ++r) {
    const double ratio = rows[r].report.e_max / paper[r];
    o.pass = o.pass && within(ratio, 0.1, 10.0);
    o.detail += fmt(" E_max=%.4e", rows[r].report.e_max) + fmt(" (paper %.4e)", paper[r]);
  }
  return o;
}

Eigen::MatrixXd dense(const TriDiagToeplitz& m) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.order, m.order);
  for (int i = 0; i < m.order; ++i) {
    d(i, i) = m.diag;
    if (i > 0) d(i, i - 1) = d(i - 1, i) = m.offdiag;
  }
  return d;
}

Outcome spectral_oracle() {
  const SchemeCoefficients c;
  double worst = 0.0;
  for (int n : {1, 2, 4, 8, 16}) {
    const TriDiagToeplitz a = matrix_a(c, n), b = matrix_b(c, n);
    for (const TriDiagToeplitz* m : {&a, &b}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(*m));
      const auto closed = toeplitz_spectrum(*m);
      for (int l = 0; l < n; ++l) worst = std::max(worst, std::abs(closed[l] - es.eigenvalues()(l)));
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(dense(a).inverse() * dense(b));
    worst = std::max(worst, std::abs(es.eigenvalues().real().maxCoeff() + r_of_n(n)));
  }
  return {worst <= 1e-12, fmt("largest deviation %.3e (tolerance 1e-12)", worst)};
}

Outcome energy_identity() {
  const int n = 16;
  ProblemSpec spec;
  spec.grid = build_grid(Domain{}, n, n, n);
  spec.velocity = VelocityModel(spec.grid, [](double, double, double) { return 1.0; });
  spec.source = SourceTerm::none();
  spec.faces = FaceData::zero();
  const double h = spec.grid.h(Axis::x);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> alpha(spec.grid.interior_size());
  for (double& v : alpha) v = dist(rng);
  const Grid& g = spec.grid;
  spec.alpha = [&alpha, &g, h](double x, double y, double z) {
    const int i = static_cast<int>(std::lround(x / h)), j = static_cast<int>(std::lround(y / h)),
              k = static_cast<int>(std::lround(z / h));
    return alpha[g.offset(i, j, k)];
  };
  spec.beta = [](double, double, double) { return 0.0; };

  const double tau = 0.4 * h;
  StepState s{sample_scalar(spec.alpha, g), ghost_level(spec, tau), 0.0, tau, 0};
  const CompactLaplacian lap(g);
  const Field3D zero(g);
  Field3D l(g);
  const double r0 = energy_functional(spec, s.u_curr, s.u_prev, tau);
  const double e0 = discrete_energy(s.u_curr, s.u_prev);
  double drift = 0.0, bound = 0.0;
  for (int k = 0; k < 500; ++k) {
    lap.apply_homogeneous(s.u_curr, l);
    leapfrog_step(s, l, spec.velocity, zero);
    drift = std::max(drift, std::abs(energy_functional(spec, s.u_curr, s.u_prev, tau) - r0) / r0);
    bound = std::max(bound, discrete_energy(s.u_curr, s.u_prev) / e0);
  }
  return {drift <= 1e-10 && bound <= 4.0,
          fmt("max relative drift of R %.3e (<= 1e-10), ", drift) +
              fmt("max (2|u|^2+2|u_prev|^2)/initial %.4f (<= 4)", bound)};
}

Outcome cfl_gate() {
  const StabilityReport ok = cfl_check(2500.0, 0.0005, 5.0, 239);
  const StabilityReport bad = cfl_check(2500.0, 0.001, 5.0, 239);
  const bool pass = ok.pass && std::abs(ok.courant - 0.25) < 1e-12 && !bad.pass &&
                    std::abs(bad.courant - 0.5) < 1e-12;
  return {pass, fmt("tau=0.0005: courant %.4f ", ok.courant) + (ok.pass ? "pass" : "fail") +
                    fmt(", tau=0.001: courant %.4f ", bad.courant) + (bad.pass ? "pass" : "fail") +
                    fmt(", limit %.6f", cfl_limit())};
}

Outcome ghost_order() {
  const ProblemSpec spec = example1_spec(9);
  double err[2];
  const double taus[2] = {0.02, 0.01};
  for (int r = 0; r < 2; ++r) {
    const Field3D ghost = ghost_level(spec, taus[r]);
    const Field3D exact = sample_scalar(spec.exact, spec.grid, -taus[r]);
    err[r] = 0.0;
    for (std::size_t k = 0; k < ghost.size(); ++k) {
      err[r] = std::max(err[r], std::abs(ghost.values()[k] - exact.values()[k]));
    }
  }
  const double ratio = err[0] / err[1];
  return {within(ratio, 12.0, 20.0), fmt("error ratio %.4f (required in [12, 20])", ratio)};
}

Outcome operator_exactness() {
  const Grid g = build_grid(Domain{}, 12, 13, 14);
  FacePlanes dirichlet(g), two(g);
  two.fill(2.0);
  for (Face f : kFaces) {
    const Axis nrm = normal_axis(f);
    const auto t = tangential_axes(f);
    const int fixed = is_upper(f) ? g.n(nrm) + 1 : 0;
    for (int q = 1; q <= g.n(t[1]); ++q)
      for (int p = 1; p <= g.n(t[0]); ++p) {
        const double a = g.coord(nrm, fixed), b = g.coord(t[0], p), c = g.coord(t[1], q);
        dirichlet.at(f, p, q) = a * a + b * b + c * c;
      }
  }
  const Field3D u =
      sample_scalar([](double x, double y, double z) { return x * x + y * y + z * z; }, g);
  const Field3D lap = laplacian(u, dirichlet, two);
  double quad = 0.0;
  for (double v : lap.values()) quad = std::max(quad, std::abs(v - 6.0));

  double lin = 0.0;
  for (int n : {1, 5, 40}) {
    const double h = 1.0 / (n + 1);
    std::vector<double> line(n);
    for (int i = 0; i < n; ++i) line[i] = (i + 1) * h;
    for (double v : second_derivative_line(line, 0.0, 1.0, 0.0, 0.0, h)) lin = std::max(lin, std::abs(v));
  }
  return {quad <= 1e-11 && lin <= 1e-12,
          fmt("|Lap(x^2+y^2+z^2) - 6| = %.3e (<= 1e-11), ", quad) +
              fmt("|D2 x| = %.3e (<= 1e-12)", lin)};
}

Outcome seismic_arrival() {
  const double h = 15.0;
  const ProblemSpec spec = example3_spec(h, 0.375);
  const double tau = example3_time_step(h);
  const auto src = nearest_interior_node(example3_source(), spec.grid);
  ArrivalDetector detector(kExample3Interface, 1e-6);
  SliceSplit early, late;
  RunOptions options;
  options.observer = [&](long, double t, const Field3D& u) {
    detector.observe(t, u);
    if (std::abs(t - 0.225) <= 0.5 * tau) {
      early = split_slice(snapshot_slice(u, spec.faces, Axis::y, src[1], t), spec.grid,
                          kExample3Interface);
    }
    if (std::abs(t - 0.375) <= 0.5 * tau) {
      late = split_slice(snapshot_slice(u, spec.faces, Axis::y, src[1], t), spec.grid,
                         kExample3Interface);
    }
  };
  run_leapfrog(spec, tau, options);

  const double expected = example3_expected_arrival();
  const auto arrival = detector.arrival_time();
  const bool arrival_ok = arrival && std::abs(*arrival - expected) <= 0.02;
  const double early_ratio = early.max_below / early.max_above;
  const double late_ratio = late.max_below / late.max_above;
  const bool confined = early_ratio <= 0.01;
  const bool transmitted = late_ratio >= 0.01;
  std::string d = arrival ? fmt("arrival %.6f s", *arrival) : std::string("no arrival");
  d += fmt(" (expected %.6f +- 0.02) ", expected) + (arrival_ok ? "ok" : "out of window");
  d += fmt("; t=0.225 below/above %.3e (<= 0.01) ", early_ratio) + (confined ? "ok" : "leaks");
  d += fmt("; t=0.375 below/above %.3e (>= 0.01) ", late_ratio) + (transmitted ? "ok" : "missing");
  return {arrival_ok && confined && transmitted, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"spatial order, Example 1", spatial_order},
      {"temporal upgrade, Example 2 (RE and RK4)", temporal_upgrade},
      {"Table 1 order of magnitude", table1_magnitude},
      {"spectral oracle", spectral_oracle},
      {"energy identity", energy_identity},
      {"CFL gate", cfl_gate},
      {"ghost-level order", ghost_order},
      {"operator exactness", operator_exactness},
      {"seismic arrival, Example 3", seismic_arrival},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
