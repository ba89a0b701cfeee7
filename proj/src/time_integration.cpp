#include "compactwave/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <utility>

#include "compactwave/errors.hpp"

namespace compactwave {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("time step must be positive");
}

void gate_cfl(const ProblemSpec& spec, double tau, CflPolicy policy) {
  const StabilityReport report = cfl_check(spec.velocity, tau);
  if (report.pass) return;
  const std::string msg = "Courant number " + std::to_string(report.courant) +
                          " exceeds the stability limit " + std::to_string(report.cfl_limit);
  if (policy == CflPolicy::abort) throw CflError(msg);
  std::cerr << "warning: " << msg << '\n';
}

// Laplacian of a sampled function: analytic when available, compact otherwise.
Field3D initial_laplacian(const ProblemSpec& spec, const SpatialFunction& analytic,
                          const Field3D& sampled, int d) {
  if (analytic) return sample_scalar(analytic, spec.grid);
  return laplacian(sampled, face_values(spec.faces, spec.grid, 0.0, d),
                   boundary_closure(spec.faces, spec.velocity, spec.source, 0.0, d));
}

void check_finite(const Field3D& u, long step, double t) {
  if (!u.all_finite()) throw InstabilityError(step, t);
}

}  // namespace

Field3D ghost_level(const ProblemSpec& spec, double tau) {
  check_tau(tau);
  if (!spec.source.zero && spec.source.max_time_derivative < 1) {
    throw ConfigError("ghost level: the source time derivative is required");
  }
  const Grid& g = spec.grid;
  const Field3D alpha = sample_scalar(spec.alpha, g);
  const Field3D beta = sample_scalar(spec.beta, g);
  const Field3D lap_alpha = initial_laplacian(spec, spec.laplacian_alpha, alpha, 0);
  const Field3D lap_beta = initial_laplacian(spec, spec.laplacian_beta, beta, 1);
  Field3D s0(g), s1(g);
  spec.source.sample(0, 0.0, s0);
  spec.source.sample(1, 0.0, s1);

  Field3D out(g);
  const Field3D& nu2_field = spec.velocity.speed_squared_interior();
  const std::span<const double> nu2 = nu2_field.values();
  auto o = out.values();
  const std::span<const double> a = alpha.values(), b = beta.values(), la = lap_alpha.values(),
                                lb = lap_beta.values(), sv0 = s0.values(), sv1 = s1.values();
  const double c2 = 0.5 * tau * tau, c3 = tau * tau * tau / 6.0;
  for (std::size_t n = 0; n < o.size(); ++n) {
    o[n] = a[n] - tau * b[n] + c2 * (nu2[n] * la[n] + sv0[n]) - c3 * (nu2[n] * lb[n] + sv1[n]);
  }
  return out;
}

void leapfrog_step(StepState& state, const Field3D& lap, const VelocityModel& velocity,
                   const Field3D& source) {
  const Grid& g = state.u_curr.grid();
  if (!state.u_prev.grid().same_shape(g) || !lap.grid().same_shape(g) ||
      !source.grid().same_shape(g) || !velocity.grid().same_shape(g)) {
    throw ConfigError("leapfrog_step: fields do not share one grid");
  }
  const double tau2 = state.tau * state.tau;
  const auto nu2 = velocity.speed_squared_interior().values();
  const auto uc = state.u_curr.values();
  const auto l = lap.values();
  const auto s = source.values();
  auto up = state.u_prev.values();
  // u^{n+1} overwrites u^{n-1} in place, then the pair is swapped.
  for (std::size_t n = 0; n < up.size(); ++n) {
    up[n] = tau2 * (nu2[n] * l[n] + s[n]) + 2.0 * uc[n] - up[n];
  }
  std::swap(state.u_curr, state.u_prev);
  state.t += state.tau;
  ++state.step;
}

StepPlan plan_steps(double t_final, double tau) {
  check_tau(tau);
  if (!(t_final >= 0.0)) throw ConfigError("final time must be non-negative");
  const double ratio = t_final / tau;
  const double nearest = std::round(ratio);
  StepPlan plan;
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    plan.full_steps = static_cast<long>(nearest);
  } else {
    plan.full_steps = static_cast<long>(std::floor(ratio));
    plan.remainder = t_final - plan.full_steps * tau;
  }
  return plan;
}

LeapfrogIntegrator::LeapfrogIntegrator(const ProblemSpec& spec, double tau)
    : spec_(spec), tau_(tau), lap_(spec.grid), lap_buf_(spec.grid), src_buf_(spec.grid) {
  check_tau(tau);
}

StepState LeapfrogIntegrator::initial_state() const {
  return StepState{sample_scalar(spec_.alpha, spec_.grid), ghost_level(spec_, tau_), 0.0, tau_, 0};
}

void LeapfrogIntegrator::laplacian_at(const Field3D& u, double t, Field3D& out) const {
  if (spec_.faces.homogeneous && spec_.source.zero) {
    lap_.apply_homogeneous(u, out);
    return;
  }
  lap_.apply(u, face_values(spec_.faces, spec_.grid, t),
             boundary_closure(spec_.faces, spec_.velocity, spec_.source, t), out);
}

void LeapfrogIntegrator::advance(StepState& state) {
  laplacian_at(state.u_curr, state.t, lap_buf_);
  spec_.source.sample(0, state.t, src_buf_);
  leapfrog_step(state, lap_buf_, spec_.velocity, src_buf_);
  check_finite(state.u_curr, state.step, state.t);
}

void LeapfrogIntegrator::advance_partial(StepState& state, double dt) {
  check_tau(dt);
  laplacian_at(state.u_curr, state.t, lap_buf_);
  spec_.source.sample(0, state.t, src_buf_);
  // a = u_tt(t_n); v = u_t(t_n) to O(tau^2) from the pair; ghost at t_n - dt.
  const auto nu2 = spec_.velocity.speed_squared_interior().values();
  const auto l = lap_buf_.values(), s = src_buf_.values(), uc = state.u_curr.values();
  auto up = state.u_prev.values();
  const double tau = state.tau;
  for (std::size_t n = 0; n < up.size(); ++n) {
    const double a = nu2[n] * l[n] + s[n];
    const double v = (uc[n] - up[n]) / tau + 0.5 * tau * a;
    up[n] = uc[n] - dt * v + 0.5 * dt * dt * a;
  }
  state.tau = dt;
  leapfrog_step(state, lap_buf_, spec_.velocity, src_buf_);
  check_finite(state.u_curr, state.step, state.t);
}

StepState run_leapfrog(const ProblemSpec& spec, double tau, const RunOptions& options) {
  gate_cfl(spec, tau, options.cfl_policy);
  const StepPlan plan = plan_steps(spec.t_final, tau);
  LeapfrogIntegrator integrator(spec, tau);
  StepState state = integrator.initial_state();
  const long every = std::max(1L, options.observe_every);
  auto observe = [&] {
    if (options.observer) options.observer(state.step, state.t, state.u_curr);
  };
  observe();
  for (long n = 0; n < plan.full_steps; ++n) {
    integrator.advance(state);
    if (state.step % every == 0) observe();
  }
  const bool partial = plan.remainder > 0.0;
  if (partial) integrator.advance_partial(state, plan.remainder);
  state.t = spec.t_final;
  if (partial || state.step % every != 0) observe();
  return state;
}

Field3D richardson_extrapolate(const Field3D& coarse, const Field3D& fine, int order) {
  if (!coarse.grid().same_shape(fine.grid())) {
    throw ConfigError("richardson_extrapolate: grids differ");
  }
  if (order < 2) throw ConfigError("richardson_extrapolate: order must be >= 2");
  const double w = std::ldexp(1.0, order);
  Field3D out(coarse.grid());
  auto o = out.values();
  const auto c = coarse.values(), f = fine.values();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = (w * f[n] - c[n]) / (w - 1.0);
  return out;
}

Field3D run_richardson(const ProblemSpec& spec, double tau, const RunOptions& options) {
  RunOptions quiet = options;
  quiet.observer = nullptr;
  const StepState coarse = run_leapfrog(spec, tau, quiet);
  const StepState fine = run_leapfrog(spec, 0.5 * tau, quiet);
  return richardson_extrapolate(coarse.u_curr, fine.u_curr, 2);
}

FacePlanes face_source(const SourceTerm& source, const Grid& grid, double t, int d) {
  FacePlanes out(grid);
  if (source.zero) return out;
  for (Face f : kFaces) {
    const auto tang = tangential_axes(f);
    const Axis n = normal_axis(f);
    const double c = is_upper(f) ? grid.domain().upper(n) : grid.domain().lower(n);
    for (int q = 1; q <= grid.n(tang[1]); ++q) {
      for (int p = 1; p <= grid.n(tang[0]); ++p) {
        std::array<double, 3> pt{};
        pt[static_cast<int>(n)] = c;
        pt[static_cast<int>(tang[0])] = grid.coord(tang[0], p);
        pt[static_cast<int>(tang[1])] = grid.coord(tang[1], q);
        out.at(f, p, q) = source.at(d, t, pt[0], pt[1], pt[2]);
      }
    }
  }
  return out;
}

RkStageBoundary rk_boundary_values(const FaceData& faces, const SourceTerm& source,
                                   const VelocityModel& velocity, double t_n, double tau) {
  const Grid& g = velocity.grid();
  RkStageBoundary out{FacePlanes(g), FacePlanes(g), FacePlanes(g), FacePlanes(g), FacePlanes(g),
                      FacePlanes(g), FacePlanes(g), FacePlanes(g), FacePlanes(g)};
  if (faces.homogeneous && source.zero) return out;
  if (!faces.homogeneous && faces.max_time_derivative() < 3) {
    throw ConfigError("RK4 boundary values need the third time derivative of the face data");
  }
  const FacePlanes j1 = face_values(faces, g, t_n, 1);
  const FacePlanes j2 = face_values(faces, g, t_n, 2);
  const FacePlanes j3 = face_values(faces, g, t_n, 3);
  const FacePlanes s0 = face_source(source, g, t_n, 0);
  const FacePlanes s1 = face_source(source, g, t_n, 1);
  const FacePlanes s_half = face_source(source, g, t_n + 0.5 * tau, 0);

  // K11 = u_t, K12 = u_tt on the faces.
  out.k11 = j1;
  out.k12 = j2;
  out.k21 = j1;
  out.k21.add_scaled(0.5 * tau, j2);
  // nu^2 Lap K11 = d_t (u_tt - s) = d_t^3 f - d_t s.
  out.nu2_lap_k11 = j3;
  out.nu2_lap_k11.add_scaled(-1.0, s1);
  // K22 = nu^2 Lap u + tau/2 nu^2 Lap K11 + s(t_n + tau/2).
  out.k22 = j2;
  out.k22.add_scaled(-1.0, s0);
  out.k22.add_scaled(0.5 * tau, out.nu2_lap_k11);
  out.k22.add_scaled(1.0, s_half);
  out.k31 = j1;
  out.k31.add_scaled(0.5 * tau, out.k22);

  // Closures: second normal derivatives of d_t^d u are N_d; K21 ~ u_t + tau/2
  // u_tt and K31 ~ u_t + tau/2 u_tt + tau^2/4 u_ttt on the faces.
  const FacePlanes n1 = boundary_closure(faces, velocity, source, t_n, 1);
  const FacePlanes n2 = boundary_closure(faces, velocity, source, t_n, 2);
  const FacePlanes n3 = boundary_closure(faces, velocity, source, t_n, 3);
  out.closure_k11 = n1;
  out.closure_k21 = n1;
  out.closure_k21.add_scaled(0.5 * tau, n2);
  out.closure_k31 = out.closure_k21;
  out.closure_k31.add_scaled(0.25 * tau * tau, n3);
  return out;
}

Rk4Integrator::Rk4Integrator(const ProblemSpec& spec)
    : spec_(spec),
      lap_(spec.grid),
      a0_(spec.grid),
      k2_(spec.grid),
      lap_k_(spec.grid),
      stage_(spec.grid),
      src_(spec.grid),
      acc_u_(spec.grid),
      acc_v_(spec.grid) {}

RKState Rk4Integrator::initial_state() const {
  return RKState{sample_scalar(spec_.alpha, spec_.grid), sample_scalar(spec_.beta, spec_.grid),
                 0.0, 0};
}

void Rk4Integrator::step(RKState& state, double tau) {
  check_tau(tau);
  const Grid& g = spec_.grid;
  const bool homogeneous = spec_.faces.homogeneous && spec_.source.zero;
  const double t = state.t;
  const auto nu2 = spec_.velocity.speed_squared_interior().values();
  const std::size_t size = g.interior_size();

  auto lap = [&](const Field3D& u, const FacePlanes* dirichlet, const FacePlanes* closure,
                 Field3D& out) {
    if (homogeneous) {
      lap_.apply_homogeneous(u, out);
    } else {
      lap_.apply(u, *dirichlet, *closure, out);
    }
  };

  RkStageBoundary bc;
  FacePlanes d0, n0;
  if (!homogeneous) {
    bc = rk_boundary_values(spec_.faces, spec_.source, spec_.velocity, t, tau);
    d0 = face_values(spec_.faces, g, t, 0);
    n0 = boundary_closure(spec_.faces, spec_.velocity, spec_.source, t, 0);
  }

  // a0 = nu^2 Lap u^n, shared by every K_{l,2}.
  lap(state.u, &d0, &n0, a0_);
  auto a0 = a0_.values();
  for (std::size_t n = 0; n < size; ++n) a0[n] *= nu2[n];

  auto u = state.u.values();
  auto v = state.v.values();
  auto k2 = k2_.values();
  auto lk = lap_k_.values();
  auto st = stage_.values();
  auto s = src_.values();
  auto au = acc_u_.values();
  auto av = acc_v_.values();

  // Stage 1: K11 = v, K12 = a0 + s(t).
  spec_.source.sample(0, t, src_);
  for (std::size_t n = 0; n < size; ++n) {
    k2[n] = a0[n] + s[n];
    au[n] = v[n];
    av[n] = k2[n];
  }

  // Stages 2-4: K_{l,1} = v + c tau K_{l-1,2};
  //             K_{l,2} = a0 + c tau nu^2 Lap K_{l-1,1} + s(t + c tau).
  // stage_ holds K_{l-1,1}, whose Laplacian enters K_{l,2}.
  struct Stage {
    double c;
    double weight;
    const FacePlanes* dirichlet;  // of K_{l-1,1}
    const FacePlanes* closure;
  };
  const Stage stages[3] = {{0.5, 2.0, &bc.k11, &bc.closure_k11},
                           {0.5, 2.0, &bc.k21, &bc.closure_k21},
                           {1.0, 1.0, &bc.k31, &bc.closure_k31}};
  std::copy(v.begin(), v.end(), st.begin());  // K11
  for (const Stage& sg : stages) {
    lap(stage_, sg.dirichlet, sg.closure, lap_k_);
    spec_.source.sample(0, t + sg.c * tau, src_);
    const double ct = sg.c * tau;
    for (std::size_t n = 0; n < size; ++n) {
      const double k_next1 = v[n] + ct * k2[n];            // K_{l,1}
      const double k_next2 = a0[n] + ct * nu2[n] * lk[n] + s[n];  // K_{l,2}
      st[n] = k_next1;
      k2[n] = k_next2;
      au[n] += sg.weight * k_next1;
      av[n] += sg.weight * k_next2;
    }
  }

  const double w = tau / 6.0;
  for (std::size_t n = 0; n < size; ++n) {
    u[n] += w * au[n];
    v[n] += w * av[n];
  }
  state.t += tau;
  ++state.step;
  if (!state.u.all_finite() || !state.v.all_finite()) throw InstabilityError(state.step, state.t);
}

void rk4_step(RKState& state, const ProblemSpec& spec, double tau) {
  Rk4Integrator(spec).step(state, tau);
}

RKState run_rk4(const ProblemSpec& spec, double tau, const RunOptions& options) {
  // The leapfrog bound stands in for RK4, which has no proven limit, so a
  // violation only warns.
  gate_cfl(spec, tau, CflPolicy::warn);
  const StepPlan plan = plan_steps(spec.t_final, tau);
  Rk4Integrator integrator(spec);
  RKState state = integrator.initial_state();
  const long every = std::max(1L, options.observe_every);
  auto observe = [&] {
    if (options.observer) options.observer(state.step, state.t, state.u);
  };
  observe();
  for (long n = 0; n < plan.full_steps; ++n) {
    integrator.step(state, tau);
    if (state.step % every == 0) observe();
  }
  const bool partial = plan.remainder > 0.0;
  if (partial) integrator.step(state, plan.remainder);
  state.t = spec.t_final;
  if (partial || state.step % every != 0) observe();
  return state;
}

}  // namespace compactwave
