#pragma once

#include <functional>
#include <memory>

#include "compactwave/compact_laplacian.hpp"
#include "compactwave/grid.hpp"
#include "compactwave/problem.hpp"
#include "compactwave/stability.hpp"

namespace compactwave {

/// Leapfrog pair (u^n, u^{n-1}) at time t_n.
struct StepState {
  Field3D u_curr;
  Field3D u_prev;
  double t = 0.0;
  double tau = 0.0;
  long step = 0;
};

/// First-order system state (u, u_t).
struct RKState {
  Field3D u;
  Field3D v;
  double t = 0.0;
  long step = 0;
};

/// Receives (step index, time, solution) every `observe_every` steps,
/// starting with the initial state, and once more for the final state.
using Observer = std::function<void(long step, double t, const Field3D& u)>;

enum class CflPolicy { abort, warn };

struct RunOptions {
  Observer observer;
  long observe_every = 1;
  CflPolicy cfl_policy = CflPolicy::abort;
};

/// Solution at t = -tau from the Taylor expansion
///   u(-tau) = alpha - tau beta + tau^2/2 (nu^2 Lap alpha + s(0))
///             - tau^3/6 (nu^2 Lap beta + s_t(0)),
/// with analytic Laplacians when the problem provides them and compact ones
/// otherwise.
Field3D ghost_level(const ProblemSpec& spec, double tau);

/// u^{n+1} = tau^2 (nu^2 lap + s) + 2 u^n - u^{n-1}; rotates the pair and
/// advances t by state.tau.
void leapfrog_step(StepState& state, const Field3D& lap, const VelocityModel& velocity,
                   const Field3D& source);

/// Number of full steps of size tau that fit in t_final and the length of
/// the shortened last step (0 when t_final is a multiple of tau).
struct StepPlan {
  long full_steps = 0;
  double remainder = 0.0;
};
StepPlan plan_steps(double t_final, double tau);

/// Leapfrog integration of the whole problem with compact Laplacians, boundary
/// closures recomputed every step. A final partial step restarts the two-level
/// history with a local ghost level at the shortened step.
class LeapfrogIntegrator {
 public:
  LeapfrogIntegrator(const ProblemSpec& spec, double tau);

  StepState initial_state() const;
  /// One step of size dt from the state's current pair (dt == state.tau).
  void advance(StepState& state);
  /// Shortened step: rebuilds u at t - dt from the current pair, then steps.
  void advance_partial(StepState& state, double dt);
  /// Laplacian of u at time t with the problem's face data.
  void laplacian_at(const Field3D& u, double t, Field3D& out) const;

 private:
  const ProblemSpec& spec_;
  double tau_;
  CompactLaplacian lap_;
  Field3D lap_buf_, src_buf_;
};

StepState run_leapfrog(const ProblemSpec& spec, double tau, const RunOptions& options = {});

/// (2^l fine - coarse) / (2^l - 1). Orders above 2 are accepted but only
/// l = 2 matches the leading error term of the leapfrog base scheme.
Field3D richardson_extrapolate(const Field3D& coarse, const Field3D& fine, int order = 2);

/// Leapfrog at tau and tau/2, combined with l = 2.
Field3D run_richardson(const ProblemSpec& spec, double tau, const RunOptions& options = {});

/// Face values of the RK4 stage slopes at t_n, from the wave equation and
/// the time derivatives of the face data. The K_{l,1} planes are Dirichlet
/// data for the stage Laplacians and the closure planes their second normal
/// derivatives.
struct RkStageBoundary {
  FacePlanes k11, k12, k21, k22, k31;
  FacePlanes nu2_lap_k11;
  FacePlanes closure_k11, closure_k21, closure_k31;
};

/// Face values of d^d s / dt^d.
FacePlanes face_source(const SourceTerm& source, const Grid& grid, double t, int d = 0);

RkStageBoundary rk_boundary_values(const FaceData& faces, const SourceTerm& source,
                                   const VelocityModel& velocity, double t_n, double tau);

/// Classical four-stage Runge-Kutta on u_t = v, v_t = nu^2 Lap u + s.
class Rk4Integrator {
 public:
  explicit Rk4Integrator(const ProblemSpec& spec);

  RKState initial_state() const;
  void step(RKState& state, double tau);

 private:
  const ProblemSpec& spec_;
  CompactLaplacian lap_;
  Field3D a0_, k2_, lap_k_, stage_, src_, acc_u_, acc_v_;
};

void rk4_step(RKState& state, const ProblemSpec& spec, double tau);

/// The leapfrog CFL bound is checked but only warns: it is not a proven limit
/// for RK4, so `options.cfl_policy` is ignored here.
RKState run_rk4(const ProblemSpec& spec, double tau, const RunOptions& options = {});

}  // namespace compactwave
