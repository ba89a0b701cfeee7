#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "compactwave/grid.hpp"
#include "compactwave/physics.hpp"
#include "compactwave/problem.hpp"
#include "compactwave/stability.hpp"
#include "compactwave/time_integration.hpp"

namespace compactwave {

// ---------------------------------------------------------------------------
// Benchmark problems

/// u = e^{2t} e^{x+2y+3z} on the unit cube with
/// nu^2 = 1 / ((x-1/2)(y-1/2)(z-1/2) + 1/6) and s = (4 - 14 nu^2) u.
ProblemSpec example1_spec(int n, double t_final = 1.0);

/// u = e^{pi t} sin(pi x) sin(pi y) sin(pi z) on the unit cube with
/// nu^2 = 1 + xyz, zero Dirichlet data and s = (4 + 3xyz) pi^2 u.
ProblemSpec example2_spec(int n, double t_final = 1.0);

/// Two-layer seismic model on [0,1200] x [0,1200] x [0,1350] m: 1200 m/s down
/// to z = 879.75 m, 2500 m/s below, Ricker source (10 Hz, 0.05 s delay) at
/// (600, 600, 600) m, zero Dirichlet walls, quiescent start.
ProblemSpec example3_spec(double h = 5.0, double t_final = 0.7);

inline constexpr double kExample3Interface = 879.75;
inline constexpr double kExample3UpperSpeed = 1200.0;
RickerSource example3_source();
/// Time step at spacing h keeping the reference ratio 0.0005 s per 5 m.
double example3_time_step(double h);
/// Straight-line travel time from the source to the interface in the upper layer.
double example3_expected_arrival();

/// Interior node count per axis of the unit cube at spacing h.
int unit_cube_nodes(double h);

// ---------------------------------------------------------------------------
// Errors and convergence

struct ErrorReport {
  double e_max = 0.0;
  double e_energy = 0.0;  // sqrt(h_x h_y h_z sum e^2)
  double h = 0.0;
  double tau = 0.0;
  double t = 0.0;
  std::optional<double> order_max;
  std::optional<double> order_energy;
};

ErrorReport error_norms(const Field3D& numerical, const SpaceTimeFunction& exact, double t);

/// log(E1 / E2) / log(h1 / h2).
double convergence_order(double e1, double e2, double h1, double h2);

enum class Integrator { leapfrog, richardson, rk4 };
Integrator parse_integrator(const std::string& name);
std::string integrator_name(Integrator integrator);

/// Final-time solution of a problem by the chosen integrator.
Field3D solve(const ProblemSpec& spec, double tau, Integrator integrator,
              const RunOptions& options = {});

enum class TauRule { h_squared, h_over_10, fixed };

struct ConvergenceRow {
  std::string example;
  Integrator integrator = Integrator::leapfrog;
  ErrorReport report;
  StabilityReport stability;
};

/// Solves example1/example2 at each spacing and fills in adjacent-row orders.
std::vector<ConvergenceRow> convergence_sweep(const std::string& example,
                                              const std::vector<double>& h_list, TauRule rule,
                                              double fixed_tau, double t_final,
                                              Integrator integrator,
                                              CflPolicy policy = CflPolicy::abort);

/// CSV with 15 significant digits in scientific notation.
std::string format_table_csv(const std::vector<ConvergenceRow>& rows);

// ---------------------------------------------------------------------------
// Snapshots and seismic diagnostics

/// A full plane of the solution including boundary nodes. Values are stored
/// row-major with shape (rows, cols); for an x-slice rows run along y and
/// cols along z, for y along x and z, for z along x and y.
struct Slice {
  Axis axis = Axis::y;
  int index = 0;
  double t = 0.0;
  int rows = 0, cols = 0;
  double h_rows = 0.0, h_cols = 0.0;
  std::vector<double> values;

  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

Slice snapshot_slice(const Field3D& field, const FaceData& faces, Axis axis, int index, double t);

/// Writes slice_<axis><index>_t<time>.f32 (little-endian float32) and a
/// .meta sidecar; returns the path of the .f32 file.
std::filesystem::path write_slice(const Slice& slice, const std::filesystem::path& dir);

/// First time at which |u| at a node with z >= interface_z exceeds
/// `relative_threshold` times the running peak of |u| over the whole grid.
class ArrivalDetector {
 public:
  explicit ArrivalDetector(double interface_z, double relative_threshold = 1e-6)
      : interface_z_(interface_z), threshold_(relative_threshold) {}

  void observe(double t, const Field3D& u);
  std::optional<double> arrival_time() const { return arrival_; }
  double running_peak() const { return peak_; }

 private:
  double interface_z_;
  double threshold_;
  double peak_ = 0.0;
  std::optional<double> arrival_;
};

/// Largest |value| in a slice at nodes with z <= / > z_split (y or x slices).
struct SliceSplit {
  double max_above = 0.0;
  double max_below = 0.0;
};
SliceSplit split_slice(const Slice& slice, const Grid& grid, double z_split);

// ---------------------------------------------------------------------------
// Configured runs

struct SnapshotConfig {
  Axis axis = Axis::y;
  std::optional<int> index;
  std::vector<double> times;
};

struct CustomProblem {
  Domain domain;
  std::optional<double> constant_speed;
  std::optional<LayeredVelocity> layered;
  RickerSource source;
};

struct RunConfig {
  std::string problem = "example1";  // example1 | example2 | example3 | custom
  std::optional<double> h;
  std::optional<std::array<int, 3>> n;
  std::vector<double> sweep_h;
  double t_final = 1.0;
  std::optional<double> tau;
  std::optional<TauRule> tau_rule;
  Integrator integrator = Integrator::leapfrog;
  CflPolicy cfl_policy = CflPolicy::abort;
  std::filesystem::path output_dir = "out";
  std::optional<SnapshotConfig> snapshots;
  std::optional<double> interface_z;
  double arrival_threshold = 1e-6;
  std::optional<CustomProblem> custom;
};

/// Parses a JSON configuration document. Unknown keys are rejected.
RunConfig parse_run_config(const std::string& json_text);

/// Parses "0.1" or "1/15".
double parse_spacing(const std::string& text);

/// Executes a configured run and writes table.csv, stability.txt and any
/// requested slices under config.output_dir.
void run(const RunConfig& config);

}  // namespace compactwave
