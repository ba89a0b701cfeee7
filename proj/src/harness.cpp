#include "compactwave/harness.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "compactwave/errors.hpp"

namespace compactwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAnalyticDerivatives = 64;

const Domain kUnitCube{0.0, 1.0, 0.0, 1.0, 0.0, 1.0};

double example1_nu2(double x, double y, double z) {
  return 1.0 / ((x - 0.5) * (y - 0.5) * (z - 0.5) + 1.0 / 6.0);
}

double axis_factor(Axis axis) {
  switch (axis) {
    case Axis::x:
      return 1.0;
    case Axis::y:
      return 2.0;
    case Axis::z:
      return 3.0;
  }
  return 0.0;
}

}  // namespace

int unit_cube_nodes(double h) {
  if (!(h > 0.0) || h >= 0.5) throw ConfigError("spacing must lie in (0, 0.5)");
  const double cells = 1.0 / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-6 * rounded) {
    throw ConfigError("spacing must divide the unit interval");
  }
  return static_cast<int>(rounded) - 1;
}

ProblemSpec example1_spec(int n, double t_final) {
  ProblemSpec spec;
  spec.name = "example1";
  spec.grid = build_grid(kUnitCube, n, n, n);
  spec.velocity = VelocityModel(spec.grid, [](double x, double y, double z) {
    return std::sqrt(example1_nu2(x, y, z));
  });

  SolutionJet jet;
  jet.value = [](int d, double t, double x, double y, double z) {
    return std::ldexp(1.0, d) * std::exp(2.0 * t + x + 2.0 * y + 3.0 * z);
  };
  jet.d2 = [](int d, Axis axis, double t, double x, double y, double z) {
    const double c = axis_factor(axis);
    return c * c * std::ldexp(1.0, d) * std::exp(2.0 * t + x + 2.0 * y + 3.0 * z);
  };
  jet.max_time_derivative = kAnalyticDerivatives;
  spec.faces = FaceData::from_solution(kUnitCube, jet);

  spec.source = SourceTerm::from_function(
      [](int d, double t, double x, double y, double z) {
        return (4.0 - 14.0 * example1_nu2(x, y, z)) * std::ldexp(1.0, d) *
               std::exp(2.0 * t + x + 2.0 * y + 3.0 * z);
      },
      kAnalyticDerivatives);
  spec.alpha = [](double x, double y, double z) { return std::exp(x + 2.0 * y + 3.0 * z); };
  spec.beta = [](double x, double y, double z) { return 2.0 * std::exp(x + 2.0 * y + 3.0 * z); };
  spec.laplacian_alpha = [](double x, double y, double z) {
    return 14.0 * std::exp(x + 2.0 * y + 3.0 * z);
  };
  spec.laplacian_beta = [](double x, double y, double z) {
    return 28.0 * std::exp(x + 2.0 * y + 3.0 * z);
  };
  spec.exact = [](double t, double x, double y, double z) {
    return std::exp(2.0 * t + x + 2.0 * y + 3.0 * z);
  };
  spec.t_final = t_final;
  return spec;
}

ProblemSpec example2_spec(int n, double t_final) {
  ProblemSpec spec;
  spec.name = "example2";
  spec.grid = build_grid(kUnitCube, n, n, n);
  spec.velocity = VelocityModel(spec.grid, [](double x, double y, double z) {
    return std::sqrt(1.0 + x * y * z);
  });
  spec.faces = FaceData::zero();
  auto shape = [](double x, double y, double z) {
    return std::sin(kPi * x) * std::sin(kPi * y) * std::sin(kPi * z);
  };
  spec.source = SourceTerm::from_function(
      [shape](int d, double t, double x, double y, double z) {
        return (4.0 + 3.0 * x * y * z) * kPi * kPi * std::pow(kPi, d) * std::exp(kPi * t) *
               shape(x, y, z);
      },
      kAnalyticDerivatives);
  spec.alpha = shape;
  spec.beta = [shape](double x, double y, double z) { return kPi * shape(x, y, z); };
  spec.laplacian_alpha = [shape](double x, double y, double z) {
    return -3.0 * kPi * kPi * shape(x, y, z);
  };
  spec.laplacian_beta = [shape](double x, double y, double z) {
    return -3.0 * kPi * kPi * kPi * shape(x, y, z);
  };
  spec.exact = [shape](double t, double x, double y, double z) {
    return std::exp(kPi * t) * shape(x, y, z);
  };
  spec.t_final = t_final;
  return spec;
}

RickerSource example3_source() { return RickerSource{10.0, 0.5 / 10.0, 600.0, 600.0, 600.0}; }

double example3_time_step(double h) { return 0.0005 * h / 5.0; }

double example3_expected_arrival() {
  return (kExample3Interface - example3_source().z) / kExample3UpperSpeed;
}

namespace {

ProblemSpec seismic_spec(const std::string& name, const Grid& grid, VelocityModel velocity,
                         const RickerSource& src, double t_final) {
  ProblemSpec spec;
  spec.name = name;
  spec.grid = grid;
  spec.velocity = std::move(velocity);
  spec.source = point_source_term(src, grid);
  spec.faces = FaceData::zero();
  spec.alpha = [](double, double, double) { return 0.0; };
  spec.beta = spec.alpha;
  spec.laplacian_alpha = spec.alpha;
  spec.laplacian_beta = spec.alpha;
  spec.t_final = t_final;
  return spec;
}

}  // namespace

ProblemSpec example3_spec(double h, double t_final) {
  const Domain domain{0.0, 1200.0, 0.0, 1200.0, 0.0, 1350.0};
  const Grid grid = build_grid_with_spacing(domain, h);
  const LayeredVelocity layers{kExample3Interface, kExample3UpperSpeed, 2500.0};
  return seismic_spec("example3", grid, layered_velocity(layers, grid), example3_source(),
                      t_final);
}

ErrorReport error_norms(const Field3D& numerical, const SpaceTimeFunction& exact, double t) {
  if (!exact) throw ConfigError("error_norms: no exact solution available");
  const Grid& g = numerical.grid();
  ErrorReport r;
  double sum_sq = 0.0;
  for (int k = 1; k <= g.nz(); ++k)
    for (int j = 1; j <= g.ny(); ++j)
      for (int i = 1; i <= g.nx(); ++i) {
        const double e = numerical(i, j, k) - exact(t, g.x(i), g.y(j), g.z(k));
        r.e_max = std::max(r.e_max, std::abs(e));
        sum_sq += e * e;
      }
  r.e_energy = std::sqrt(g.h(Axis::x) * g.h(Axis::y) * g.h(Axis::z) * sum_sq);
  r.h = g.h(Axis::x);
  r.t = t;
  return r;
}

double convergence_order(double e1, double e2, double h1, double h2) {
  if (!(e1 > 0.0) || !(e2 > 0.0)) throw ConfigError("convergence_order: errors must be positive");
  if (!(h1 > 0.0) || !(h2 > 0.0) || h1 == h2) {
    throw ConfigError("convergence_order: spacings must be positive and distinct");
  }
  return std::log(e1 / e2) / std::log(h1 / h2);
}

Integrator parse_integrator(const std::string& name) {
  if (name == "leapfrog") return Integrator::leapfrog;
  if (name == "leapfrog+re" || name == "re" || name == "richardson") return Integrator::richardson;
  if (name == "rk4") return Integrator::rk4;
  throw ConfigError("unknown integrator '" + name + "' (expected leapfrog, leapfrog+re or rk4)");
}

std::string integrator_name(Integrator integrator) {
  switch (integrator) {
    case Integrator::leapfrog:
      return "leapfrog";
    case Integrator::richardson:
      return "leapfrog+re";
    case Integrator::rk4:
      return "rk4";
  }
  return "?";
}

Field3D solve(const ProblemSpec& spec, double tau, Integrator integrator,
              const RunOptions& options) {
  switch (integrator) {
    case Integrator::leapfrog:
      return run_leapfrog(spec, tau, options).u_curr;
    case Integrator::richardson:
      return run_richardson(spec, tau, options);
    case Integrator::rk4:
      return run_rk4(spec, tau, options).u;
  }
  throw ConfigError("unknown integrator");
}

namespace {

ProblemSpec unit_cube_example(const std::string& example, int n, double t_final) {
  if (example == "example1") return example1_spec(n, t_final);
  if (example == "example2") return example2_spec(n, t_final);
  throw ConfigError("convergence studies need example1 or example2, got '" + example + "'");
}

double tau_for(TauRule rule, double h, double fixed_tau) {
  switch (rule) {
    case TauRule::h_squared:
      return h * h;
    case TauRule::h_over_10:
      return h / 10.0;
    case TauRule::fixed:
      return fixed_tau;
  }
  return fixed_tau;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

}  // namespace

std::vector<ConvergenceRow> convergence_sweep(const std::string& example,
                                              const std::vector<double>& h_list, TauRule rule,
                                              double fixed_tau, double t_final,
                                              Integrator integrator, CflPolicy policy) {
  if (h_list.empty()) throw ConfigError("convergence sweep: empty spacing list");
  std::vector<ConvergenceRow> rows;
  RunOptions options;
  options.cfl_policy = policy;
  for (double h : h_list) {
    const ProblemSpec spec = unit_cube_example(example, unit_cube_nodes(h), t_final);
    const double tau = tau_for(rule, spec.grid.h(Axis::x), fixed_tau);
    ConvergenceRow row;
    row.example = example;
    row.integrator = integrator;
    row.stability = cfl_check(spec.velocity, tau);
    const Field3D u = solve(spec, tau, integrator, options);
    row.report = error_norms(u, spec.exact, spec.t_final);
    row.report.tau = tau;
    if (!rows.empty()) {
      const ErrorReport& prev = rows.back().report;
      row.report.order_max = convergence_order(prev.e_max, row.report.e_max, prev.h, row.report.h);
      row.report.order_energy =
          convergence_order(prev.e_energy, row.report.e_energy, prev.h, row.report.h);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os << "example,integrator,h,tau,t_final,e_max,e_energy,order_max,order_energy\n";
  for (const auto& row : rows) {
    const ErrorReport& r = row.report;
    os << row.example << ',' << integrator_name(row.integrator) << ',' << sci(r.h) << ','
       << sci(r.tau) << ',' << sci(r.t) << ',' << sci(r.e_max) << ',' << sci(r.e_energy) << ','
       << (r.order_max ? sci(*r.order_max) : "") << ','
       << (r.order_energy ? sci(*r.order_energy) : "") << '\n';
  }
  return os.str();
}

Slice snapshot_slice(const Field3D& field, const FaceData& faces, Axis axis, int index, double t) {
  const Grid& g = field.grid();
  if (index < 0 || index > g.n(axis) + 1) {
    throw ConfigError("snapshot_slice: index out of range");
  }
  Axis row_axis = Axis::y, col_axis = Axis::z;
  if (axis == Axis::y) row_axis = Axis::x;
  if (axis == Axis::z) {
    row_axis = Axis::x;
    col_axis = Axis::y;
  }
  Slice s;
  s.axis = axis;
  s.index = index;
  s.t = t;
  s.rows = g.n(row_axis) + 2;
  s.cols = g.n(col_axis) + 2;
  s.h_rows = g.h(row_axis);
  s.h_cols = g.h(col_axis);
  s.values.assign(static_cast<std::size_t>(s.rows) * s.cols, 0.0);

  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      std::array<int, 3> node{};
      node[static_cast<int>(axis)] = index;
      node[static_cast<int>(row_axis)] = r;
      node[static_cast<int>(col_axis)] = c;
      double value = 0.0;
      bool interior = true;
      for (Axis a : kAxes) {
        const int idx = node[static_cast<int>(a)];
        if (idx == 0 || idx == g.n(a) + 1) {
          interior = false;
          if (!faces.homogeneous) {
            const Face f = static_cast<Face>(2 * static_cast<int>(a) + (idx == 0 ? 0 : 1));
            const auto tang = tangential_axes(f);
            value = faces[f].value(0, t, g.coord(tang[0], node[static_cast<int>(tang[0])]),
                                   g.coord(tang[1], node[static_cast<int>(tang[1])]));
          }
          break;
        }
      }
      if (interior) value = field(node[0], node[1], node[2]);
      s.values[static_cast<std::size_t>(r) * s.cols + c] = value;
    }
  }
  return s;
}

std::filesystem::path write_slice(const Slice& slice, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  char stem[128];
  std::snprintf(stem, sizeof stem, "slice_%c%d_t%.6f", axis_name(slice.axis), slice.index, slice.t);
  const auto data_path = dir / (std::string(stem) + ".f32");
  const auto meta_path = dir / (std::string(stem) + ".meta");

  std::ofstream data(data_path, std::ios::binary);
  if (!data) throw std::runtime_error("cannot open " + data_path.string());
  for (double v : slice.values) {
    auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    if constexpr (std::endian::native == std::endian::big) {
      bits = (bits >> 24) | ((bits >> 8) & 0xff00u) | ((bits << 8) & 0xff0000u) | (bits << 24);
    }
    data.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!data) throw std::runtime_error("write failed: " + data_path.string());

  const char row_axis = slice.axis == Axis::x ? 'y' : 'x';
  const char col_axis = slice.axis == Axis::z ? 'y' : 'z';
  std::ofstream meta(meta_path);
  meta.precision(15);
  meta << "t = " << slice.t << '\n'
       << "axis = " << axis_name(slice.axis) << '\n'
       << "index = " << slice.index << '\n'
       << "rows = " << slice.rows << '\n'
       << "cols = " << slice.cols << '\n'
       << "row_axis = " << row_axis << '\n'
       << "col_axis = " << col_axis << '\n'
       << "h_rows = " << slice.h_rows << '\n'
       << "h_cols = " << slice.h_cols << '\n'
       << "dtype = float32\n"
       << "byte_order = little\n"
       << "layout = row-major\n";
  if (!meta) throw std::runtime_error("write failed: " + meta_path.string());
  return data_path;
}

void ArrivalDetector::observe(double t, const Field3D& u) {
  const Grid& g = u.grid();
  double below = 0.0;
  for (int k = 1; k <= g.nz(); ++k) {
    const bool in_lower = g.z(k) >= interface_z_;
    for (int j = 1; j <= g.ny(); ++j)
      for (int i = 1; i <= g.nx(); ++i) {
        const double a = std::abs(u(i, j, k));
        peak_ = std::max(peak_, a);
        if (in_lower) below = std::max(below, a);
      }
  }
  if (!arrival_ && peak_ > 0.0 && below > threshold_ * peak_) arrival_ = t;
}

SliceSplit split_slice(const Slice& slice, const Grid& grid, double z_split) {
  if (slice.axis == Axis::z) throw ConfigError("split_slice: needs an x or y slice");
  SliceSplit out;
  for (int r = 0; r < slice.rows; ++r)
    for (int c = 0; c < slice.cols; ++c) {
      const double a = std::abs(slice.at(r, c));
      if (grid.z(c) <= z_split) {
        out.max_above = std::max(out.max_above, a);
      } else {
        out.max_below = std::max(out.max_below, a);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration

double parse_spacing(const std::string& text) {
  try {
    const auto slash = text.find('/');
    double value = 0.0;
    std::size_t used = 0;
    if (slash == std::string::npos) {
      value = std::stod(text, &used);
      if (used != text.size()) throw ConfigError("");
    } else {
      const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      std::size_t un = 0, ud = 0;
      const double a = std::stod(num, &un), b = std::stod(den, &ud);
      if (un != num.size() || ud != den.size() || b == 0.0) throw ConfigError("");
      value = a / b;
    }
    if (!(value > 0.0)) throw ConfigError("");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid spacing '" + text + "'");
  }
}

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double positive_number(const json& v, const std::string& what) {
  double value = 0.0;
  if (v.is_number()) {
    value = v.get<double>();
  } else if (v.is_string()) {
    value = parse_spacing(v.get<std::string>());
  } else {
    throw ConfigError(what + ": expected a number");
  }
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(what + ": must be positive");
  return value;
}

Axis parse_axis(const std::string& name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  throw ConfigError("unknown axis '" + name + "'");
}

TauRule parse_tau_rule(const std::string& name) {
  if (name == "h_squared") return TauRule::h_squared;
  if (name == "h_over_10") return TauRule::h_over_10;
  throw ConfigError("unknown tau_rule '" + name + "' (expected h_squared or h_over_10)");
}

std::pair<double, double> parse_interval(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(what + ": expected [min, max]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc,
                 {"problem", "grid", "sweep", "time", "integrator", "cfl_policy", "output_dir",
                  "snapshots", "arrival", "custom"},
                 "config");
  RunConfig cfg;
  try {
    if (!doc.contains("problem")) throw ConfigError("config: 'problem' is required");
    cfg.problem = doc["problem"].get<std::string>();
    if (cfg.problem != "example1" && cfg.problem != "example2" && cfg.problem != "example3" &&
        cfg.problem != "custom") {
      throw ConfigError("config: unknown problem '" + cfg.problem + "'");
    }
    if (cfg.problem == "example3") cfg.t_final = 0.7;

    if (doc.contains("grid")) {
      const json& g = doc["grid"];
      reject_unknown(g, {"h", "n"}, "grid");
      if (g.contains("h") && g.contains("n")) throw ConfigError("grid: give either h or n");
      if (g.contains("h")) cfg.h = positive_number(g["h"], "grid.h");
      if (g.contains("n")) {
        const json& n = g["n"];
        if (!n.is_array() || n.size() != 3) throw ConfigError("grid.n: expected [nx, ny, nz]");
        cfg.n = std::array<int, 3>{n[0].get<int>(), n[1].get<int>(), n[2].get<int>()};
      }
    }
    if (doc.contains("sweep")) {
      const json& s = doc["sweep"];
      reject_unknown(s, {"h"}, "sweep");
      if (!s.contains("h") || !s["h"].is_array()) throw ConfigError("sweep.h: expected a list");
      for (const auto& v : s["h"]) cfg.sweep_h.push_back(positive_number(v, "sweep.h"));
    }
    if (doc.contains("time")) {
      const json& t = doc["time"];
      reject_unknown(t, {"t_final", "tau", "tau_rule"}, "time");
      if (t.contains("t_final")) cfg.t_final = positive_number(t["t_final"], "time.t_final");
      if (t.contains("tau") && t.contains("tau_rule")) {
        throw ConfigError("time: give either tau or tau_rule");
      }
      if (t.contains("tau")) cfg.tau = positive_number(t["tau"], "time.tau");
      if (t.contains("tau_rule")) cfg.tau_rule = parse_tau_rule(t["tau_rule"].get<std::string>());
    }
    if (doc.contains("integrator")) {
      cfg.integrator = parse_integrator(doc["integrator"].get<std::string>());
    }
    if (doc.contains("cfl_policy")) {
      const auto p = doc["cfl_policy"].get<std::string>();
      if (p == "abort") {
        cfg.cfl_policy = CflPolicy::abort;
      } else if (p == "warn") {
        cfg.cfl_policy = CflPolicy::warn;
      } else {
        throw ConfigError("cfl_policy: expected abort or warn");
      }
    }
    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("snapshots")) {
      const json& s = doc["snapshots"];
      reject_unknown(s, {"axis", "index", "times"}, "snapshots");
      SnapshotConfig snap;
      if (s.contains("axis")) snap.axis = parse_axis(s["axis"].get<std::string>());
      if (s.contains("index")) snap.index = s["index"].get<int>();
      if (s.contains("times")) {
        for (const auto& v : s["times"]) snap.times.push_back(v.get<double>());
      }
      cfg.snapshots = snap;
    }
    if (doc.contains("arrival")) {
      const json& a = doc["arrival"];
      reject_unknown(a, {"interface_z", "threshold"}, "arrival");
      if (a.contains("interface_z")) cfg.interface_z = a["interface_z"].get<double>();
      if (a.contains("threshold")) {
        cfg.arrival_threshold = positive_number(a["threshold"], "arrival.threshold");
      }
    }
    if (doc.contains("custom")) {
      const json& c = doc["custom"];
      reject_unknown(c, {"domain", "velocity", "source"}, "custom");
      CustomProblem custom;
      if (!c.contains("domain") || !c.contains("velocity") || !c.contains("source")) {
        throw ConfigError("custom: domain, velocity and source are required");
      }
      const json& d = c["domain"];
      reject_unknown(d, {"x", "y", "z"}, "custom.domain");
      std::tie(custom.domain.x_min, custom.domain.x_max) = parse_interval(d.at("x"), "domain.x");
      std::tie(custom.domain.y_min, custom.domain.y_max) = parse_interval(d.at("y"), "domain.y");
      std::tie(custom.domain.z_min, custom.domain.z_max) = parse_interval(d.at("z"), "domain.z");
      const json& v = c["velocity"];
      reject_unknown(v, {"type", "speed", "interface_z", "upper", "lower"}, "custom.velocity");
      const auto type = v.at("type").get<std::string>();
      if (type == "constant") {
        custom.constant_speed = positive_number(v.at("speed"), "velocity.speed");
      } else if (type == "layered") {
        custom.layered = LayeredVelocity{v.at("interface_z").get<double>(),
                                         positive_number(v.at("upper"), "velocity.upper"),
                                         positive_number(v.at("lower"), "velocity.lower")};
      } else {
        throw ConfigError("custom.velocity.type: expected constant or layered");
      }
      const json& s = c["source"];
      reject_unknown(s, {"x", "y", "z", "peak_frequency", "delay"}, "custom.source");
      custom.source.x = s.at("x").get<double>();
      custom.source.y = s.at("y").get<double>();
      custom.source.z = s.at("z").get<double>();
      custom.source.peak_frequency = positive_number(s.at("peak_frequency"), "peak_frequency");
      custom.source.delay = s.value("delay", 1.0 / (2.0 * custom.source.peak_frequency));
      cfg.custom = custom;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.problem == "custom" && !cfg.custom) throw ConfigError("config: 'custom' block missing");
  if (cfg.problem != "custom" && cfg.custom) {
    throw ConfigError("config: 'custom' block given for a built-in problem");
  }
  return cfg;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

TauRule default_rule(const std::string& problem) {
  return problem == "example2" ? TauRule::h_over_10 : TauRule::h_squared;
}

void run_error_table(const RunConfig& cfg) {
  std::vector<double> h_list = cfg.sweep_h;
  if (h_list.empty()) {
    if (cfg.n) {
      if ((*cfg.n)[0] != (*cfg.n)[1] || (*cfg.n)[1] != (*cfg.n)[2]) {
        throw ConfigError("unit-cube examples need equal node counts per axis");
      }
      h_list.push_back(1.0 / ((*cfg.n)[0] + 1));
    } else {
      h_list.push_back(cfg.h.value_or(0.1));
    }
  }
  const TauRule rule = cfg.tau ? TauRule::fixed : cfg.tau_rule.value_or(default_rule(cfg.problem));
  const auto rows = convergence_sweep(cfg.problem, h_list, rule, cfg.tau.value_or(0.0),
                                      cfg.t_final, cfg.integrator, cfg.cfl_policy);
  write_text(cfg.output_dir / "table.csv", format_table_csv(rows));
  std::string stability;
  for (const auto& row : rows) {
    char header[96];
    std::snprintf(header, sizeof header, "# h = %.14e, tau = %.14e\n", row.report.h,
                  row.report.tau);
    stability += header + format_report(row.stability) + "\n";
  }
  write_text(cfg.output_dir / "stability.txt", stability);
}

void run_seismic(const RunConfig& cfg) {
  if (cfg.integrator == Integrator::richardson) {
    throw ConfigError("Richardson extrapolation only produces a final-time field; "
                      "use leapfrog or rk4 for seismic runs");
  }
  ProblemSpec spec;
  double tau = 0.0;
  std::optional<double> interface_z = cfg.interface_z;
  if (cfg.problem == "example3") {
    const double h = cfg.h.value_or(5.0);
    spec = example3_spec(h, cfg.t_final);
    tau = cfg.tau.value_or(example3_time_step(h));
    if (!interface_z) interface_z = kExample3Interface;
  } else {
    const CustomProblem& c = *cfg.custom;
    Grid grid = cfg.n ? build_grid(c.domain, (*cfg.n)[0], (*cfg.n)[1], (*cfg.n)[2])
                      : build_grid_with_spacing(c.domain, cfg.h.value_or(0.0));
    VelocityModel velocity =
        c.layered ? layered_velocity(*c.layered, grid)
                  : VelocityModel(grid, [s = *c.constant_speed](double, double, double) {
                      return s;
                    });
    spec = seismic_spec("custom", grid, std::move(velocity), c.source, cfg.t_final);
    if (!cfg.tau) throw ConfigError("custom problems need time.tau");
    tau = *cfg.tau;
    if (!interface_z && c.layered) interface_z = c.layered->interface_z;
  }

  const StabilityReport report = cfl_check(spec.velocity, tau);
  write_text(cfg.output_dir / "stability.txt", format_report(report));

  std::optional<ArrivalDetector> detector;
  if (interface_z) detector.emplace(*interface_z, cfg.arrival_threshold);
  std::vector<double> pending;
  Axis axis = Axis::y;
  int index = 0;
  if (cfg.snapshots) {
    pending = cfg.snapshots->times;
    axis = cfg.snapshots->axis;
    if (cfg.snapshots->index) {
      index = *cfg.snapshots->index;
    } else {
      const RickerSource& src = cfg.problem == "example3" ? example3_source() : cfg.custom->source;
      index = nearest_interior_node(src, spec.grid)[static_cast<int>(axis)];
    }
  }

  RunOptions options;
  options.cfl_policy = cfg.cfl_policy;
  options.observer = [&](long, double t, const Field3D& u) {
    if (detector) detector->observe(t, u);
    for (auto it = pending.begin(); it != pending.end();) {
      if (std::abs(t - *it) <= 0.5 * tau) {
        write_slice(snapshot_slice(u, spec.faces, axis, index, t), cfg.output_dir);
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  };
  solve(spec, tau, cfg.integrator, options);

  std::ostringstream table;
  table << "problem,integrator,h,tau,t_final,arrival_time,expected_arrival,running_peak\n";
  table << spec.name << ',' << integrator_name(cfg.integrator) << ',' << sci(spec.grid.h_min())
        << ',' << sci(tau) << ',' << sci(spec.t_final) << ','
        << (detector && detector->arrival_time() ? sci(*detector->arrival_time()) : "") << ','
        << (cfg.problem == "example3" ? sci(example3_expected_arrival()) : "") << ','
        << (detector ? sci(detector->running_peak()) : "") << '\n';
  write_text(cfg.output_dir / "table.csv", table.str());
}

}  // namespace

void run(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  if (cfg.problem == "example1" || cfg.problem == "example2") {
    run_error_table(cfg);
  } else {
    run_seismic(cfg);
  }
}

}  // namespace compactwave
