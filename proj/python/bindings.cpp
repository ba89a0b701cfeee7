#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "compactwave/compact_laplacian.hpp"
#include "compactwave/errors.hpp"
#include "compactwave/harness.hpp"
#include "compactwave/physics.hpp"
#include "compactwave/stability.hpp"
#include "compactwave/time_integration.hpp"
#include "compactwave/tridiagonal.hpp"

namespace py = pybind11;
using namespace compactwave;

namespace {

// Interior values as a (nz, ny, nx) array, matching the i-fastest layout.
py::array_t<double> to_numpy(const Field3D& f) {
  const Grid& g = f.grid();
  py::array_t<double> out({g.nz(), g.ny(), g.nx()});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::dict report_dict(const ErrorReport& r) {
  py::dict d;
  d["e_max"] = r.e_max;
  d["e_energy"] = r.e_energy;
  d["h"] = r.h;
  d["tau"] = r.tau;
  d["t"] = r.t;
  d["order_max"] = r.order_max ? py::cast(*r.order_max) : py::none();
  d["order_energy"] = r.order_energy ? py::cast(*r.order_energy) : py::none();
  return d;
}

ProblemSpec example_spec(const std::string& name, int n, double t_final) {
  if (name == "example1") return example1_spec(n, t_final);
  if (name == "example2") return example2_spec(n, t_final);
  throw ConfigError("expected example1 or example2, got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_compactwave, m) {
  m.doc() = "Compact fourth-order acoustic wave solver";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CflError>(m, "CflError", PyExc_RuntimeError);
  py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_RuntimeError);

  py::enum_<Axis>(m, "Axis").value("x", Axis::x).value("y", Axis::y).value("z", Axis::z);

  py::class_<Domain>(m, "Domain")
      .def(py::init([](double x0, double x1, double y0, double y1, double z0, double z1) {
             return Domain{x0, x1, y0, y1, z0, z1};
           }),
           py::arg("x_min") = 0.0, py::arg("x_max") = 1.0, py::arg("y_min") = 0.0,
           py::arg("y_max") = 1.0, py::arg("z_min") = 0.0, py::arg("z_max") = 1.0)
      .def("lower", &Domain::lower)
      .def("upper", &Domain::upper);

  py::class_<Grid>(m, "Grid")
      .def_property_readonly("shape", [](const Grid& g) { return py::make_tuple(g.nx(), g.ny(), g.nz()); })
      .def("n", &Grid::n)
      .def("h", &Grid::h)
      .def("coord", &Grid::coord)
      .def_property_readonly("h_min", &Grid::h_min);
  m.def("build_grid", &build_grid, py::arg("domain"), py::arg("nx"), py::arg("ny"), py::arg("nz"));
  m.def("build_grid_with_spacing", &build_grid_with_spacing, py::arg("domain"), py::arg("h"));

  py::class_<SchemeCoefficients>(m, "SchemeCoefficients")
      .def(py::init<>())
      .def_readwrite("a0", &SchemeCoefficients::a0)
      .def_readwrite("a1", &SchemeCoefficients::a1)
      .def_readwrite("b0", &SchemeCoefficients::b0)
      .def_readwrite("b1", &SchemeCoefficients::b1);

  py::class_<TriDiagToeplitz>(m, "TriDiagToeplitz")
      .def(py::init([](int order, double diag, double offdiag) {
             return TriDiagToeplitz{order, diag, offdiag};
           }),
           py::arg("order"), py::arg("diag"), py::arg("offdiag"))
      .def_readonly("order", &TriDiagToeplitz::order)
      .def_readonly("diag", &TriDiagToeplitz::diag)
      .def_readonly("offdiag", &TriDiagToeplitz::offdiag);
  m.def("matrix_a", &matrix_a, py::arg("coeffs"), py::arg("n"));
  m.def("matrix_b", &matrix_b, py::arg("coeffs"), py::arg("n"));
  m.def("thomas_solve", [](const TriDiagToeplitz& mat, const std::vector<double>& rhs) {
    return thomas_solve(mat, rhs);
  });
  m.def("apply_toeplitz", [](const TriDiagToeplitz& mat, const std::vector<double>& v) {
    return apply_toeplitz(mat, v);
  });
  m.def("toeplitz_spectrum", &toeplitz_spectrum);

  m.def(
      "second_derivative_line",
      [](const std::vector<double>& line, double left_value, double right_value,
         double left_closure, double right_closure, double h) {
        return second_derivative_line(line, left_value, right_value, left_closure, right_closure, h);
      },
      py::arg("line"), py::arg("left_value"), py::arg("right_value"), py::arg("left_closure"),
      py::arg("right_closure"), py::arg("h"));

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("n", &StabilityReport::n)
      .def_readonly("r_n", &StabilityReport::r_n)
      .def_readonly("m", &StabilityReport::m)
      .def_readonly("big_m", &StabilityReport::big_m)
      .def_readonly("cfl_limit", &StabilityReport::cfl_limit)
      .def_readonly("courant", &StabilityReport::courant)
      .def_readonly("margin", &StabilityReport::margin)
      .def_readonly("passed", &StabilityReport::pass)
      .def("__str__", &format_report);
  m.def("cfl_limit", &cfl_limit);
  m.def("r_of_n", &r_of_n, py::arg("n"));
  m.def("cfl_check", py::overload_cast<double, double, double, int>(&cfl_check),
        py::arg("max_speed"), py::arg("tau"), py::arg("h"), py::arg("n"));

  py::class_<RickerSource>(m, "RickerSource")
      .def(py::init([](double f, double delay, double x, double y, double z) {
             return RickerSource{f, delay, x, y, z};
           }),
           py::arg("peak_frequency") = 10.0, py::arg("delay") = 0.05, py::arg("x") = 0.0,
           py::arg("y") = 0.0, py::arg("z") = 0.0)
      .def_readwrite("peak_frequency", &RickerSource::peak_frequency)
      .def_readwrite("delay", &RickerSource::delay);
  m.def("ricker_amplitude", &ricker_amplitude, py::arg("t"), py::arg("source"));
  m.def("ricker_derivative", &ricker_derivative, py::arg("d"), py::arg("t"), py::arg("source"));

  m.def("convergence_order", &convergence_order, py::arg("e1"), py::arg("e2"), py::arg("h1"),
        py::arg("h2"));
  m.def(
      "convergence_sweep",
      [](const std::string& example, const std::vector<double>& h_list, const std::string& rule,
         double t_final, const std::string& integrator, double tau) {
        TauRule r = TauRule::fixed;
        if (rule == "h_squared") {
          r = TauRule::h_squared;
        } else if (rule == "h_over_10") {
          r = TauRule::h_over_10;
        } else if (rule != "fixed") {
          throw ConfigError("tau rule must be h_squared, h_over_10 or fixed");
        }
        py::gil_scoped_release release;
        return convergence_sweep(example, h_list, r, tau, t_final, parse_integrator(integrator));
      },
      py::arg("example"), py::arg("h_list"), py::arg("tau_rule") = "h_squared",
      py::arg("t_final") = 1.0, py::arg("integrator") = "leapfrog", py::arg("tau") = 0.0);
  py::class_<ConvergenceRow>(m, "ConvergenceRow")
      .def_readonly("example", &ConvergenceRow::example)
      .def_property_readonly("integrator",
                             [](const ConvergenceRow& r) { return integrator_name(r.integrator); })
      .def_property_readonly("report", [](const ConvergenceRow& r) { return report_dict(r.report); })
      .def_readonly("stability", &ConvergenceRow::stability);
  m.def("format_table_csv", &format_table_csv);

  m.def(
      "solve_example",
      [](const std::string& name, int n, double tau, const std::string& integrator,
         double t_final) {
        const ProblemSpec spec = example_spec(name, n, t_final);
        Field3D u;
        {
          py::gil_scoped_release release;
          u = solve(spec, tau, parse_integrator(integrator));
        }
        return py::make_tuple(to_numpy(u), report_dict(error_norms(u, spec.exact, t_final)));
      },
      py::arg("example"), py::arg("n"), py::arg("tau"), py::arg("integrator") = "leapfrog",
      py::arg("t_final") = 1.0,
      "Final-time field (nz, ny, nx) and its error report for example1 or example2.");

  m.def("example3_expected_arrival", &example3_expected_arrival);
  m.def("example3_time_step", &example3_time_step, py::arg("h"));
  m.def(
      "run_config",
      [](const std::string& json_text) {
        const RunConfig cfg = parse_run_config(json_text);
        py::gil_scoped_release release;
        run(cfg);
      },
      py::arg("json_text"), "Parse a JSON configuration and execute it.");
}
