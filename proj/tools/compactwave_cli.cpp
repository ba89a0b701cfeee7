#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "compactwave/errors.hpp"
#include "compactwave/harness.hpp"
#include "compactwave/stability.hpp"
#include "compactwave/tridiagonal.hpp"

namespace cw = compactwave;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kCfl = 3, kUnstable = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cw::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

cw::TauRule tau_rule_from(const std::string& name) {
  if (name == "h_squared") return cw::TauRule::h_squared;
  if (name == "h_over_10") return cw::TauRule::h_over_10;
  throw cw::ConfigError("unknown tau rule '" + name + "' (expected h_squared or h_over_10)");
}

cw::CflPolicy policy_from(const std::string& name) {
  if (name == "abort") return cw::CflPolicy::abort;
  if (name == "warn") return cw::CflPolicy::warn;
  throw cw::ConfigError("unknown CFL policy '" + name + "' (expected abort or warn)");
}

void print_list(const char* label, const std::vector<double>& values) {
  std::printf("%s", label);
  for (double v : values) std::printf(" %.14e", v);
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact fourth-order acoustic wave solver"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Execute a JSON run configuration");
  run_cmd->add_option("config", config_path, "Path to the configuration file")->required();

  std::string example;
  std::vector<std::string> h_list;
  double t_final = 1.0;
  std::string integrator = "leapfrog";
  std::string tau_rule;
  double tau = 0.0;
  std::string cfl_policy = "abort";
  std::string out_dir = "out";
  auto* conv = app.add_subcommand("convergence", "Error table for example1 or example2");
  conv->add_option("example", example, "example1 or example2")->required();
  conv->add_option("--h-list", h_list, "Spacings, e.g. 1/10 1/15 1/20")->required();
  conv->add_option("--t-final", t_final, "Final time")->capture_default_str();
  conv->add_option("--integrator", integrator, "leapfrog, leapfrog+re or rk4")
      ->capture_default_str();
  auto* rule_opt = conv->add_option("--tau-rule", tau_rule, "h_squared or h_over_10");
  auto* tau_opt = conv->add_option("--tau", tau, "Fixed time step");
  rule_opt->excludes(tau_opt);
  conv->add_option("--cfl-policy", cfl_policy, "abort or warn")->capture_default_str();
  conv->add_option("--out", out_dir, "Output directory")->capture_default_str();

  int n = 0;
  double stab_tau = 0.0, stab_h = 0.0, vmax = 0.0;
  auto* stab = app.add_subcommand("stability", "CFL report for given parameters");
  stab->set_help_flag("--help", "Print this help message and exit");
  stab->add_option("--n", n, "Interior nodes per axis")->required();
  stab->add_option("--tau", stab_tau, "Time step")->required();
  stab->add_option("--h", stab_h, "Grid spacing")->required();
  stab->add_option("--vmax", vmax, "Largest wave speed")->required();

  int spec_n = 0;
  auto* spectrum = app.add_subcommand("spectrum", "Closed-form spectra of A, B and A^-1 B");
  spectrum->add_option("--n", spec_n, "Matrix order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) {
      cw::run(cw::parse_run_config(read_file(config_path)));
    } else if (*conv) {
      cw::RunConfig cfg;
      cfg.problem = example;
      if (example != "example1" && example != "example2") {
        throw cw::ConfigError("convergence needs example1 or example2");
      }
      for (const auto& h : h_list) cfg.sweep_h.push_back(cw::parse_spacing(h));
      cfg.t_final = t_final;
      cfg.integrator = cw::parse_integrator(integrator);
      if (*tau_opt) cfg.tau = tau;
      if (*rule_opt) cfg.tau_rule = tau_rule_from(tau_rule);
      cfg.cfl_policy = policy_from(cfl_policy);
      cfg.output_dir = out_dir;
      cw::run(cfg);
      std::cout << read_file((cfg.output_dir / "table.csv").string());
    } else if (*stab) {
      if (n < 1 || !(stab_tau > 0.0) || !(stab_h > 0.0) || !(vmax > 0.0)) {
        throw cw::ConfigError("stability: n, tau, h and vmax must be positive");
      }
      std::cout << cw::format_report(cw::cfl_check(vmax, stab_tau, stab_h, n));
    } else if (*spectrum) {
      if (spec_n < 1) throw cw::ConfigError("spectrum: n must be positive");
      const cw::SchemeCoefficients c;
      const auto a = cw::toeplitz_spectrum(cw::matrix_a(c, spec_n));
      const auto b = cw::toeplitz_spectrum(cw::matrix_b(c, spec_n));
      // A and B share eigenvectors and both spectra grow with cos(pi l/(N+1)),
      // so the ascending lists pair up by index.
      std::vector<double> ratio(a.size());
      for (std::size_t l = 0; l < a.size(); ++l) ratio[l] = b[l] / a[l];
      std::printf("n = %d\n", spec_n);
      print_list("sigma_A =", a);
      print_list("sigma_B =", b);
      print_list("sigma_AinvB =", ratio);
      std::printf("r_n = %.14e\n", cw::r_of_n(spec_n));
    }
  } catch (const cw::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const cw::CflError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCfl;
  } catch (const cw::InstabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnstable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
