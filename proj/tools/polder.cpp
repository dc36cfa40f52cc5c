// Command-line front end: computes permittivity tables, Casimir-Polder
// level shifts, normalized lifetimes, retardation coefficients, and runs
// the built-in propagator verification suite.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polder/cli_commands.hpp"
#include "polder/propagator.hpp"
#include "polder/errors.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 numerical non-convergence,
// 4 verification failure.
constexpr int kExitConfig = 2;
constexpr int kExitNumerics = 3;
constexpr int kExitVerify = 4;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format; // override, empty = from config
  double tol = 0.0;   // override, 0 = from config
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Path to the JSON config")
      ->required();
  cmd->add_option("--out", flags.out_path, "Output path (default: stdout)");
  cmd->add_option("--format", flags.format, "Output format: csv or json");
  cmd->add_option("--tol", flags.tol, "Relative quadrature tolerance");
  cmd->add_option("--jobs", flags.jobs, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);
}

polder::RunConfig load(const CommonFlags& flags) {
  polder::RunConfig cfg = polder::load_run_config(flags.config_path);
  if (!flags.format.empty()) {
    if (flags.format != "csv" && flags.format != "json")
      throw polder::ConfigError("--format must be csv or json");
    cfg.format = flags.format;
  }
  if (flags.tol > 0.0) {
    cfg.quadrature.rel_tol = flags.tol;
    cfg.quadrature.validate();
  }
  return cfg;
}

void emit(const polder::Table& table, const polder::RunConfig& cfg,
          const CommonFlags& flags) {
  if (flags.out_path.empty()) {
    polder::write_table(table, cfg.format, std::cout);
    return;
  }
  std::ofstream out(flags.out_path);
  if (!out)
    throw polder::ConfigError("cannot open output file " + flags.out_path);
  polder::write_table(table, cfg.format, out);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir-Polder shifts and decay rates near an absorbing "
               "dielectric half-space"};
  app.require_subcommand(1);

  CommonFlags flags;
  bool corrupt_branch = false;

  CLI::App* cmd_medium =
      app.add_subcommand("medium", "Permittivity tables over a frequency grid");
  add_common(cmd_medium, flags);

  CLI::App* cmd_shift =
      app.add_subcommand("shift", "Level shift and rate change vs distance");
  add_common(cmd_shift, flags);
  std::string dump_path;
  cmd_shift->add_option(
      "--dump-integrand", dump_path,
      "Debug: write equal-point integrand samples (CSV) for the first "
      "distance and the strongest transition frequency");

  CLI::App* cmd_rates =
      app.add_subcommand("rates", "Normalized lifetime vs transition frequency");
  add_common(cmd_rates, flags);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "Run the propagator verification suites");
  add_common(cmd_verify, flags);
  cmd_verify
      ->add_flag("--corrupt-branch", corrupt_branch,
                 "Test hook: flip the medium root branch (must fail)")
      ->group(""); // hidden

  CLI::App* cmd_coeffs = app.add_subcommand(
      "coefficients", "Retardation coefficients c4, c5 over an index grid");
  add_common(cmd_coeffs, flags);

  CLI::App* cmd_dyson = app.add_subcommand(
      "dyson", "Numeric Dyson factor vs its closed form on a point sample");
  add_common(cmd_dyson, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    const polder::RunConfig cfg = load(flags);
    if (cmd_medium->parsed()) {
      emit(polder::build_medium_table(cfg), cfg, flags);
    } else if (cmd_shift->parsed()) {
      if (!dump_path.empty() && cfg.distances && cfg.has_atom) {
        double w_scale = 1.0;
        const int n = cfg.atom.n_levels();
        for (int i = 0; i < n; ++i)
          for (int m = i + 1; m < n; ++m) {
            const auto d = cfg.atom.dipole_sq(i, m);
            if (d.par + d.perp > 0.0)
              w_scale = std::abs(cfg.atom.level(m).omega -
                                 cfg.atom.level(i).omega);
          }
        polder::dump_reflected_integrand(
            cfg.medium, cfg.distances->points().front(), w_scale, 400,
            dump_path);
      }
      emit(polder::build_shift_table(cfg, flags.jobs), cfg, flags);
    } else if (cmd_rates->parsed()) {
      emit(polder::build_rates_table(cfg, flags.jobs), cfg, flags);
    } else if (cmd_coeffs->parsed()) {
      emit(polder::build_coefficients_table(cfg), cfg, flags);
    } else if (cmd_dyson->parsed()) {
      emit(polder::build_dyson_table(cfg), cfg, flags);
    } else if (cmd_verify->parsed()) {
      bool passed = false;
      const polder::Table table =
          polder::build_verify_table(cfg, corrupt_branch, &passed);
      emit(table, cfg, flags);
      if (!passed) {
        std::cerr << "polder: verification FAILED\n";
        return kExitVerify;
      }
      std::cerr << "polder: verification passed\n";
    }
  } catch (const polder::ConfigError& e) {
    std::cerr << "polder: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const polder::QuadratureError& e) {
    std::cerr << "polder: numerical error: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const polder::ConvergenceError& e) {
    std::cerr << "polder: numerical error: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const polder::Error& e) {
    std::cerr << "polder: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
