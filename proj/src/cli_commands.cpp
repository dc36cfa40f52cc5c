#include "polder/cli_commands.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "polder/errors.hpp"
#include "polder/observables.hpp"
#include "polder/optics.hpp"
#include "polder/propagator.hpp"

namespace polder {

namespace {

void echo_config(Table& t, const RunConfig& cfg) {
  t.add_meta("tool", "polder");
  t.add_meta("units", "natural, hbar=c=eps0=1, frequencies in omega_T units");
  t.add_meta("gamma_nudge",
             cfg.medium.gamma == 0.0
                 ? "integrals use gamma = 1e-12 * omega_T (closed forms 0)"
                 : "none");
  t.add_meta("config", cfg.to_json().dump());
}

// Index-parallel sweep with ordered assembly; each worker computes
// independent rows, so the result does not depend on scheduling.
void parallel_rows(int n, int jobs,
                   const std::function<std::vector<double>(int)>& compute,
                   std::vector<std::vector<double>>& rows) {
  rows.assign(static_cast<std::size_t>(n), {});
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = compute(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        rows[static_cast<std::size_t>(i)] = compute(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

GridSpec default_frequency_grid() {
  GridSpec g;
  g.min = 0.0;
  g.max = 3.0;
  g.count = 61;
  return g;
}

int resolve_state(const RunConfig& cfg) {
  if (cfg.mode.is_object() && cfg.mode.contains("state"))
    return cfg.atom.index_of(cfg.mode["state"].get<std::string>());
  return ground_state_index(cfg.atom);
}

} // namespace

Table build_medium_table(const RunConfig& cfg) {
  const GridSpec grid = cfg.frequencies.value_or(default_frequency_grid());

  Table t;
  echo_config(t, cfg);
  t.columns = {"omega",      "eps_re", "eps_im", "eps_imag_axis",
               "n_re",       "n_im"};
  for (double w : grid.points()) {
    const cplx eps = permittivity(cfg.medium, w);
    const cplx n = refractive_index(cfg.medium, w);
    t.rows.push_back({w, eps.real(), eps.imag(),
                      permittivity_imag_axis(cfg.medium, std::abs(w)),
                      n.real(), n.imag()});
  }
  return t;
}

Table build_shift_table(const RunConfig& cfg, int jobs) {
  if (!cfg.has_atom) throw ConfigError("shift: config requires an atom");
  if (!cfg.distances) throw ConfigError("shift: config requires distances");
  const int state = resolve_state(cfg);
  const std::vector<double> zs = cfg.distances->points();

  // Transitions contributing to this state, in level order (mirrors the
  // per-transition breakdown of the observables).
  std::vector<int> partners;
  double w_scale = 0.0;
  for (int m = 0; m < cfg.atom.n_levels(); ++m) {
    if (m == state) continue;
    const DipoleSq d = cfg.atom.dipole_sq(state, m);
    const double w = transition_frequency(cfg.atom, state, m);
    if (d.par + d.perp == 0.0 || w == 0.0) continue;
    partners.push_back(m);
    if (w > 0.0) w_scale = std::max(w_scale, w);
  }

  Table t;
  echo_config(t, cfg);
  t.add_meta("state", cfg.atom.level(state).label);
  t.columns = {"Z",           "nonresidue",  "residue_re",  "residue_im",
               "total_shift", "rate_change", "nonret_form", "ret_c4",
               "ret_c4c5",    "shift_Z4w"};
  const std::string state_label = cfg.atom.level(state).label;
  for (int m : partners) {
    const std::string pair = state_label + ">" + cfg.atom.level(m).label;
    t.columns.push_back("nonres:" + pair);
    t.columns.push_back("res_re:" + pair);
    t.columns.push_back("res_im:" + pair);
  }

  parallel_rows(
      static_cast<int>(zs.size()), jobs,
      [&](int i) -> std::vector<double> {
        const double z = zs[static_cast<std::size_t>(i)];
        const ShiftBreakdown sb =
            total_shift_and_rate(cfg.medium, cfg.atom, state, z,
                                 cfg.quadrature);
        double nonret = 0.0, ret_c4 = 0.0, ret_c4c5 = 0.0;
        const bool is_ground = state == ground_state_index(cfg.atom);
        if (is_ground) {
          nonret = ground_shift_nonretarded(cfg.medium, cfg.atom, z,
                                            cfg.quadrature);
          ret_c4c5 =
              ground_shift_retarded_asymptotic(cfg.medium, cfg.atom, z);
          LorentzMedium lossless = cfg.medium;
          lossless.gamma = 0.0;
          ret_c4 = ground_shift_retarded_asymptotic(lossless, cfg.atom, z);
        } else {
          nonret = excited_residue_nonretarded(cfg.medium, cfg.atom, state, z)
                       .real();
        }
        const double scaled =
            w_scale > 0.0 ? sb.total_shift * std::pow(z, 4) * w_scale : 0.0;
        std::vector<double> row{z,
                                sb.nonresidue,
                                sb.residue.real(),
                                sb.residue.imag(),
                                sb.total_shift,
                                sb.rate_change,
                                nonret,
                                ret_c4,
                                ret_c4c5,
                                scaled};
        for (std::size_t p = 0; p < partners.size(); ++p) {
          const TransitionContribution& c = sb.per_transition[p];
          row.push_back(c.nonresidue);
          row.push_back(c.residue.real());
          row.push_back(c.residue.imag());
        }
        return row;
      },
      t.rows);
  return t;
}

Table build_rates_table(const RunConfig& cfg, int jobs) {
  // Normalized inverse lifetime of a two-level, parallel-dipole system
  // swept over the transition frequency; gamma and Z lists come from the
  // mode payload. The ratio is independent of the dipole magnitude.
  std::vector<double> gammas{cfg.medium.gamma};
  std::vector<double> z_values{0.1};
  GridSpec wgrid;
  wgrid.min = 0.05;
  wgrid.max = 5.0;
  wgrid.count = 80;
  if (cfg.mode.is_object()) {
    if (cfg.mode.contains("gammas"))
      gammas = cfg.mode["gammas"].get<std::vector<double>>();
    if (cfg.mode.contains("Z_values"))
      z_values = cfg.mode["Z_values"].get<std::vector<double>>();
    if (cfg.mode.contains("omega_grid")) {
      const auto& g = cfg.mode["omega_grid"];
      wgrid.min = g.value("min", wgrid.min);
      wgrid.max = g.value("max", wgrid.max);
      wgrid.count = g.value("count", wgrid.count);
      wgrid.log_scale = g.value("scale", "linear") == std::string("log");
    }
  }
  wgrid.validate();
  const std::vector<double> ws = wgrid.points();

  struct Point {
    double gamma, z, w;
  };
  std::vector<Point> pts;
  for (double g : gammas)
    for (double z : z_values)
      for (double w : ws) pts.push_back({g, z, w});

  Table t;
  echo_config(t, cfg);
  t.columns = {"omega_abs", "gamma", "Z", "tau_inv", "tau_inv_nonret",
               "tau_inv_ret"};
  parallel_rows(
      static_cast<int>(pts.size()), jobs,
      [&](int i) -> std::vector<double> {
        const Point& p = pts[static_cast<std::size_t>(i)];
        LorentzMedium med = cfg.medium;
        med.gamma = p.gamma;
        const AtomModel atom = AtomModel::two_level(p.w, 1.0, 0.0);
        const int e = atom.index_of("e");
        const int g = atom.index_of("g");
        const double rate0 = free_space_rate(atom, e, g);
        const double tau_inv = normalized_lifetime_inverse(
            med, atom, e, g, p.z, cfg.quadrature);
        const double nonret =
            decay_rate_change_nonretarded(med, atom, e, p.z) / rate0;
        const double ret =
            decay_rate_change_retarded(med, atom, e, p.z) / rate0;
        return {p.w, p.gamma, p.z, tau_inv, nonret, ret};
      },
      t.rows);
  return t;
}

Table build_coefficients_table(const RunConfig& cfg) {
  GridSpec grid;
  grid.min = 1.01;
  grid.max = 10.0;
  grid.count = 50;
  if (cfg.frequencies) grid = *cfg.frequencies; // n-grid rides the same keys
  if (cfg.mode.is_object() && cfg.mode.contains("n_grid")) {
    const auto& g = cfg.mode["n_grid"];
    grid.min = g.value("min", grid.min);
    grid.max = g.value("max", grid.max);
    grid.count = g.value("count", grid.count);
    grid.log_scale = g.value("scale", "linear") == std::string("log");
  }
  grid.validate();

  Table t;
  echo_config(t, cfg);
  t.columns = {"n", "c4_par", "c4_perp", "c5_par", "c5_perp"};
  int skipped = 0;
  for (double n : grid.points()) {
    if (!(n > 1.0)) {
      ++skipped;
      continue;
    }
    const CoefficientPair c4 = c4_coefficients(n);
    const CoefficientPair c5 = c5_coefficients(n);
    t.rows.push_back({n, c4.par, c4.perp, c5.par, c5.perp});
  }
  if (skipped > 0)
    t.add_meta("skipped_rows",
               std::to_string(skipped) + " grid points with n <= 1");
  return t;
}

Table build_dyson_table(const RunConfig& cfg) {
  // Factor comparison over a small fixed sample in (omega, q_par).
  Table t;
  echo_config(t, cfg);
  t.columns = {"omega",      "q_par",      "polarization", "numeric_re",
               "numeric_im", "closed_re",  "closed_im",    "rel_error",
               "convergent"};
  const double omegas[] = {0.4, 0.7, 1.3, 2.0};
  const double qs[] = {0.1, 0.5, 1.1};
  for (double w : omegas)
    for (double q : qs) {
      const ConvergenceReport conv = convergence_check(cfg.medium, w, q);
      const FresnelSet f = fresnel_right(cfg.medium, w, q);
      for (Polarization pol : {Polarization::TE, Polarization::TM}) {
        const cplx r = pol == Polarization::TE ? f.r_te : f.r_tm;
        const cplx closed = r * r / (1.0 - r * r);
        const cplx numeric =
            dyson_factor_numeric(cfg.medium, w, q, pol, cfg.quadrature);
        const double rel = std::abs(numeric - closed) /
                           std::max(std::abs(closed), 1e-300);
        t.rows.push_back({w, q, pol == Polarization::TE ? 0.0 : 1.0,
                          numeric.real(), numeric.imag(), closed.real(),
                          closed.imag(), rel, conv.convergent ? 1.0 : 0.0});
      }
    }
  return t;
}

Table build_verify_table(const RunConfig& cfg, bool corrupt_branch,
                         bool* all_passed) {
  const std::vector<VerifySuiteResult> results =
      run_verification(cfg.medium, cfg.quadrature, corrupt_branch);

  Table t;
  echo_config(t, cfg);
  t.columns = {"suite", "points", "max_residual", "tolerance", "pass"};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const VerifySuiteResult& r = results[i];
    t.add_meta("suite_" + std::to_string(i), r.name);
    t.rows.push_back({static_cast<double>(i), static_cast<double>(r.points),
                      r.max_residual, r.tolerance, r.pass ? 1.0 : 0.0});
  }
  if (all_passed) *all_passed = all_pass(results);
  return t;
}

} // namespace polder
