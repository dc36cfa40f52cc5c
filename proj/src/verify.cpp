#include "polder/verify.hpp"

#include <cmath>
#include <random>

#include "polder/errors.hpp"
#include "polder/optics.hpp"
#include "polder/propagator.hpp"

namespace polder {

namespace {

double rel_diff(cplx a, cplx b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

VerifySuiteResult fresnel_suite(const LorentzMedium& medium) {
  VerifySuiteResult r{"fresnel_identity", 0, 0.0, 1e-12, false};
  std::mt19937_64 rng(20240811u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  for (int k = 0; k < 1200; ++k) {
    // The configured medium plus random perturbations around it.
    LorentzMedium med = medium;
    if (k % 3 != 0) {
      med.omega_T = 0.5 + 1.5 * u01(rng);
      med.omega_P = 3.0 * u01(rng);
      med.gamma = 0.01 + 0.4 * med.omega_T * u01(rng);
    }
    const double omega = 0.05 + 3.0 * u01(rng);
    const double q_par = 3.0 * u01(rng);

    const FresnelSet right = fresnel_right(med, omega, q_par);
    const FresnelSet left = fresnel_left(med, omega, q_par);

    const double te = rel_diff(1.0 - right.r_te * right.r_te,
                               right.t_te * left.t_te);
    const double tm = rel_diff(1.0 - right.r_tm * right.r_tm,
                               right.t_tm * left.t_tm);
    const double anti = std::max(std::abs(left.r_te + right.r_te),
                                 std::abs(left.r_tm + right.r_tm));
    r.max_residual = std::max({r.max_residual, te, tm, anti});
    ++r.points;
  }
  r.pass = r.max_residual <= r.tolerance;
  return r;
}

VerifySuiteResult dyson_suite(const LorentzMedium& medium,
                              const QuadratureConfig& quad) {
  VerifySuiteResult r{"dyson_factor", 0, 0.0, 1e-6, false};
  std::mt19937_64 rng(77031u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  while (r.points < 24) {
    LorentzMedium med = medium;
    med.omega_T = 0.6 + u01(rng);
    med.omega_P = 0.3 + 1.4 * u01(rng);
    med.gamma = (0.2 + 0.6 * u01(rng)) * med.omega_T;
    const double omega = 0.2 + 2.0 * u01(rng);
    const double q_par = 0.05 + 1.8 * u01(rng);

    const ConvergenceReport conv = convergence_check(med, omega, q_par);
    if (!conv.convergent) continue;

    const FresnelSet f = fresnel_right(med, omega, q_par);
    for (Polarization pol : {Polarization::TE, Polarization::TM}) {
      const cplx rr = pol == Polarization::TE ? f.r_te : f.r_tm;
      const cplx closed = rr * rr / (1.0 - rr * rr);
      const cplx numeric = dyson_factor_numeric(med, omega, q_par, pol, quad);
      r.max_residual = std::max(r.max_residual, rel_diff(numeric, closed));
    }
    ++r.points;
  }
  r.pass = r.max_residual <= r.tolerance;
  return r;
}

VerifySuiteResult boundary_suite(const LorentzMedium& medium,
                                 bool corrupt_branch) {
  VerifySuiteResult r{"boundary_conditions", 0, 0.0, 1e-8, false};
  std::mt19937_64 rng(400812u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  for (int k = 0; k < 24; ++k) {
    LorentzMedium med = medium;
    if (k % 2) {
      med.omega_T = 0.6 + u01(rng);
      med.omega_P = 0.2 + 1.8 * u01(rng);
      med.gamma = (0.02 + 0.4 * u01(rng)) * med.omega_T;
    }
    const double omega = 0.2 + 2.0 * u01(rng);
    // Mix propagating and evanescent transverse wave numbers.
    const double q_par = (k % 2 ? 1.2 : 0.6) * omega * (0.3 + 0.7 * u01(rng));
    const double zprime = 0.3 + 1.5 * u01(rng);

    r.max_residual = std::max(
        r.max_residual,
        boundary_condition_residual(med, omega, q_par, zprime, corrupt_branch));
    ++r.points;
  }
  r.pass = r.max_residual <= r.tolerance;
  return r;
}

VerifySuiteResult green_suite(const LorentzMedium& medium,
                              const QuadratureConfig& quad) {
  VerifySuiteResult r{"green_relation", 0, 0.0, 1e-8, false};
  std::mt19937_64 rng(90217u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  for (int k = 0; k < 22; ++k) {
    LorentzMedium med = medium;
    if (k % 2) {
      med.omega_T = 0.7 + 0.8 * u01(rng);
      med.omega_P = 0.3 + 1.2 * u01(rng);
      med.gamma = (0.05 + 0.3 * u01(rng)) * med.omega_T;
    }
    const double omega = 0.3 + 1.7 * u01(rng);
    const double z_atom = 0.4 + 2.2 * u01(rng);

    const ReflectedPropagatorDiag d =
        reflected_equal_point(med, z_atom, omega, quad);
    const GreenReflectedDiag g =
        retarded_green_reflected(med, z_atom, omega, quad);
    const double w2 = omega * omega;
    r.max_residual = std::max(
        {r.max_residual, rel_diff(d.d_xx, -w2 * g.g_xx),
         rel_diff(d.d_yy, -w2 * g.g_yy), rel_diff(d.d_zz, -w2 * g.g_zz)});
    ++r.points;
  }
  r.pass = r.max_residual <= r.tolerance;
  return r;
}

} // namespace

std::vector<VerifySuiteResult> run_verification(const LorentzMedium& medium,
                                                const QuadratureConfig& quad,
                                                bool corrupt_branch) {
  std::vector<VerifySuiteResult> out;
  out.push_back(fresnel_suite(medium));
  out.push_back(dyson_suite(medium, quad));
  out.push_back(boundary_suite(medium, corrupt_branch));
  out.push_back(green_suite(medium, quad));
  return out;
}

bool all_pass(const std::vector<VerifySuiteResult>& results) {
  for (const VerifySuiteResult& r : results)
    if (!r.pass) return false;
  return true;
}

} // namespace polder
