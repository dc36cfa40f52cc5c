#include "polder/propagator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "polder/errors.hpp"

namespace polder {

namespace {

cplx sqrt_upper(cplx z) {
  cplx r = std::sqrt(z);
  if (r.imag() < 0.0) r = -r;
  return r;
}

cplx vacuum_kz(double omega, double q_par) {
  const double w2 = omega * omega;
  const double q2 = q_par * q_par;
  return w2 >= q2 ? cplx{std::sqrt(w2 - q2), 0.0}
                  : cplx{0.0, std::sqrt(q2 - w2)};
}

// Polarization vectors with the x-axis azimuth convention, including the
// well-defined q_par -> 0 limit (TE along y, TM in the x-z plane).
PolarizationVectors vectors_along_x(double q_par, cplx z_wavenumber,
                                    cplx tm_norm) {
  PolarizationVectors v;
  v.e_te = {cplx{0.0}, cplx{1.0}, cplx{0.0}};
  if (q_par > 0.0) {
    v.e_tm = {z_wavenumber / tm_norm, cplx{0.0}, -q_par * q_par /
                                                     (q_par * tm_norm)};
  } else {
    v.e_tm = {z_wavenumber / tm_norm, cplx{0.0}, cplx{0.0}};
  }
  return v;
}

PolarizationVectors vacuum_vectors(double q_par, cplx kz, double omega) {
  return vectors_along_x(q_par, kz, cplx{omega});
}

PolarizationVectors medium_vectors(double q_par, cplx kzd, double omega,
                                   cplx xi_val) {
  return vectors_along_x(q_par, kzd, std::sqrt(xi_val) * omega);
}

void add_outer(PropagatorMatrix& m, cplx coef, const std::array<cplx, 3>& a,
               const std::array<cplx, 3>& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) += coef * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
}

// Reflection coefficients as functions of the (complex) vacuum z-wave-number
// at fixed omega; valid for omega = 0 as well, unlike the scaled form.
ReflectionPair edge_reflection(cplx xi_val, double omega, cplx kz) {
  const cplx kzd = sqrt_upper((xi_val - 1.0) * omega * omega + kz * kz);
  ReflectionPair r;
  r.te = (kz - kzd) / (kz + kzd);
  r.tm = (xi_val * kz - kzd) / (xi_val * kz + kzd);
  return r;
}

} // namespace

PropagatorMatrix free_propagator_q(double omega, double q_par,
                                   double z_minus_zprime) {
  if (z_minus_zprime == 0.0)
    throw DomainError("free_propagator_q: not valid at z = z'");
  if (!(q_par >= 0.0)) throw DomainError("free_propagator_q: q_par >= 0");

  const cplx kz = vacuum_kz(omega, q_par);
  const double sign = z_minus_zprime > 0.0 ? 1.0 : -1.0;
  const PolarizationVectors v = vacuum_vectors(q_par, sign * kz, omega);
  const cplx coef = -iunit * omega * omega / (2.0 * kz) *
                    std::exp(iunit * sign * kz * z_minus_zprime);

  PropagatorMatrix m;
  m.kind = PropagatorKind::free_space;
  m.omega = omega;
  m.q_par = q_par;
  m.z = z_minus_zprime;
  add_outer(m, coef, v.e_te, v.e_te);
  add_outer(m, coef, v.e_tm, v.e_tm);
  return m;
}

PropagatorMatrix bulk_propagator_q(const LorentzMedium& medium, double omega,
                                   double q_par, double z_minus_zprime) {
  if (z_minus_zprime == 0.0)
    throw DomainError("bulk_propagator_q: not valid at z = z'");
  if (!(q_par >= 0.0)) throw DomainError("bulk_propagator_q: q_par >= 0");

  const cplx x = xi(medium, omega);
  const cplx kzd = sqrt_upper(x * omega * omega - q_par * q_par);
  const double sign = z_minus_zprime > 0.0 ? 1.0 : -1.0;
  const PolarizationVectors v = medium_vectors(q_par, sign * kzd, omega, x);
  const cplx coef = -iunit * x * x * omega * omega / (2.0 * kzd) *
                    std::exp(iunit * sign * kzd * z_minus_zprime);

  PropagatorMatrix m;
  m.kind = PropagatorKind::bulk;
  m.omega = omega;
  m.q_par = q_par;
  m.z = z_minus_zprime;
  add_outer(m, coef, v.e_te, v.e_te);
  add_outer(m, coef, v.e_tm, v.e_tm);
  return m;
}

PropagatorMatrix transmission_propagator(const LorentzMedium& medium,
                                         double omega, double q_par, double z,
                                         double zprime) {
  if (!(z < 0.0 && zprime > 0.0))
    throw DomainError("transmission_propagator: requires z < 0 < z'");

  const WaveContext c = wave_context(medium, omega, q_par);
  const cplx x = xi(medium, omega);
  const FresnelSet f = fresnel_right(medium, omega, q_par);
  const PolarizationVectors med = medium_vectors(q_par, -c.kzd, omega, x);
  const PolarizationVectors vac = vacuum_vectors(q_par, -c.kz, omega);

  const cplx coef = -iunit * omega * omega / (2.0 * c.kz) *
                    std::exp(-iunit * c.kzd * z + iunit * c.kz * zprime);

  PropagatorMatrix m;
  m.kind = PropagatorKind::transmitted;
  m.omega = omega;
  m.q_par = q_par;
  m.z = z;
  m.zprime = zprime;
  add_outer(m, coef * x * f.t_te, med.e_te, vac.e_te);
  add_outer(m, coef * x * f.t_tm, med.e_tm, vac.e_tm);
  return m;
}

PropagatorMatrix reflected_propagator_q(const LorentzMedium& medium,
                                        double omega, double q_par, double z,
                                        double zprime) {
  if (!(z > 0.0 && zprime > 0.0))
    throw DomainError("reflected_propagator_q: requires z, z' > 0");

  const WaveContext c = wave_context(medium, omega, q_par);
  const FresnelSet f = fresnel_right(medium, omega, q_par);
  const PolarizationVectors up = vacuum_vectors(q_par, c.kz, omega);
  const PolarizationVectors down = vacuum_vectors(q_par, -c.kz, omega);

  const cplx coef = -iunit * omega * omega / (2.0 * c.kz) *
                    std::exp(iunit * c.kz * (z + zprime));

  PropagatorMatrix m;
  m.kind = PropagatorKind::reflected;
  m.omega = omega;
  m.q_par = q_par;
  m.z = z;
  m.zprime = zprime;
  add_outer(m, coef * f.r_te, up.e_te, down.e_te);
  add_outer(m, coef * f.r_tm, up.e_tm, down.e_tm);
  return m;
}

namespace {

// Equal-point reflected integrals. In the propagating segment the
// substitution q_par = sqrt(w^2 - kz^2) turns (q/kz) dq into -dkz and
// removes the 1/kz endpoint singularity; the evanescent tail uses
// kz = i kappa, giving (q/kz) dq = dkappa / i.
struct EqualPointParts {
  cplx propagating_xx{}, propagating_zz{};
  cplx evanescent_xx{}, evanescent_zz{};
};

EqualPointParts equal_point_parts(const LorentzMedium& medium, double z_atom,
                                  double omega, const QuadratureConfig& quad) {
  const double w = std::abs(omega);
  const double w2 = w * w;
  const cplx x = xi(medium, omega);

  EqualPointParts parts;

  if (w > 0.0) {
    auto env_xx = [&](double kz) {
      const ReflectionPair r = edge_reflection(x, w, cplx{kz});
      return w2 * r.te - kz * kz * r.tm;
    };
    auto env_zz = [&](double kz) {
      const ReflectionPair r = edge_reflection(x, w, cplx{kz});
      return 2.0 * (w2 - kz * kz) * r.tm;
    };
    parts.propagating_xx = require_converged(
        integrate_oscillatory(env_xx, 2.0 * z_atom, 0.0, w, quad),
        "reflected_equal_point: propagating xx");
    parts.propagating_zz = require_converged(
        integrate_oscillatory(env_zz, 2.0 * z_atom, 0.0, w, quad),
        "reflected_equal_point: propagating zz");
  }

  auto ev_xx = [&](double kappa) {
    const ReflectionPair r = edge_reflection(x, w, cplx{0.0, kappa});
    return (w2 * r.te + kappa * kappa * r.tm) * std::exp(-2.0 * kappa * z_atom);
  };
  auto ev_zz = [&](double kappa) {
    const ReflectionPair r = edge_reflection(x, w, cplx{0.0, kappa});
    return 2.0 * (w2 + kappa * kappa) * r.tm * std::exp(-2.0 * kappa * z_atom);
  };

  // Reststrahlen band at weak damping: the TM surface-polariton pole sits
  // next to the evanescent path and is subtracted exactly.
  const SurfacePolaritonPole sp = surface_polariton_pole(x, w);
  if (sp.near_path) {
    const cplx kp = sp.kappa;
    const cplx damp = std::exp(-2.0 * kp * z_atom) * sp.reflection_residue;
    parts.evanescent_xx = require_converged(
        integrate_semi_infinite_pole(ev_xx, 0.0, 2.0 * z_atom, kp,
                                     kp * kp * damp, quad),
        "reflected_equal_point: evanescent xx (polariton pole)");
    parts.evanescent_zz = require_converged(
        integrate_semi_infinite_pole(ev_zz, 0.0, 2.0 * z_atom, kp,
                                     2.0 * (w2 + kp * kp) * damp, quad),
        "reflected_equal_point: evanescent zz (polariton pole)");
    return parts;
  }
  parts.evanescent_xx =
      require_converged(integrate_semi_infinite(ev_xx, 0.0, 2.0 * z_atom, quad),
                        "reflected_equal_point: evanescent xx");
  parts.evanescent_zz =
      require_converged(integrate_semi_infinite(ev_zz, 0.0, 2.0 * z_atom, quad),
                        "reflected_equal_point: evanescent zz");
  return parts;
}

} // namespace

ReflectedPropagatorDiag reflected_equal_point(const LorentzMedium& medium,
                                              double z_atom, double omega,
                                              const QuadratureConfig& quad) {
  if (!(z_atom > 0.0))
    throw DomainError("reflected_equal_point: requires z_atom > 0");

  const EqualPointParts p = equal_point_parts(medium, z_atom, omega, quad);
  const cplx pref = -iunit / (8.0 * pi);

  ReflectedPropagatorDiag d;
  d.z_atom = z_atom;
  d.omega = omega;
  d.d_xx = pref * (p.propagating_xx + p.evanescent_xx / iunit);
  d.d_yy = d.d_xx;
  d.d_zz = pref * (p.propagating_zz + p.evanescent_zz / iunit);
  return d;
}

ReflectedDiagImagAxis reflected_equal_point_imag_axis(
    const LorentzMedium& medium, double z_atom, double w,
    const QuadratureConfig& quad) {
  if (!(z_atom > 0.0))
    throw DomainError("reflected_equal_point_imag_axis: requires z_atom > 0");
  if (!(w >= 0.0))
    throw DomainError("reflected_equal_point_imag_axis: requires w >= 0");

  const double eps = permittivity_imag_axis(medium, w);
  const double w2 = w * w;

  // u = sqrt(q_par^2 + w^2); both square roots become real and the
  // integrand decays as exp(-2 u Z).
  auto bar = [&](double u) {
    const double b = std::sqrt(u * u + (eps - 1.0) * w2);
    return std::pair<double, double>{(u - b) / (u + b),
                                     (eps * u - b) / (eps * u + b)};
  };
  auto f_xx = [&](double u) {
    const auto [rte, rtm] = bar(u);
    return (u * u * rtm - w2 * rte) * std::exp(-2.0 * u * z_atom);
  };
  auto f_zz = [&](double u) {
    const auto [rte, rtm] = bar(u);
    return 2.0 * (u * u - w2) * rtm * std::exp(-2.0 * u * z_atom);
  };

  ReflectedDiagImagAxis d;
  d.d_xx = -require_converged(
               integrate_semi_infinite(f_xx, w, 2.0 * z_atom, quad),
               "reflected_equal_point_imag_axis: xx")
               .real() /
           (8.0 * pi);
  d.d_yy = d.d_xx;
  d.d_zz = -require_converged(
               integrate_semi_infinite(f_zz, w, 2.0 * z_atom, quad),
               "reflected_equal_point_imag_axis: zz")
               .real() /
           (8.0 * pi);
  return d;
}

cplx dyson_factor_numeric(const LorentzMedium& medium, double omega,
                          double q_par, Polarization lambda,
                          const QuadratureConfig& quad) {
  if (!(medium.gamma > 0.0))
    throw DomainError("dyson_factor_numeric: requires gamma > 0");
  if (medium.omega_P == 0.0) return cplx{0.0, 0.0};

  const WaveContext c = wave_context(medium, omega, q_par);
  const cplx x = xi(medium, omega);

  const cplx rate = c.kz + c.kzd;
  const double beta = rate.imag();
  if (!(beta > 1e-7 * std::max(1.0, std::abs(rate.real())))) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "dyson_factor_numeric: Im(kz + kzd) = %.3e too small for "
                  "z-truncation",
                  beta);
    throw ConvergenceError(buf);
  }

  // Both half-line z-integrals reduce to the same damped oscillatory
  // integral of exp(i (kz + kzd) z) over [0, L].
  const double depth = -std::log(quad.tail_cut) / beta;
  auto envelope = [&](double z) { return std::exp(-beta * z); };
  const cplx zint = require_converged(
      integrate_oscillatory(envelope, rate.real(), 0.0, depth, quad),
      "dyson_factor_numeric: z-integral");

  const PolarizationVectors vac = vacuum_vectors(q_par, c.kz, omega);
  const PolarizationVectors med = medium_vectors(q_par, -c.kzd, omega, x);
  const cplx overlap = lambda == Polarization::TE ? dot(med.e_te, vac.e_te)
                                                  : dot(med.e_tm, vac.e_tm);

  const cplx a_bulk = -iunit * x * x * omega * omega / (2.0 * c.kzd);
  const cplx a_free = -iunit * omega * omega / (2.0 * c.kz);
  const cplx kernel = (1.0 - x) / x;

  return kernel * kernel * a_bulk * a_free * overlap * overlap * zint * zint;
}

ConvergenceReport convergence_check(const LorentzMedium& medium, double omega,
                                    double q_par) {
  const FresnelSet f = fresnel_right(medium, omega, q_par);
  ConvergenceReport rep;
  rep.magnitude_te = std::abs(f.r_te * f.r_te / (1.0 - f.r_te * f.r_te));
  rep.magnitude_tm = std::abs(f.r_tm * f.r_tm / (1.0 - f.r_tm * f.r_tm));
  rep.convergent = rep.magnitude_te < 1.0 && rep.magnitude_tm < 1.0;
  return rep;
}

namespace {

// Up-wave amplitudes of the reflected Green tensor from the interface
// matching conditions, solved as explicit 2x2 linear systems in the
// (reflected, transmitted) amplitudes. The Fresnel formulas never enter.
struct GreenAmplitudes {
  cplx a_te{}, a_tm{};
};

GreenAmplitudes green_amplitudes(cplx n, cplx kz, cplx kzd) {
  GreenAmplitudes g;

  // TE: field along y. Unknowns (A, B), incident amplitude 1:
  //   E_y continuous:        A - B = -1
  //   d_z E_y continuous:    i kz A + i kzd B = i kz
  {
    const cplx m11 = 1.0, m12 = -1.0, r1 = -1.0;
    const cplx m21 = iunit * kz, m22 = iunit * kzd, r2 = iunit * kz;
    const cplx det = m11 * m22 - m12 * m21;
    g.a_te = (r1 * m22 - m12 * r2) / det;
  }

  // TM: in-plane field. Unknowns (A, B):
  //   E_x continuous:        kz A + (kzd / n) B = kz
  //   eps E_z continuous:    A - n B = -1
  {
    const cplx m11 = kz, m12 = kzd / n, r1 = kz;
    const cplx m21 = 1.0, m22 = -n, r2 = -1.0;
    const cplx det = m11 * m22 - m12 * m21;
    g.a_tm = (r1 * m22 - m12 * r2) / det;
  }
  return g;
}

} // namespace

GreenReflectedDiag retarded_green_reflected(const LorentzMedium& medium,
                                            double z_atom, double omega,
                                            const QuadratureConfig& quad) {
  if (!(omega > 0.0))
    throw DomainError("retarded_green_reflected: requires omega > 0");
  if (!(z_atom > 0.0))
    throw DomainError("retarded_green_reflected: requires z_atom > 0");

  const cplx eps = permittivity(medium, omega);
  const cplx n = refractive_index(medium, omega);
  const double w2 = omega * omega;

  auto amps = [&](cplx kz) {
    const cplx kzd = sqrt_upper((eps - 1.0) * w2 + kz * kz);
    return green_amplitudes(n, kz, kzd);
  };

  auto env_xx = [&](double kz) {
    const GreenAmplitudes g = amps(cplx{kz});
    return g.a_te - kz * kz / w2 * g.a_tm;
  };
  auto env_zz = [&](double kz) {
    const GreenAmplitudes g = amps(cplx{kz});
    return 2.0 * (w2 - kz * kz) / w2 * g.a_tm;
  };
  auto ev_xx = [&](double kappa) {
    const GreenAmplitudes g = amps(cplx{0.0, kappa});
    return (g.a_te + kappa * kappa / w2 * g.a_tm) *
           std::exp(-2.0 * kappa * z_atom);
  };
  auto ev_zz = [&](double kappa) {
    const GreenAmplitudes g = amps(cplx{0.0, kappa});
    return 2.0 * (w2 + kappa * kappa) / w2 * g.a_tm *
           std::exp(-2.0 * kappa * z_atom);
  };

  const cplx prop_xx = require_converged(
      integrate_oscillatory(env_xx, 2.0 * z_atom, 0.0, omega, quad),
      "retarded_green_reflected: propagating xx");
  const cplx prop_zz = require_converged(
      integrate_oscillatory(env_zz, 2.0 * z_atom, 0.0, omega, quad),
      "retarded_green_reflected: propagating zz");
  const cplx evan_xx = require_converged(
      integrate_semi_infinite(ev_xx, 0.0, 2.0 * z_atom, quad),
      "retarded_green_reflected: evanescent xx");
  const cplx evan_zz = require_converged(
      integrate_semi_infinite(ev_zz, 0.0, 2.0 * z_atom, quad),
      "retarded_green_reflected: evanescent zz");

  const cplx pref = iunit / (8.0 * pi);
  GreenReflectedDiag g;
  g.g_xx = pref * (prop_xx + evan_xx / iunit);
  g.g_yy = g.g_xx;
  g.g_zz = pref * (prop_zz + evan_zz / iunit);
  return g;
}

double boundary_condition_residual(const LorentzMedium& medium, double omega,
                                   double q_par, double zprime,
                                   bool corrupt_branch) {
  if (!(zprime > 0.0))
    throw DomainError("boundary_condition_residual: requires z' > 0");

  const WaveContext c = wave_context(medium, omega, q_par);
  const cplx x = xi(medium, omega);
  const FresnelSet f = fresnel_right(medium, omega, q_par);
  const cplx kzd = corrupt_branch ? -c.kzd : c.kzd;

  const cplx pref =
      -iunit * omega * omega / (2.0 * c.kz) * std::exp(iunit * c.kz * zprime);

  const PolarizationVectors up = vacuum_vectors(q_par, c.kz, omega);
  const PolarizationVectors down = vacuum_vectors(q_par, -c.kz, omega);
  const PolarizationVectors med = medium_vectors(q_par, -kzd, omega, x);

  // Value and z-derivative of each piece at z = 0.
  PropagatorMatrix free_m, refl_m, trans_m, dfree, drefl, dtrans;
  add_outer(free_m, pref, down.e_te, down.e_te);
  add_outer(free_m, pref, down.e_tm, down.e_tm);
  add_outer(dfree, -iunit * c.kz * pref, down.e_te, down.e_te);
  add_outer(dfree, -iunit * c.kz * pref, down.e_tm, down.e_tm);

  add_outer(refl_m, pref * f.r_te, up.e_te, down.e_te);
  add_outer(refl_m, pref * f.r_tm, up.e_tm, down.e_tm);
  add_outer(drefl, iunit * c.kz * pref * f.r_te, up.e_te, down.e_te);
  add_outer(drefl, iunit * c.kz * pref * f.r_tm, up.e_tm, down.e_tm);

  add_outer(trans_m, pref * x * f.t_te, med.e_te, down.e_te);
  add_outer(trans_m, pref * x * f.t_tm, med.e_tm, down.e_tm);
  add_outer(dtrans, -iunit * kzd * pref * x * f.t_te, med.e_te, down.e_te);
  add_outer(dtrans, -iunit * kzd * pref * x * f.t_tm, med.e_tm, down.e_tm);

  double scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      scale = std::max({scale, std::abs(free_m(i, j)), std::abs(refl_m(i, j)),
                        std::abs(trans_m(i, j))});

  const cplx iqx{0.0, q_par}; // i q_x with the x-azimuth convention
  double worst = 0.0;
  auto residual = [&](cplx lhs, cplx rhs) {
    const double denom =
        std::max({std::abs(lhs), std::abs(rhs), 1e-12 * scale});
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  };

  for (int j = 0; j < 3; ++j) {
    const cplx vac_x = free_m(0, j) + refl_m(0, j);
    const cplx vac_y = free_m(1, j) + refl_m(1, j);
    const cplx vac_z = free_m(2, j) + refl_m(2, j);
    const cplx dvac_x = dfree(0, j) + drefl(0, j);
    const cplx dvac_y = dfree(1, j) + drefl(1, j);

    // E_par continuous.
    residual(trans_m(0, j) / x, vac_x);
    residual(trans_m(1, j) / x, vac_y);
    // D_z continuous.
    residual(trans_m(2, j), vac_z);
    // B_par continuous: B_x ~ i q_y E_z - d_z E_y, B_y ~ d_z E_x - i q_x E_z
    // (q_y = 0 in this azimuth).
    residual(-dtrans(1, j) / x, -dvac_y);
    residual((dtrans(0, j) - iqx * trans_m(2, j)) / x, dvac_x - iqx * vac_z);
  }
  return worst;
}

void dump_reflected_integrand(const LorentzMedium& medium, double z_atom,
                              double omega, int samples,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("dump_reflected_integrand: cannot open " + path);

  const double w = std::abs(omega);
  const cplx x = xi(medium, omega);
  out << "segment,variable,env_xx_re,env_xx_im,env_zz_re,env_zz_im\n";
  char line[256];
  for (int k = 0; k < samples; ++k) {
    if (w > 0.0) {
      const double kz = w * (k + 0.5) / samples;
      const ReflectionPair r = edge_reflection(x, w, cplx{kz});
      const cplx xx = w * w * r.te - kz * kz * r.tm;
      const cplx zz = 2.0 * (w * w - kz * kz) * r.tm;
      std::snprintf(line, sizeof line, "propagating,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    kz, xx.real(), xx.imag(), zz.real(), zz.imag());
      out << line;
    }
    const double kappa = (k + 0.5) / samples * 10.0 / z_atom;
    const ReflectionPair r = edge_reflection(x, w, cplx{0.0, kappa});
    const cplx xx =
        (w * w * r.te + kappa * kappa * r.tm) * std::exp(-2.0 * kappa * z_atom);
    const cplx zz = 2.0 * (w * w + kappa * kappa) * r.tm *
                    std::exp(-2.0 * kappa * z_atom);
    std::snprintf(line, sizeof line, "evanescent,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  kappa, xx.real(), xx.imag(), zz.real(), zz.imag());
    out << line;
  }
}

} // namespace polder
