#include "polder/optics.hpp"

#include <cmath>
#include <cstdio>

#include "polder/errors.hpp"

namespace polder {

namespace {

// Principal square root pushed onto the Im >= 0 sheet.
cplx sqrt_upper(cplx z) {
  cplx r = std::sqrt(z);
  if (r.imag() < 0.0) r = -r;
  return r;
}

void check_denominator(cplx den, double scale, const char* what) {
  if (std::abs(den) <= 1e-14 * scale) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s: degenerate denominator", what);
    throw DegenerateError(buf);
  }
}

} // namespace

WaveContext wave_context(const LorentzMedium& medium, double omega,
                         double q_par) {
  if (!(q_par >= 0.0)) throw DomainError("wave_context: requires q_par >= 0");

  WaveContext ctx;
  ctx.omega = omega;
  ctx.q_par = q_par;

  const double w2 = omega * omega;
  const double q2 = q_par * q_par;
  const double tol = 1e-12 * std::max(1.0, std::abs(omega));
  if (std::abs(q_par - std::abs(omega)) < tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "wave_context: branch point q_par = |omega| = %g", q_par);
    warn(Warning::branch_point, buf);
  }

  // Sign rule instead of an additive i*eta: real root on the propagating
  // side, positive imaginary on the evanescent side.
  ctx.kz = w2 >= q2 ? cplx{std::sqrt(w2 - q2), 0.0}
                    : cplx{0.0, std::sqrt(q2 - w2)};

  // Lossy media give Im kzd > 0 automatically; the lossless evanescent
  // corner is fixed by continuity from gamma > 0.
  ctx.kzd = sqrt_upper(xi(medium, omega) * w2 - q2);
  return ctx;
}

FresnelSet fresnel_right(const LorentzMedium& medium, double omega,
                         double q_par) {
  const WaveContext c = wave_context(medium, omega, q_par);
  const cplx x = xi(medium, omega);
  const double scale = std::abs(c.kz) + std::abs(c.kzd) + std::abs(x * c.kz);

  const cplx den_te = c.kz + c.kzd;
  const cplx den_tm = x * c.kz + c.kzd;
  check_denominator(den_te, scale, "fresnel_right(TE)");
  check_denominator(den_tm, scale, "fresnel_right(TM)");

  FresnelSet f;
  f.r_te = (c.kz - c.kzd) / den_te;
  f.r_tm = (x * c.kz - c.kzd) / den_tm;
  f.t_te = 2.0 * c.kz / den_te;
  f.t_tm = 2.0 * std::sqrt(x) * c.kz / den_tm;
  return f;
}

FresnelSet fresnel_left(const LorentzMedium& medium, double omega,
                        double q_par) {
  const WaveContext c = wave_context(medium, omega, q_par);
  const cplx x = xi(medium, omega);
  const double scale = std::abs(c.kz) + std::abs(c.kzd) + std::abs(x * c.kz);

  const cplx den_te = c.kz + c.kzd;
  const cplx den_tm = x * c.kz + c.kzd;
  check_denominator(den_te, scale, "fresnel_left(TE)");
  check_denominator(den_tm, scale, "fresnel_left(TM)");

  FresnelSet f;
  f.r_te = (c.kzd - c.kz) / den_te;
  f.r_tm = (c.kzd - x * c.kz) / den_tm;
  f.t_te = 2.0 * c.kzd / den_te;
  f.t_tm = 2.0 * std::sqrt(x) * c.kzd / den_tm;
  return f;
}

ReflectionPair fresnel_imag_axis(const LorentzMedium& medium, double w,
                                 double q_par) {
  if (!(w >= 0.0)) throw DomainError("fresnel_imag_axis: requires w >= 0");
  const double eps = permittivity_imag_axis(medium, w);
  const double q2 = q_par * q_par;
  const double a = std::sqrt(w * w + q2);
  const double b = std::sqrt(eps * w * w + q2);

  ReflectionPair r;
  if (a + b == 0.0) {
    // w = q_par = 0: no wave at all; both coefficients vanish by continuity.
    r.te = r.tm = 0.0;
    return r;
  }
  r.te = (a - b) / (a + b);
  r.tm = (eps * a - b) / (eps * a + b);
  return r;
}

ReflectionPair fresnel_scaled(const LorentzMedium& medium, double omega_mg,
                              double x, double y) {
  if (!(omega_mg > 0.0))
    throw DomainError("fresnel_scaled: requires omega_mg > 0");
  if (!(x >= 0.0) || !(y >= 0.0 && y <= 1.0))
    throw DomainError("fresnel_scaled: requires x >= 0 and y in [0, 1]");

  const double eps = permittivity_imag_axis(medium, omega_mg * x * y);
  const double s = std::sqrt(y * y * (eps - 1.0) + 1.0);

  ReflectionPair r;
  r.te = (1.0 - s) / (1.0 + s);
  r.tm = (eps - s) / (eps + s);
  return r;
}

ReflectionPair fresnel_kz(const LorentzMedium& medium, double omega_abs,
                          cplx kz_scaled) {
  if (!(omega_abs > 0.0))
    throw DomainError("fresnel_kz: requires omega_abs > 0");

  const cplx eps = permittivity(medium, omega_abs);
  const cplx root = [&] {
    cplx s = std::sqrt((eps - 1.0) + kz_scaled * kz_scaled);
    // Same sheet as kzd/|omega|: Im >= 0.
    if (s.imag() < 0.0) s = -s;
    return s;
  }();

  const double scale = std::abs(kz_scaled) + std::abs(root) + std::abs(eps);
  const cplx den_te = kz_scaled + root;
  const cplx den_tm = eps * kz_scaled + root;
  check_denominator(den_te, scale, "fresnel_kz(TE)");
  check_denominator(den_tm, scale, "fresnel_kz(TM)");

  ReflectionPair r;
  r.te = (kz_scaled - root) / den_te;
  r.tm = (eps * kz_scaled - root) / den_tm;
  return r;
}

namespace {

PolarizationVectors make_vectors(const std::array<double, 2>& q_par_vec,
                                 cplx z_wavenumber, cplx norm_tm,
                                 const char* what) {
  const double qx = q_par_vec[0];
  const double qy = q_par_vec[1];
  const double q = std::hypot(qx, qy);
  if (!(q > 0.0)) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%s: azimuth undefined at q_par = 0; pass an explicit "
                  "direction (default convention is the x-axis)",
                  what);
    throw DegenerateError(buf);
  }
  if (std::abs(norm_tm) == 0.0)
    throw DegenerateError("polarization_vectors: vanishing TM normalization");

  PolarizationVectors v;
  v.e_te = {cplx{-qy / q}, cplx{qx / q}, cplx{0.0}};
  v.e_tm = {qx * z_wavenumber / (q * norm_tm),
            qy * z_wavenumber / (q * norm_tm), cplx{-q * q} / (q * norm_tm)};
  return v;
}

} // namespace

PolarizationVectors polarization_vectors_vacuum(
    const std::array<double, 2>& q_par_vec, cplx z_wavenumber, double omega) {
  return make_vectors(q_par_vec, z_wavenumber, cplx{omega},
                      "polarization_vectors_vacuum");
}

PolarizationVectors polarization_vectors_medium(
    const std::array<double, 2>& q_par_vec, cplx z_wavenumber, double omega,
    const LorentzMedium& medium) {
  const cplx norm = std::sqrt(xi(medium, omega)) * omega;
  return make_vectors(q_par_vec, z_wavenumber, norm,
                      "polarization_vectors_medium");
}

SurfacePolaritonPole surface_polariton_pole(cplx eps, double omega) {
  SurfacePolaritonPole p;
  if (!(eps.real() < -1.0)) return p;
  cplx kp = std::abs(omega) * std::sqrt(-1.0 / (eps + 1.0));
  if (kp.real() < 0.0) kp = -kp;
  if (!std::isfinite(kp.real()) || !std::isfinite(kp.imag())) return p;
  p.kappa = kp;
  p.reflection_residue = 2.0 * eps * eps * kp / (eps * eps - 1.0);
  // Sharp enough to defeat plain adaptive refinement; wider poles are
  // cheaper to integrate through directly.
  p.near_path = std::abs(kp.imag()) < 0.02 * kp.real() && kp.real() > 0.0;
  return p;
}

cplx f_tm(cplx q_z, cplx p_z, double q_par) {
  if (!(q_par > 0.0)) throw DomainError("f_tm: requires q_par > 0");
  const double q2 = q_par * q_par;
  const cplx na = std::sqrt(q2 + q_z * q_z);
  const cplx nb = std::sqrt(q2 + p_z * p_z);
  if (std::abs(na) == 0.0 || std::abs(nb) == 0.0)
    throw DegenerateError("f_tm: vanishing normalization root");
  return (q_z * p_z + q2) / (na * nb);
}

cplx dot(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

} // namespace polder
