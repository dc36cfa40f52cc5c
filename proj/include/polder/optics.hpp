#pragma once

#include <array>

#include "polder/medium.hpp"
#include "polder/types.hpp"

namespace polder {

//! Frequency / transverse-wave-number pair with the derived z-components of
//! the wave vector on both sides of the interface. Both roots carry the
//! radiation/decay branch Im >= 0.
struct WaveContext {
  double omega = 0.0;
  double q_par = 0.0;
  cplx kz{};  //!< vacuum side, kz^2 = omega^2 - q_par^2
  cplx kzd{}; //!< medium side, kzd^2 = xi(omega) omega^2 - q_par^2
};

WaveContext wave_context(const LorentzMedium& medium, double omega,
                         double q_par);

//! Reflection/transmission amplitudes for right-incident (vacuum-side) or
//! left-incident (medium-side) plane waves at a half-space.
struct FresnelSet {
  cplx r_te{}, r_tm{};
  cplx t_te{}, t_tm{};
};

FresnelSet fresnel_right(const LorentzMedium& medium, double omega,
                         double q_par);
FresnelSet fresnel_left(const LorentzMedium& medium, double omega,
                        double q_par);

struct ReflectionPair {
  cplx te{}, tm{};
};

//! Reflection coefficients continued to imaginary frequency omega = i w;
//! both values are real for w >= 0.
ReflectionPair fresnel_imag_axis(const LorentzMedium& medium, double w,
                                 double q_par);

//! Reflection coefficients in the scaled polar variables (x, y) of the
//! ground-state shift integral; the frequency argument is omega_mg * x * y.
ReflectionPair fresnel_scaled(const LorentzMedium& medium, double omega_mg,
                              double x, double y);

//! Reflection coefficients as functions of the scaled z-wave-number on the
//! excited-state contour (real [0,1] or positive imaginary axis), with the
//! permittivity frozen at eps(omega_abs).
ReflectionPair fresnel_kz(const LorentzMedium& medium, double omega_abs,
                          cplx kz_scaled);

//! Transverse unit polarization vectors for the plane wave
//! (q_par_vec, z_wavenumber) at frequency omega. Unit norm is with respect
//! to the unconjugated dot product; the medium-side TM vector carries the
//! extra xi^{-1/2} normalization.
struct PolarizationVectors {
  std::array<cplx, 3> e_te{};
  std::array<cplx, 3> e_tm{};
};

PolarizationVectors polarization_vectors_vacuum(
    const std::array<double, 2>& q_par_vec, cplx z_wavenumber, double omega);

PolarizationVectors polarization_vectors_medium(
    const std::array<double, 2>& q_par_vec, cplx z_wavenumber, double omega,
    const LorentzMedium& medium);

//! Surface-polariton pole of the TM reflection coefficient on the
//! evanescent axis kz = i kappa: kappa_p = omega sqrt(-1/(eps+1)), present
//! near the real kappa path when Re eps < -1 and Im eps is small. The
//! residue of r_TM in kappa at the pole is 2 eps^2 kappa_p / (eps^2 - 1).
struct SurfacePolaritonPole {
  bool near_path = false; //!< sharp pole close to the integration path
  cplx kappa{};
  cplx reflection_residue{};
};

SurfacePolaritonPole surface_polariton_pole(cplx eps, double omega);

//! TM polarization-vector product f(q_z, p_z) =
//! (q_z p_z + q_par^2) / (sqrt(q_par^2+q_z^2) sqrt(q_par^2+p_z^2)).
//! The TE analogue is identically 1 and mixed TE/TM products vanish.
cplx f_tm(cplx q_z, cplx p_z, double q_par);

cplx dot(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b);

} // namespace polder
