#pragma once

#include "polder/types.hpp"

namespace polder {

//! Single-resonance absorbing dielectric (Lorentz oscillator continuum
//! damped by a bath). All parameters are in reference-frequency units.
struct LorentzMedium {
  double omega_T = 1.0; //!< resonance frequency, > 0
  double omega_P = 0.0; //!< plasma frequency, >= 0 (0 models vacuum)
  double gamma = 0.0;   //!< damping constant, >= 0

  //! Throws DomainError on invalid parameters; warns when gamma >= omega_T
  //! (the underdamped-oscillator assumption is violated).
  void validate() const;

  //! Static relative permittivity 1 + (omega_P/omega_T)^2.
  double static_permittivity() const {
    const double r = omega_P / omega_T;
    return 1.0 + r * r;
  }

  //! Oscillator mass M = 1/omega_P^2 (eps0 = 1); infinite for vacuum.
  double oscillator_mass() const { return 1.0 / (omega_P * omega_P); }

  //! Bath oscillator density rho_nu = 4 M gamma / (pi nu^2), the choice that
  //! makes the polarization friction local in time.
  double bath_density(double nu) const {
    return 4.0 * oscillator_mass() * gamma / (pi * nu * nu);
  }
};

//! Relative permittivity eps(omega) = 1 + omega_P^2/(omega_T^2 - omega^2
//! - 2 i gamma omega), valid on the whole complex plane away from the poles.
//! Throws PoleError when the denominator vanishes within machine tolerance.
cplx permittivity(const LorentzMedium& medium, cplx omega);

//! eps(i w) = 1 + omega_P^2/(omega_T^2 + w^2 + 2 gamma w) for w >= 0:
//! real, in [1, eps(0)], monotone non-increasing. Throws DomainError for w < 0.
double permittivity_imag_axis(const LorentzMedium& medium, double w);

//! Even frequency-response function entering the bulk photon propagator.
//! On the real axis it coincides with eps(|omega|), which is how it is
//! realized here; it is never evaluated off the real axis.
cplx xi(const LorentzMedium& medium, double omega);

//! Principal square root of the permittivity with Im n >= 0 (passive medium).
cplx refractive_index(const LorentzMedium& medium, cplx omega);

//! n(0) = sqrt(1 + omega_P^2/omega_T^2) >= 1.
double static_index(const LorentzMedium& medium);

//! Dyson kernel K(omega) = (1 - xi)/xi relating the bulk response to the
//! geometric-series factor (eps0 = 1 units).
cplx dyson_kernel(const LorentzMedium& medium, double omega);

} // namespace polder
