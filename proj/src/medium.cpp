#include "polder/medium.hpp"

#include <cmath>
#include <cstdio>

#include "polder/errors.hpp"

namespace polder {

void LorentzMedium::validate() const {
  if (!(omega_T > 0.0)) throw DomainError("LorentzMedium: omega_T must be > 0");
  if (!(omega_P >= 0.0)) throw DomainError("LorentzMedium: omega_P must be >= 0");
  if (!(gamma >= 0.0)) throw DomainError("LorentzMedium: gamma must be >= 0");
  if (gamma >= omega_T) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "medium is overdamped (gamma = %g >= omega_T = %g)", gamma,
                  omega_T);
    warn(Warning::underdamped_violated, buf);
  }
}

cplx permittivity(const LorentzMedium& medium, cplx omega) {
  const cplx den = medium.omega_T * medium.omega_T - omega * omega -
                   2.0 * iunit * medium.gamma * omega;
  const double scale = medium.omega_T * medium.omega_T + std::norm(omega) +
                       2.0 * medium.gamma * std::abs(omega);
  if (std::abs(den) <= 1e-14 * scale) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "permittivity: pole at omega = (%g, %g)", omega.real(),
                  omega.imag());
    throw PoleError(buf);
  }
  return 1.0 + medium.omega_P * medium.omega_P / den;
}

double permittivity_imag_axis(const LorentzMedium& medium, double w) {
  if (!(w >= 0.0))
    throw DomainError("permittivity_imag_axis: requires w >= 0");
  const double den =
      medium.omega_T * medium.omega_T + w * w + 2.0 * medium.gamma * w;
  return 1.0 + medium.omega_P * medium.omega_P / den;
}

cplx xi(const LorentzMedium& medium, double omega) {
  return permittivity(medium, std::abs(omega));
}

cplx refractive_index(const LorentzMedium& medium, cplx omega) {
  cplx n = std::sqrt(permittivity(medium, omega));
  if (n.imag() < 0.0) n = -n;
  return n;
}

double static_index(const LorentzMedium& medium) {
  return std::sqrt(medium.static_permittivity());
}

cplx dyson_kernel(const LorentzMedium& medium, double omega) {
  const cplx x = xi(medium, omega);
  return (1.0 - x) / x;
}

} // namespace polder
