#pragma once

#include <complex>

// Natural units throughout: hbar = c = eps0 = 1. Frequencies are expressed
// in units of a reference frequency (by convention the medium resonance
// omega_T), distances as the dimensionless product (reference frequency)*Z.

namespace polder {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iunit{0.0, 1.0};

} // namespace polder
