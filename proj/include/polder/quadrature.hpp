#pragma once

#include <functional>

#include "polder/types.hpp"

namespace polder {

//! Shared configuration for all integration engines.
struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  double tail_cut = 1e-16;          // relative tail truncation
  double oscillatory_threshold = 10.0; // phase cycles before the Filon path engages

  void validate() const; // throws DomainError
};

struct QuadResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<cplx(double)>;

//! Declared endpoint behaviour of a finite-interval integrand.
//! sqrt_left/sqrt_right remove an integrable x^(-1/2) endpoint singularity
//! by the substitution x = a + (b-a) t^2 (mirrored on the right).
enum class Endpoint { none, sqrt_left, sqrt_right };

//! Adaptive Gauss-Kronrod (7/15) integration of f on (a, b).
//! Deterministic: identical inputs produce bit-identical results.
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadratureConfig& cfg,
                            Endpoint care = Endpoint::none);

//! Integral of f on [a, inf) for |f| eventually bounded by C exp(-decay_rate x)
//! (algebraic tails faster than 1/x^2 also converge). Compactifies onto [0,1)
//! with the scale 1/decay_rate, truncates the last tail_cut sliver, and checks
//! the decay declaration against a power fit of the mapped tail
//! (DecayMisdeclaredError).
QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   double decay_rate,
                                   const QuadratureConfig& cfg);

//! Integral on [a, inf) of an integrand carrying one simple pole close to
//! the path (Re pole > a, |Im pole| small): the singular part
//! residue_coef/(x - pole) is subtracted exactly on a window around the
//! pole and its integral added back analytically, so the quadrature only
//! sees the smooth remainder. Continuous in Im pole down to the
//! principal-value + i pi residue boundary value.
QuadResult integrate_semi_infinite_pole(const Integrand& f, double a,
                                        double decay_rate, cplx pole,
                                        cplx residue_coef,
                                        const QuadratureConfig& cfg);

//! Integral of envelope(x) * exp(i phase_rate x) on [a, b].
//! Engages a Filon-type path (Legendre fit of the envelope, exact moments
//! via spherical Bessel functions) once the phase exceeds
//! cfg.oscillatory_threshold cycles; plain adaptive otherwise.
QuadResult integrate_oscillatory(const Integrand& envelope, double phase_rate,
                                 double a, double b,
                                 const QuadratureConfig& cfg);

//! Unwraps a QuadResult, throwing QuadratureError with context when the
//! requested tolerance was not reached.
cplx require_converged(const QuadResult& r, const char* what);

} // namespace polder
