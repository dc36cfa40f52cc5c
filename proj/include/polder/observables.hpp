#pragma once

#include <string>
#include <vector>

#include "polder/atom.hpp"
#include "polder/medium.hpp"
#include "polder/quadrature.hpp"
#include "polder/types.hpp"

namespace polder {

//! Per-transition pieces of a level shift.
struct TransitionContribution {
  std::string from, to;
  double omega_mi = 0.0;
  double nonresidue = 0.0;
  cplx residue{};
};

//! Shift and rate change of one level at one distance.
//! total_shift = nonresidue + Re(residue); rate_change = -2 Im(residue).
struct ShiftBreakdown {
  double nonresidue = 0.0;
  cplx residue{};
  double total_shift = 0.0;
  double rate_change = 0.0;
  std::vector<TransitionContribution> per_transition;
};

//! Non-residue part of the level shift of state i at distance Z: per
//! transition the scaled (x, y) double integral over imaginary frequencies,
//! with the sign carried by omega_mi. Transitions with omega_mi = 0
//! contribute zero and are skipped with a diagnostic.
double nonresidue_shift(const LorentzMedium& medium, const AtomModel& atom,
                        int i, double z_atom, const QuadratureConfig& quad);

//! Nonretarded (van der Waals) closed form of the ground-state shift,
//! a single frequency integral against (eps(i w) - 1)/(eps(i w) + 1),
//! with the Z^-3 prefactor. The ground state is the lowest level.
double ground_shift_nonretarded(const LorentzMedium& medium,
                                const AtomModel& atom, double z_atom,
                                const QuadratureConfig& quad);

struct CoefficientPair {
  double par = 0.0;
  double perp = 0.0;
};

//! Closed-form retarded coefficients of the Z^-4 term; functions of the
//! static refractive index only. The final logarithm of each coefficient
//! has two circulating variants (sqrt(n^2-1)+n vs sqrt(n^2+1)+n inside the
//! log); the defaults are the variants selected by the asymptotic oracle
//! (see tests and README). Throws DomainError for n <= 1.
CoefficientPair c4_coefficients(double n);

//! Which argument the final logarithm of a c4 coefficient uses.
enum class C4LogVariant { sqrt_n2_minus_1, sqrt_n2_plus_1 };

CoefficientPair c4_coefficients_variant(double n, C4LogVariant par_log,
                                        C4LogVariant perp_log);

//! Closed-form coefficients of the absorption correction (Z^-5 term);
//! positive for all n > 1. Throws DomainError for n <= 1.
CoefficientPair c5_coefficients(double n);

//! Retarded asymptotic ground-state shift
//! -3/(64 pi^2) sum_m sum_sigma (c4/Z^4 - (4 gamma/omega_T^2) c5/Z^5)
//! |mu_sigma|^2 / omega_mg. Returns 0 for a vacuum medium.
double ground_shift_retarded_asymptotic(const LorentzMedium& medium,
                                        const AtomModel& atom, double z_atom);

//! Residue (pole) contribution to the shift of state i: the contour
//! integral over kz in [1,0] followed by [0, i inf), split into a damped
//! imaginary-axis part and a finite oscillatory segment. Zero when no lower
//! states exist.
cplx excited_residue(const LorentzMedium& medium, const AtomModel& atom, int i,
                     double z_atom, const QuadratureConfig& quad);

//! Nonretarded closed form of the residue part (Z^-3).
cplx excited_residue_nonretarded(const LorentzMedium& medium,
                                 const AtomModel& atom, int i, double z_atom);

//! Retarded closed form of the residue part: oscillatory, leading 1/Z from
//! the parallel dipole component and 1/Z^2 from the perpendicular one.
cplx excited_residue_retarded(const LorentzMedium& medium,
                              const AtomModel& atom, int i, double z_atom);

//! Magnitude envelope of the retarded residue closed form (for tolerance
//! scaling of oscillatory comparisons).
double excited_residue_retarded_envelope(const LorentzMedium& medium,
                                         const AtomModel& atom, int i,
                                         double z_atom);

//! Assembles nonresidue + residue parts and the decay-rate change.
ShiftBreakdown total_shift_and_rate(const LorentzMedium& medium,
                                    const AtomModel& atom, int i,
                                    double z_atom,
                                    const QuadratureConfig& quad);

//! Inverse normalized lifetime Delta Gamma / Gamma_0 for the decay i -> m
//! (omega_mi < 0). Throws ZeroRateError when Gamma_0 = 0.
double normalized_lifetime_inverse(const LorentzMedium& medium,
                                   const AtomModel& atom, int i, int m,
                                   double z_atom,
                                   const QuadratureConfig& quad);

//! Nonretarded decay-rate change closed form (Z^-3, proportional to
//! Im eps at the transition frequency).
double decay_rate_change_nonretarded(const LorentzMedium& medium,
                                     const AtomModel& atom, int i,
                                     double z_atom);

//! Retarded decay-rate change closed form (oscillatory, 1/Z leading).
double decay_rate_change_retarded(const LorentzMedium& medium,
                                  const AtomModel& atom, int i, double z_atom);

//! Index of the lowest level (the ground state).
int ground_state_index(const AtomModel& atom);

} // namespace polder
