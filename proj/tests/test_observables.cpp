#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "polder/errors.hpp"
#include "polder/observables.hpp"
#include "polder/optics.hpp"
#include "polder/quadrature.hpp"

using namespace polder;

namespace {

void quiet_sink(Warning, const std::string&) {}
struct SinkGuard {
  WarningSink old;
  SinkGuard() : old(set_warning_sink(&quiet_sink)) {}
  ~SinkGuard() { set_warning_sink(old); }
};

const LorentzMedium kStd{1.0, 1.0, 0.1};
const LorentzMedium kVac{1.0, 0.0, 0.1};
const QuadratureConfig kQuad{};

// Independent oracles for the retarded coefficients: the y-integral
// representations obtained by expanding the shift integrand about x = 0.
double oracle_c4(double n, bool parallel) {
  auto f = [&](double y) {
    const double n2 = n * n;
    const double s = std::sqrt(1.0 + y * y * (n2 - 1.0));
    if (parallel)
      return cplx{(n2 - s) / (n2 + s) - y * y * (1.0 - s) / (1.0 + s)};
    return cplx{2.0 * (1.0 - y * y) * (n2 - s) / (n2 + s)};
  };
  return require_converged(integrate_finite(f, 0.0, 1.0, kQuad), "c4 oracle")
      .real();
}

double oracle_c5(double n, bool parallel) {
  auto f = [&](double y) {
    const double n2 = n * n;
    const double s = std::sqrt(1.0 + y * y * (n2 - 1.0));
    const double df =
        (2.0 * s * s - n2 * y * y) / (s * (n2 + s) * (n2 + s));
    const double dg = -y * y / (s * (1.0 + s) * (1.0 + s));
    if (parallel) return cplx{(n2 - 1.0) * y * (df - y * y * dg)};
    return cplx{(n2 - 1.0) * 2.0 * y * (1.0 - y * y) * df};
  };
  return require_converged(integrate_finite(f, 0.0, 1.0, kQuad), "c5 oracle")
      .real();
}

} // namespace

TEST_CASE("nonresidue shift: vacuum zero and nonretarded regime") {
  SinkGuard guard;
  const AtomModel atom = AtomModel::two_level(1.0, 1.0, 0.5);

  CHECK(nonresidue_shift(kVac, atom, 0, 0.7, kQuad) == 0.0);
  CHECK(ground_shift_nonretarded(kVac, atom, 0.7, kQuad) == 0.0);

  // Full double integral against the Z^-3 closed form at 2 w Z = 1e-3.
  const double z = 0.5e-3;
  const double full = nonresidue_shift(kStd, atom, 0, z, kQuad);
  const double nonret = ground_shift_nonretarded(kStd, atom, z, kQuad);
  CHECK(full == doctest::Approx(nonret).epsilon(0.01));
  CHECK(full < 0.0);

  CHECK_THROWS_AS(nonresidue_shift(kStd, atom, 0, -1.0, kQuad), DomainError);
}

TEST_CASE("nonretarded perfect-mirror sublimit") {
  SinkGuard guard;
  const AtomModel atom = AtomModel::two_level(1.0, 1.0, 0.5);
  const double z = 0.5e-3;

  // eps(0) = 1e6: the frequency integral approaches pi/2 and the shift the
  // Lennard-Jones value -(mu_par^2 + 2 mu_perp^2)/(64 pi Z^3).
  const LorentzMedium mirror{1.0, std::sqrt(1e6 - 1.0), 0.1};
  const double got = ground_shift_nonretarded(mirror, atom, z, kQuad);
  const double lj = -(1.0 + 2.0 * 0.5) / (64.0 * pi * z * z * z);
  CHECK(got == doctest::Approx(lj).epsilon(0.01));
}

TEST_CASE("ground-state shift is negative over a parameter sample") {
  SinkGuard guard;
  const AtomModel atom = AtomModel::two_level(1.0, 0.7, 0.4);
  for (double wp : {0.3, 1.0, 2.5})
    for (double z : {0.05, 0.8, 6.0}) {
      const LorentzMedium med{1.0, wp, 0.15};
      const double shift = nonresidue_shift(med, atom, 0, z, kQuad);
      CHECK(shift < 0.0);
    }
}

TEST_CASE("retarded coefficients match the expansion oracle; typo resolved") {
  SinkGuard guard;

  for (double n : {1.2, std::sqrt(2.0), 2.0, 5.0}) {
    const CoefficientPair c4 = c4_coefficients(n);
    CHECK(c4.par == doctest::Approx(oracle_c4(n, true)).epsilon(1e-9));
    CHECK(c4.perp == doctest::Approx(oracle_c4(n, false)).epsilon(1e-9));

    const CoefficientPair c5 = c5_coefficients(n);
    CHECK(c5.par == doctest::Approx(oracle_c5(n, true)).epsilon(1e-9));
    CHECK(c5.perp == doctest::Approx(oracle_c5(n, false)).epsilon(1e-9));
  }

  // The rejected log variant (sqrt(n^2+1) inside the final logarithm) is
  // far outside any quadrature tolerance for both components.
  const CoefficientPair wrong = c4_coefficients_variant(
      2.0, C4LogVariant::sqrt_n2_plus_1, C4LogVariant::sqrt_n2_plus_1);
  CHECK(std::abs(wrong.par - oracle_c4(2.0, true)) > 0.1);
  CHECK(std::abs(wrong.perp - oracle_c4(2.0, false)) > 0.1);

  CHECK_THROWS_AS(c4_coefficients(1.0), DomainError);
  CHECK_THROWS_AS(c5_coefficients(0.9), DomainError);
}

TEST_CASE("retarded coefficients: limits and positivity") {
  SinkGuard guard;

  // n -> 1+: both coefficient families vanish.
  const CoefficientPair c4_near = c4_coefficients(1.0 + 1e-3);
  const CoefficientPair c4_ref = c4_coefficients(2.0);
  CHECK(std::abs(c4_near.par) < 1e-3 * std::abs(c4_ref.par) * 10.0);
  CHECK(std::abs(c4_near.perp) < 1e-3 * std::abs(c4_ref.perp) * 10.0);
  const CoefficientPair c5_near = c5_coefficients(1.0 + 1e-3);
  CHECK(std::abs(c5_near.par) < 1e-2);
  CHECK(std::abs(c5_near.perp) < 1e-2);

  // c5 positivity on (1, 10].
  for (double n = 1.05; n <= 10.0; n += 0.28) {
    const CoefficientPair c5 = c5_coefficients(n);
    CHECK(c5.par > 0.0);
    CHECK(c5.perp > 0.0);
  }

  // Perfect-mirror limit at eps(0) = 1e6 (n = 1e3): both c4 components
  // approach 4/3 (the residual is the genuine 1/n correction), and the
  // closed forms still track the quadrature oracle there.
  const CoefficientPair mirror = c4_coefficients(1e3);
  CHECK(mirror.par == doctest::Approx(4.0 / 3.0).epsilon(2e-3));
  CHECK(mirror.perp == doctest::Approx(4.0 / 3.0).epsilon(2e-3));
  CHECK(mirror.par == doctest::Approx(oracle_c4(1e3, true)).epsilon(1e-5));
  CHECK(mirror.perp == doctest::Approx(oracle_c4(1e3, false)).epsilon(1e-5));
}

TEST_CASE("retarded asymptotics of the ground-state shift") {
  SinkGuard guard;
  const AtomModel atom = AtomModel::two_level(1.0, 1.0, 0.5);

  CHECK(ground_shift_retarded_asymptotic(kVac, atom, 3.0) == 0.0);

  // gamma = 0: pure c4/Z^4 term.
  LorentzMedium lossless = kStd;
  lossless.gamma = 0.0;
  const double z = 25.0;
  const CoefficientPair c4 = c4_coefficients(std::sqrt(2.0));
  const double manual = -3.0 / (64.0 * pi * pi) *
                        (c4.par * 1.0 + c4.perp * 0.5) / std::pow(z, 4);
  CHECK(ground_shift_retarded_asymptotic(lossless, atom, z) ==
        doctest::Approx(manual).epsilon(1e-12));

  // Full integral approaches the asymptote at 2 w Z = 50 (5% criterion).
  const double full = nonresidue_shift(lossless, atom, 0, z, kQuad);
  CHECK(std::abs(full / ground_shift_retarded_asymptotic(lossless, atom, z) -
                 1.0) < 0.05);

  // Fig-3-style plateau: the scaled shift Z^4 w Delta-E levels off.
  const double p1 = nonresidue_shift(lossless, atom, 0, 30.0, kQuad) *
                    std::pow(30.0, 4);
  const double p2 = nonresidue_shift(lossless, atom, 0, 60.0, kQuad) *
                    std::pow(60.0, 4);
  CHECK(p1 == doctest::Approx(p2).epsilon(0.01));

  // Including the c5/Z^5 correction shrinks the residual (gamma > 0).
  const double with_c5 = ground_shift_retarded_asymptotic(kStd, atom, z);
  LorentzMedium g0 = kStd;
  g0.gamma = 0.0;
  const double c4_only = ground_shift_retarded_asymptotic(g0, atom, z);
  const double full_abs = nonresidue_shift(kStd, atom, 0, z, kQuad);
  CHECK(std::abs(full_abs - with_c5) < std::abs(full_abs - c4_only));
}

TEST_CASE("absorption reduces the retarded shift magnitude at fixed n(0)") {
  SinkGuard guard;
  const AtomModel atom = AtomModel::two_level(1.0, 1.0, 0.0);
  const double z = 25.0;
  double prev = std::abs(nonresidue_shift(LorentzMedium{1.0, 1.0, 1e-12}, atom,
                                          0, z, kQuad));
  for (double g : {0.05, 0.1, 0.2, 0.4}) {
    const double cur =
        std::abs(nonresidue_shift(LorentzMedium{1.0, 1.0, g}, atom, 0, z,
                                  kQuad));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("excited residue: empty sum, nonretarded and retarded regimes") {
  SinkGuard guard;
  const AtomModel atom = AtomModel::two_level(1.0, 1.0, 0.5);

  // Ground state has no lower levels: exactly zero.
  CHECK(excited_residue(kStd, atom, 0, 0.4, kQuad) == cplx{0.0, 0.0});
  CHECK(excited_residue(kVac, atom, 1, 0.4, kQuad) == cplx{0.0, 0.0});
  CHECK(excited_residue_nonretarded(kVac, atom, 1, 0.4) == cplx{0.0, 0.0});
  CHECK(excited_residue_retarded(kVac, atom, 1, 0.4) == cplx{0.0, 0.0});

  // Nonretarded: full contour vs closed form at 2|w|Z = 1e-3 within 2%.
  {
    const double z = 0.5e-3;
    const cplx full = excited_residue(kStd, atom, 1, z, kQuad);
    const cplx closed = excited_residue_nonretarded(kStd, atom, 1, z);
    CHECK(std::abs(full - closed) < 0.02 * std::abs(closed));
    // Real part of the closed form has the stated |eps|^2 structure.
    const cplx eps = permittivity(kStd, 1.0);
    const double re_want = -(std::norm(eps) - 1.0) / std::norm(eps + 1.0) *
                           (1.0 + 2.0 * 0.5) / (32.0 * pi * z * z * z);
    CHECK(closed.real() == doctest::Approx(re_want).epsilon(1e-12));
  }

  // Retarded: envelope agreement at 2|w|Z = 50 within 5%.
  {
    const double z = 25.0;
    const cplx full = excited_residue(kStd, atom, 1, z, kQuad);
    const cplx closed = excited_residue_retarded(kStd, atom, 1, z);
    const double env = excited_residue_retarded_envelope(kStd, atom, 1, z);
    CHECK(std::abs(full - closed) < 0.05 * env);
  }

  // Residual against the closed form falls faster than Z^-2.
  {
    const double z1 = 15.0, z2 = 50.0;
    const double d1 = std::abs(excited_residue(kStd, atom, 1, z1, kQuad) -
                               excited_residue_retarded(kStd, atom, 1, z1));
    const double d2 = std::abs(excited_residue(kStd, atom, 1, z2, kQuad) -
                               excited_residue_retarded(kStd, atom, 1, z2));
    const double slope = std::log(d2 / d1) / std::log(z2 / z1);
    CHECK(slope < -2.0);
  }

  // Deep retarded distances (hundreds of oscillation radians): the contour
  // evaluation stays convergent and tracks the closed form.
  {
    const double z = 150.0;
    const cplx full = excited_residue(kStd, atom, 1, z, kQuad);
    const cplx closed = excited_residue_retarded(kStd, atom, 1, z);
    const double env = excited_residue_retarded_envelope(kStd, atom, 1, z);
    CHECK(std::abs(full - closed) < 0.02 * env);
  }
}

TEST_CASE("residue contour vs the direct transverse-momentum integral") {
  SinkGuard guard;
  // Independent quadrature path: the residue term evaluated in the
  // original q_par variable, with the 1/k_z endpoint singularities handled
  // by declared substitutions instead of the contour change of variables.
  const double w = 1.0, z = 0.8;
  const DipoleSq mu{1.0, 0.5};

  auto prop = [&](double q) {
    const FresnelSet f = fresnel_right(kStd, w, q);
    const double kz = std::sqrt(w * w - q * q);
    const cplx core = (w * w * f.r_te - kz * kz * f.r_tm) * mu.par +
                      2.0 * q * q * f.r_tm * mu.perp;
    return (q / kz) * std::exp(iunit * (2.0 * z * kz)) * core;
  };
  auto evan = [&](double q) {
    const FresnelSet f = fresnel_right(kStd, w, q);
    const double kap = std::sqrt(q * q - w * w);
    const cplx core = (w * w * f.r_te + kap * kap * f.r_tm) * mu.par +
                      2.0 * q * q * f.r_tm * mu.perp;
    return q / (iunit * kap) * std::exp(-2.0 * z * kap) * core;
  };
  const cplx head = require_converged(
      integrate_finite(prop, 0.0, w, kQuad, Endpoint::sqrt_right),
      "oracle propagating");
  const cplx shoulder = require_converged(
      integrate_finite(evan, w, 2.0 * w, kQuad, Endpoint::sqrt_left),
      "oracle evanescent head");
  const cplx tail = require_converged(
      integrate_semi_infinite(evan, 2.0 * w, 2.0 * z, kQuad),
      "oracle evanescent tail");
  const cplx oracle = -iunit / (8.0 * pi) * (head + shoulder + tail);

  const AtomModel atom = AtomModel::two_level(w, mu.par, mu.perp);
  const cplx contour = excited_residue(kStd, atom, 1, z, kQuad);
  CHECK(std::abs(contour - oracle) < 1e-7 * std::abs(oracle));
}

TEST_CASE("surface-polariton pole: in-band residue continuous down to gamma=0") {
  SinkGuard guard;
  // Transition inside the reststrahlen band: eps(1.05) ~ -8.76 - the TM
  // reflection has a pole on the evanescent path whose exact subtraction
  // must join smoothly onto the plain-quadrature path at moderate gamma.
  const AtomModel atom = AtomModel::two_level(1.05, 1.0, 0.5);
  const double z = 0.5;

  const cplx at_g4 =
      excited_residue(LorentzMedium{1.0, 1.0, 1e-4}, atom, 1, z, kQuad);
  const cplx at_g6 =
      excited_residue(LorentzMedium{1.0, 1.0, 1e-6}, atom, 1, z, kQuad);
  const cplx at_g0 =
      excited_residue(LorentzMedium{1.0, 1.0, 0.0}, atom, 1, z, kQuad);

  // Drift is linear in gamma; the step 1e-6 -> 0 must be ~100x smaller
  // than 1e-4 -> 1e-6.
  const double big = std::abs(at_g4 - at_g6);
  const double small = std::abs(at_g6 - at_g0);
  CHECK(small < 0.05 * big);
  CHECK(std::abs(at_g0) > 0.1); // finite, nontrivial limit

  // The pole bookkeeping itself: residue of r_tm at kappa_p.
  const cplx eps = permittivity(LorentzMedium{1.0, 1.0, 1e-12}, 1.05);
  const SurfacePolaritonPole sp = surface_polariton_pole(eps, 1.0);
  REQUIRE(sp.near_path);
  const ReflectionPair near =
      fresnel_kz(LorentzMedium{1.0, 1.0, 1e-12}, 1.05,
                 iunit * (sp.kappa + 1e-7));
  CHECK(std::abs(1e-7 * near.tm - sp.reflection_residue) <
        1e-5 * std::abs(sp.reflection_residue));

  // Out of the band there is no near-path pole.
  CHECK(!surface_polariton_pole(cplx{2.0, 0.1}, 1.0).near_path);
  CHECK(!surface_polariton_pole(cplx{-5.0, 2.0}, 1.0).near_path);
}

TEST_CASE("lossless limits of the residue part") {
  SinkGuard guard;
  // Below the absorption line Im eps = 0 at gamma = 0: the nonretarded
  // residue is purely real.
  const AtomModel atom = AtomModel::two_level(0.5, 1.0, 0.3);
  LorentzMedium lossless = kStd;
  lossless.gamma = 0.0;
  const cplx nr = excited_residue_nonretarded(lossless, atom, 1, 0.01);
  CHECK(nr.imag() == 0.0);
  CHECK(nr.real() < 0.0);

  // gamma -> 0 with real index: the full contour still matches the closed
  // retarded form built from a real n.
  const double z = 30.0;
  const cplx full = excited_residue(lossless, atom, 1, z, kQuad);
  const cplx closed = excited_residue_retarded(lossless, atom, 1, z);
  const double env = excited_residue_retarded_envelope(lossless, atom, 1, z);
  CHECK(std::abs(full - closed) < 0.05 * env);

  // Pure parallel dipole: leading 1/Z behaviour of the closed form.
  const AtomModel par_only = AtomModel::two_level(0.5, 1.0, 0.0);
  const double r1 =
      std::abs(excited_residue_retarded(lossless, par_only, 1, 40.0));
  const double r2 =
      std::abs(excited_residue_retarded(lossless, par_only, 1, 80.0));
  // Oscillatory factor has unit magnitude for real n, so the ratio is 2.
  CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("total shift assembly and rate bookkeeping") {
  SinkGuard guard;
  AtomModel atom;
  atom.add_level("g", 0.0);
  atom.add_level("m", 0.6);
  atom.add_level("e", 1.4);
  atom.set_dipole_sq(0, 2, DipoleSq{0.8, 0.1});
  atom.set_dipole_sq(1, 2, DipoleSq{0.4, 0.3});

  const double z = 0.8;
  const ShiftBreakdown sb = total_shift_and_rate(kStd, atom, 2, z, kQuad);
  CHECK(sb.per_transition.size() == 2);
  CHECK(sb.total_shift == sb.nonresidue + sb.residue.real());
  CHECK(sb.rate_change == -2.0 * sb.residue.imag());

  double sum_nr = 0.0;
  cplx sum_res{};
  for (const TransitionContribution& c : sb.per_transition) {
    sum_nr += c.nonresidue;
    sum_res += c.residue;
  }
  CHECK(sum_nr == sb.nonresidue);
  CHECK(std::abs(sum_res - sb.residue) == 0.0);

  // Ground state: residue empty, rate change exactly zero.
  const ShiftBreakdown ground = total_shift_and_rate(kStd, atom, 0, z, kQuad);
  CHECK(ground.residue == cplx{0.0, 0.0});
  CHECK(ground.rate_change == 0.0);

  // Consistency with the standalone entry points.
  CHECK(sb.nonresidue ==
        doctest::Approx(nonresidue_shift(kStd, atom, 2, z, kQuad))
            .epsilon(1e-12));
  const cplx res = excited_residue(kStd, atom, 2, z, kQuad);
  CHECK(std::abs(sb.residue - res) < 1e-12 * std::abs(res));
}

TEST_CASE("shifts and rates are linear in the dipole squares") {
  SinkGuard guard;
  const double s = 3.0, z = 0.6;
  const AtomModel base = AtomModel::two_level(1.0, 0.5, 0.25);
  const AtomModel scaled = AtomModel::two_level(1.0, s * 0.5, s * 0.25);

  const ShiftBreakdown a = total_shift_and_rate(kStd, base, 1, z, kQuad);
  const ShiftBreakdown b = total_shift_and_rate(kStd, scaled, 1, z, kQuad);
  CHECK(b.nonresidue == doctest::Approx(s * a.nonresidue).epsilon(1e-12));
  CHECK(b.total_shift == doctest::Approx(s * a.total_shift).epsilon(1e-12));
  CHECK(b.rate_change == doctest::Approx(s * a.rate_change).epsilon(1e-12));

  // Per-component linearity: parallel and perpendicular add independently.
  const double only_par =
      nonresidue_shift(kStd, AtomModel::two_level(1.0, 0.5, 0.0), 0, z, kQuad);
  const double only_perp =
      nonresidue_shift(kStd, AtomModel::two_level(1.0, 0.0, 0.25), 0, z,
                       kQuad);
  const double both = nonresidue_shift(kStd, base, 0, z, kQuad);
  CHECK(both == doctest::Approx(only_par + only_perp).epsilon(1e-10));
}

TEST_CASE("degenerate transitions are skipped with a diagnostic") {
  AtomModel atom;
  atom.add_level("a", 1.0);
  atom.add_level("b", 1.0);
  atom.set_dipole_sq(0, 1, DipoleSq{1.0, 0.0});

  int warnings = 0;
  static int* counter;
  counter = &warnings;
  WarningSink old = set_warning_sink(
      [](Warning code, const std::string&) {
        if (code == Warning::degenerate_transition) ++*counter;
      });
  const double shift = nonresidue_shift(kStd, atom, 0, 1.0, kQuad);
  set_warning_sink(old);
  CHECK(shift == 0.0);
  CHECK(warnings == 1);
}

TEST_CASE("normalized lifetime: vacuum, resonance peak, transparency") {
  SinkGuard guard;
  const AtomModel two = AtomModel::two_level(1.0, 1.0, 0.0);
  CHECK(normalized_lifetime_inverse(kVac, two, 1, 0, 0.1, kQuad) == 0.0);
  CHECK_THROWS_AS(normalized_lifetime_inverse(kStd, two, 0, 1, 0.1, kQuad),
                  DomainError);
  const AtomModel dark = [] {
    AtomModel a;
    a.add_level("g", 0.0);
    a.add_level("e", 1.0);
    return a;
  }();
  CHECK_THROWS_AS(normalized_lifetime_inverse(kStd, dark, 1, 0, 0.1, kQuad),
                  ZeroRateError);

  // Near-field peak sits at the surface-polariton resonance, the maximizer
  // of Im eps / |eps+1|^2 (~ sqrt(omega_T^2 + omega_P^2/2) for small gamma).
  LorentzMedium m5 = kStd;
  m5.gamma = 0.05;
  double peak_w = 0.0, peak_v = -1e300;
  for (double w = 0.9; w <= 1.55; w += 0.005) {
    const AtomModel a2 = AtomModel::two_level(w, 1.0, 0.0);
    const double ti = normalized_lifetime_inverse(m5, a2, 1, 0, 0.1, kQuad);
    if (ti > peak_v) {
      peak_v = ti;
      peak_w = w;
    }
  }
  CHECK(std::abs(peak_w - std::sqrt(1.5)) / std::sqrt(1.5) < 0.05);
  CHECK(peak_v > 100.0);

  // Transparency: the dielectric stops mattering at high frequencies.
  for (double w : {10.0, 15.0, 20.0}) {
    const AtomModel hi = AtomModel::two_level(w, 1.0, 0.0);
    CHECK(std::abs(normalized_lifetime_inverse(m5, hi, 1, 0, 0.1, kQuad)) <
          0.05);
  }
}

TEST_CASE("nonretarded decay rate closed form") {
  SinkGuard guard;
  const AtomModel atom = AtomModel::two_level(1.0, 1.0, 0.5);
  const double z = 0.5e-3;

  // Against the full contour.
  const ShiftBreakdown sb = total_shift_and_rate(kStd, atom, 1, z, kQuad);
  const double closed = decay_rate_change_nonretarded(kStd, atom, 1, z);
  CHECK(sb.rate_change == doctest::Approx(closed).epsilon(0.02));

  // Structure: (1/8 pi Z^3) Im eps / |eps+1|^2 (mu_par^2 + 2 mu_perp^2).
  const cplx eps = permittivity(kStd, 1.0);
  const double want = eps.imag() / std::norm(eps + 1.0) * (1.0 + 1.0) /
                      (8.0 * pi * z * z * z);
  CHECK(closed == doctest::Approx(want).epsilon(1e-12));

  // Lossless below the line: zero nonretarded rate change.
  LorentzMedium lossless{1.0, 1.0, 0.0};
  const AtomModel low = AtomModel::two_level(0.5, 1.0, 0.0);
  CHECK(decay_rate_change_nonretarded(lossless, low, 1, z) == 0.0);
}
