#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "polder/errors.hpp"
#include "polder/medium.hpp"

using namespace polder;

namespace {

int g_warnings = 0;
void counting_sink(Warning, const std::string&) { ++g_warnings; }

struct SinkGuard {
  WarningSink old;
  SinkGuard() : old(set_warning_sink(&counting_sink)) { g_warnings = 0; }
  ~SinkGuard() { set_warning_sink(old); }
};

const LorentzMedium kStd{1.0, 1.0, 0.1};

} // namespace

TEST_CASE("permittivity on the real axis") {
  CHECK(permittivity(kStd, 0.0) == cplx{2.0, 0.0});

  // At resonance the real denominator dies: 1 + i/(2 gamma omega_T).
  const cplx at_res = permittivity(kStd, 1.0);
  CHECK(at_res.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at_res.imag() == doctest::Approx(5.0).epsilon(1e-14));

  const LorentzMedium vac{1.0, 0.0, 0.1};
  for (double w : {0.0, 0.3, 1.0, 7.5})
    CHECK(permittivity(vac, w) == cplx{1.0, 0.0});
}

TEST_CASE("permittivity pole detection") {
  const LorentzMedium lossless{1.0, 1.0, 0.0};
  CHECK_THROWS_AS(permittivity(lossless, 1.0), PoleError);
  // Complex pole of the damped oscillator.
  const cplx pole = cplx{std::sqrt(1.0 - 0.01), 0.0} - cplx{0.0, 0.1};
  CHECK_THROWS_AS(permittivity(kStd, pole), PoleError);
}

TEST_CASE("parity of the real-axis response") {
  for (double w : {0.2, 0.7, 1.0, 2.9}) {
    const cplx p = permittivity(kStd, w);
    const cplx m = permittivity(kStd, -w);
    CHECK(p.real() == doctest::Approx(m.real()).epsilon(1e-14));
    CHECK(p.imag() == doctest::Approx(-m.imag()).epsilon(1e-14));
    CHECK(p.imag() > 0.0);
  }
}

TEST_CASE("imaginary-axis permittivity: values, bounds, monotonicity") {
  CHECK(permittivity_imag_axis(kStd, 0.0) == 2.0);
  CHECK(permittivity_imag_axis(kStd, 1.0) ==
        doctest::Approx(1.0 + 1.0 / 2.2).epsilon(1e-15));
  CHECK(permittivity_imag_axis(kStd, 1e9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(permittivity_imag_axis(kStd, -0.1), DomainError);

  // Log grid over 8 decades: real, bounded, non-increasing.
  double prev = permittivity_imag_axis(kStd, 1e-4);
  int points = 0;
  for (double lw = -4.0; lw <= 4.0; lw += 0.05) {
    const double e = permittivity_imag_axis(kStd, std::pow(10.0, lw));
    CHECK(e >= 1.0);
    CHECK(e <= kStd.static_permittivity());
    CHECK(e <= prev + 1e-15);
    prev = e;
    ++points;
  }
  CHECK(points >= 100);
}

TEST_CASE("xi is even and equals the real-axis permittivity") {
  for (double w : {0.0, 0.5, 1.3, 4.2}) {
    CHECK(xi(kStd, w) == xi(kStd, -w));
    CHECK(xi(kStd, w) == permittivity(kStd, std::abs(w)));
  }
  // Frozen spot value at omega = 0.5: 1 + 1/(0.75 - 0.1 i).
  const cplx v = xi(kStd, 0.5);
  CHECK(v.real() == doctest::Approx(2.31004366812227074).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(0.17467248908296943).epsilon(1e-14));

  const LorentzMedium vac{1.0, 0.0, 0.1};
  CHECK(xi(vac, 1.7) == cplx{1.0, 0.0});
}

TEST_CASE("refractive index branch and static values") {
  CHECK(refractive_index(kStd, 0.0).real() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(static_index(kStd) == std::sqrt(2.0));
  CHECK(static_index(LorentzMedium{1.0, 0.0, 0.0}) == 1.0);
  CHECK(static_index(LorentzMedium{2.0, 1.0, 0.0}) ==
        doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));

  const LorentzMedium vac{1.0, 0.0, 0.3};
  CHECK(refractive_index(vac, 0.9) == cplx{1.0, 0.0});

  for (double w = 0.05; w < 6.0; w += 0.05) {
    const cplx n = refractive_index(kStd, w);
    CHECK(n.imag() >= 0.0);
    // n^2 reproduces the permittivity.
    const cplx eps = permittivity(kStd, w);
    CHECK(std::abs(n * n - eps) < 1e-13 * std::abs(eps));
  }
}

TEST_CASE("vacuum degeneracy: omega_P = 0 forces unit response everywhere") {
  const LorentzMedium vac{1.3, 0.0, 0.2};
  CHECK(permittivity(vac, cplx{0.4, 0.7}) == cplx{1.0, 0.0});
  CHECK(permittivity_imag_axis(vac, 2.2) == 1.0);
  CHECK(xi(vac, -0.8) == cplx{1.0, 0.0});
  CHECK(static_index(vac) == 1.0);
}

TEST_CASE("derived model accessors") {
  CHECK(kStd.static_permittivity() == 2.0);
  CHECK(kStd.oscillator_mass() == 1.0);
  // rho_nu = 4 M gamma / (pi nu^2)
  CHECK(kStd.bath_density(2.0) ==
        doctest::Approx(4.0 * 0.1 / (pi * 4.0)).epsilon(1e-15));
}

TEST_CASE("validation and the underdamped warning") {
  SinkGuard guard;
  LorentzMedium ok = kStd;
  ok.validate();
  CHECK(g_warnings == 0);

  LorentzMedium overdamped{1.0, 1.0, 1.5};
  overdamped.validate();
  CHECK(g_warnings == 1);

  LorentzMedium bad{0.0, 1.0, 0.1};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  LorentzMedium neg{1.0, -0.5, 0.1};
  CHECK_THROWS_AS(neg.validate(), DomainError);
}

TEST_CASE("dyson kernel matches its defining relation") {
  for (double w : {0.3, 0.9, 2.0}) {
    const cplx x = xi(kStd, w);
    const cplx k = dyson_kernel(kStd, w);
    CHECK(std::abs(x - 1.0 / (1.0 + k)) < 1e-15);
  }
}
