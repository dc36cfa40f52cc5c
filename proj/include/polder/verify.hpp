#pragma once

#include <string>
#include <vector>

#include "polder/medium.hpp"
#include "polder/quadrature.hpp"

namespace polder {

struct VerifySuiteResult {
  std::string name;
  int points = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

//! Built-in verification of the propagator construction:
//!   fresnel_identity  1 - r^2 = t t_L and r_L = -r (random sample)
//!   dyson_factor      numeric double z-integral vs r^2/(1-r^2)
//!   boundary          matching residuals of the piecewise propagator at z=0
//!   green_relation    D^(r)(Z; omega) = -omega^2 G^(r)(Z; |omega|)
//! corrupt_branch flips the medium root in the boundary suite (test hook);
//! a corrupted branch choice must make that suite fail.
std::vector<VerifySuiteResult> run_verification(const LorentzMedium& medium,
                                                const QuadratureConfig& quad,
                                                bool corrupt_branch = false);

bool all_pass(const std::vector<VerifySuiteResult>& results);

} // namespace polder
