#pragma once

#include <stdexcept>
#include <string>

namespace polder {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Evaluation hit a pole of the permittivity formula.
class PoleError : public Error {
public:
  using Error::Error;
};

// Argument outside the documented range of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// A denominator or normalization vanished within tolerance.
class DegenerateError : public Error {
public:
  using Error::Error;
};

// An integral failed to reach the requested tolerance.
class QuadratureError : public Error {
public:
  using Error::Error;
};

class NonConvergenceError : public QuadratureError {
public:
  using QuadratureError::QuadratureError;
};

// Tail of a semi-infinite integral does not decay at the declared rate.
class DecayMisdeclaredError : public QuadratureError {
public:
  using QuadratureError::QuadratureError;
};

// z-integral truncation impossible (Im k_zd too small).
class ConvergenceError : public Error {
public:
  using Error::Error;
};

class UnknownStateError : public Error {
public:
  using Error::Error;
};

// A would-be ground state has a downward or degenerate transition.
class ResonanceError : public Error {
public:
  using Error::Error;
};

class ZeroRateError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

// Non-fatal diagnostics. The default sink writes one line to stderr;
// set a null sink to silence, or a custom one to collect.
enum class Warning {
  branch_point,          // |q_par - |omega|| below tolerance
  underdamped_violated,  // gamma >= omega_T
  degenerate_transition, // omega_mi == 0 skipped in a shift sum
};

using WarningSink = void (*)(Warning, const std::string&);

WarningSink set_warning_sink(WarningSink sink); // returns previous sink
void warn(Warning code, const std::string& message);

} // namespace polder
