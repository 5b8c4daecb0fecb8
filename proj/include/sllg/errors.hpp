#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sllg {

// Base class for all library errors so callers can catch sllg failures
// without swallowing unrelated std exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two fields live on incompatible grids (dimension or resolution differ).
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

// A constructor or operation received arguments outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Non-finite values appeared in the state during time stepping.
class NumericalBlowupError : public Error {
 public:
  NumericalBlowupError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_ = 0;
};

// The discrete L2 norm exceeded the monotone bound beyond the allowed slack.
class L2BoundViolationError : public Error {
 public:
  L2BoundViolationError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_ = 0;
};

// The pullback 2-form has a nonzero period, so no periodic vector potential
// exists and the 3D invariant is undefined for this field.
class FluxObstructionError : public Error {
 public:
  FluxObstructionError(const std::string& what, double worst_flux)
      : Error(what), worst_flux_(worst_flux) {}
  double worst_flux() const { return worst_flux_; }

 private:
  double worst_flux_ = 0.0;
};

// Malformed config file, unknown key, or invalid value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Snapshot / report file problems: bad magic, version, checksum, truncation.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sllg
