#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sllg/brownian.hpp"
#include "sllg/field.hpp"
#include "sllg/model.hpp"
#include "sllg/spectral.hpp"

namespace sllg {

enum class Scheme {
  kStratonovichHeun,   // predictor-corrector on the Stratonovich form
  kItoEulerCorrected,  // Euler-Maruyama on the Ito form with the correction
  kImexHeun,           // stiff linear part implicit in Fourier space
};

// Canonical config-file / CLI names: "stratonovich-heun",
// "ito-euler-corrected", "imex-heun".
std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);  // throws ConfigError

struct SchemeConfig {
  Scheme scheme = Scheme::kStratonovichHeun;
  // Step size; 0 means "derive from the driving path" (horizon / steps).
  // A positive value must match the path-derived one.
  double dt = 0.0;
  // Pointwise projection m <- m/|m| after each completed step. Off by
  // default: the Galerkin flow preserves only the L2 norm, and the sphere
  // constraint is a property of the continuum limit.
  bool renormalize = false;
  SpectralCutoff galerkin_cutoff{};  // default: keep every mode
  // Diagnostic toggle for the Ito-form Euler scheme only: disabling it drops
  // the Stratonovich-to-Ito drift correction, which biases the dynamics and
  // exists purely so cross-validation studies can demonstrate that bias.
  bool ito_correction = true;
  // Allowed relative slack in the per-step monotone L2 bound
  // ||m(t)|| <= ||m0||. The default matches the acceptance tolerance; sweeps
  // that deliberately run coarse steps may loosen it.
  double l2_slack = 1e-6;
};

// What integrate() keeps while marching. Snapshots at t=0 and t=T are always
// stored; snapshot_stride > 0 adds interior states every so many steps.
struct ObserverConfig {
  std::size_t snapshot_stride = 0;
  std::size_t record_stride = 1;  // scalar series sampling interval
  std::function<void(std::size_t step, double t, const VectorField& m)>
      callback;  // optional, invoked at record times
};

// Scalar time series plus stored states of one run.
struct Trajectory {
  std::vector<double> times;  // record times, starting at 0
  std::vector<double> l2_norms;
  std::vector<double> energies;
  std::vector<double> unit_deviations;  // sup | |m|-1 |

  std::vector<double> snapshot_times;
  std::vector<VectorField> snapshots;  // first = projected m0, last = m(T)

  const VectorField& initial_state() const { return snapshots.front(); }
  const VectorField& final_state() const { return snapshots.back(); }
};

// One step of each scheme. m must already be band-limited to the configured
// cutoff (integrate() maintains this); db carries one increment per noise
// field. The returned state is Galerkin-projected, then optionally
// renormalized.
VectorField step_heun(const VectorField& m, const ModelParams& p,
                      const SchemeConfig& sc, std::span<const double> db);
VectorField step_euler_ito(const VectorField& m, const ModelParams& p,
                           const SchemeConfig& sc, std::span<const double> db);
VectorField step_imex_heun(const VectorField& m, const ModelParams& p,
                           const SchemeConfig& sc, std::span<const double> db);

// March m0 to the path horizon. m0 must be pointwise unit to 1e-6; it is
// then Galerkin-projected and the projected state seeds the run. Throws
// NumericalBlowupError on non-finite values and L2BoundViolationError when
// ||m|| exceeds ||m0|| beyond the configured slack (both carry the step).
Trajectory integrate(const VectorField& m0, const ModelParams& p,
                     const BrownianPath& path, const SchemeConfig& sc,
                     const ObserverConfig& obs = {});

}  // namespace sllg
