#pragma once

#include <vector>

#include "sllg/field.hpp"
#include "sllg/spectral.hpp"

namespace sllg {

// Physical parameters of the regularized stochastic Landau-Lifshitz-Gilbert
// equation
//   dm = (lambda m x (m x G) + m x G) dt + sum_k (m x h_k) o dB^k_t,
//   G(m) = eps^2 Lap^2 m - Lap m.
// G is the L2 gradient of the energy (the effective field is -G), so the
// lambda term moves m toward -G tangentially and dissipates the energy.
struct ModelParams {
  double lambda = 1.0;
  double epsilon = 0.1;
  // Driving directions h_k, one Brownian motion per entry. May be empty
  // (deterministic flow). Use default_params for the common single constant
  // field.
  std::vector<VectorField> noise_fields;
  // Evaluate the cross products on a 3/2 zero-padded grid. Off by default:
  // the sharp-truncation Galerkin scheme applies products on the native grid.
  bool dealias = false;
};

// lambda, epsilon plus a single constant noise field along e3.
ModelParams default_params(const TorusGrid& grid, double lambda,
                           double epsilon);

VectorField constant_field(const TorusGrid& grid, double x, double y,
                           double z);

// G plus the two torque terms entering the drift. Both torques are pointwise
// orthogonal to m by construction.
struct EffectiveTorque {
  VectorField gradient;    // G(m)
  VectorField precession;  // m x G
  VectorField damping;     // m x (m x G)
};

// G(m) = eps^2 Lap^2 m - Lap m, the first variation of energy().
VectorField variational_gradient(const VectorField& m, const ModelParams& p);

EffectiveTorque effective_torque(const VectorField& m, const ModelParams& p);

// lambda m x (m x G) + m x G. Honors p.dealias.
VectorField drift(const VectorField& m, const ModelParams& p);

// Pointwise m x h (the integrand of the Stratonovich term).
VectorField noise_operator(const VectorField& m, const VectorField& h);

// (1/2) sum_k (m x h_k) x h_k, the Stratonovich-to-Ito drift correction.
VectorField ito_correction(const VectorField& m, const ModelParams& p);

// (1/2) integral eps^2 |Lap m|^2 + |grad m|^2 dx, evaluated spectrally.
double energy(const VectorField& m, const ModelParams& p);

// <m x G(m), v> in the integration-by-parts form
//   eps^2 <Lap v x m, Lap m> + 2 eps^2 <d_j v x d_j m, Lap m> - <m x Lap m, v>
// which needs only two derivatives of m.
double weak_pairing_precession(const VectorField& m, const VectorField& v,
                               const ModelParams& p);

// <m x (m x G(m)), v>, same form with test function v x m:
//   eps^2 <Lap(v x m) x m, Lap m> + 2 eps^2 <d_j(v x m) x d_j m, Lap m>
//   - <m x (m x Lap m), v>.
double weak_pairing_damping(const VectorField& m, const VectorField& v,
                            const ModelParams& p);

// For pointwise-unit m (sup deviation <= 1e-6; derivative tangency then
// follows), <m x (m x Lap^2 m), v> equals
//   -<Lap v, Lap m> + <|Lap m|^2 m, v> - 2 <grad m (x) grad m, Hess(v . m)>
// where the last pairing contracts the matrices (d_j m . d_k m) and
// d_j d_k (v . m). Throws PreconditionError when the unit constraint fails.
double damping_identity_rhs(const VectorField& m, const VectorField& v);

}  // namespace sllg
