#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "sllg/field.hpp"
#include "sllg/integrate.hpp"

namespace sllg {

// Result of a numerical homotopy-invariant evaluation. `raw` is the computed
// integral, `nearest` the closest integer, `residual` their gap -- reported
// honestly rather than snapped. `fluxes` carries the mean flux of the
// pullback area form through the three coordinate 2-tori (3D only); the
// invariant is defined only when all of them vanish.
struct InvariantReport {
  double raw = 0.0;
  long nearest = 0;
  double residual = 0.0;
  int resolution = 0;
  std::array<double, 3> fluxes{0.0, 0.0, 0.0};
  bool certified = false;
};

// Topological degree of m: T^2 -> S^2,
//   Q = (1/4pi) int m . (d1 m x d2 m) dx,
// evaluated with spectral derivatives. The field is normalized internally;
// sup ||m|-1| must be below 0.1.
InvariantReport degree_2d(const VectorField& m);

// Hopf invariant of m: T^3 -> S^2 through the Whitehead integral: solve
// curl A = b for the divergence-free zero-mean potential of the emergent
// field b and return (1/16pi^2) <A, b>. Throws FluxObstructionError when the
// mean flux of the pullback form through some coordinate 2-torus exceeds
// 1e-6 in magnitude -- no periodic potential exists in that case.
InvariantReport hopf_invariant_3d(const VectorField& m);

// Emergent field of a unit vector field (d = 3): b_i = (1/2) eps_{ijk}
// m . (d_j m x d_k m); its components are the fluxes of the pullback of the
// sphere's area form.
VectorField emergent_field(const VectorField& m);

// Divergence-free, zero-mean A with curl A = b, computed mode-by-mode in
// Fourier space. Any mean (flux) part of b is outside the range of the curl
// and is ignored; callers gate on the fluxes first.
VectorField curl_potential(const VectorField& b);

// Whitehead helicity integral (1/16pi^2) <a, b>_{L2}.
double whitehead_integral(const VectorField& a, const VectorField& b);

// Certification by successive refinement: the fine report is certified when
// both evaluations agree on the nearest integer and both residuals are below
// the threshold.
InvariantReport certify_pair(const InvariantReport& coarse,
                             const InvariantReport& fine, double threshold);

// Invariant values along a trajectory's snapshots.
struct InvariantSeries {
  std::vector<double> times;
  std::vector<double> values;
  double max_drift = 0.0;  // max_t |value(t) - value(0)|
};

// Evaluate `invariant` on every stride-th snapshot (always including the
// first and last). Flux obstructions are rethrown with the snapshot time
// attached.
InvariantSeries track_invariant(
    const Trajectory& tr,
    const std::function<InvariantReport(const VectorField&)>& invariant,
    std::size_t stride = 1);

}  // namespace sllg
