#pragma once

#include <complex>
#include <vector>

#include "sllg/field.hpp"
#include "sllg/grid.hpp"

namespace sllg {

// Galerkin cutoff by eigenvalue radius: keep modes with |k|^2 <= radius_sq.
// The kept set is a union of whole spherical shells, so it does not depend
// on any mode ordering. radius_sq < 0 keeps every mode.
struct SpectralCutoff {
  long radius_sq = -1;

  bool keeps(long ksq) const { return radius_sq < 0 || ksq <= radius_sq; }
  bool keeps_all(const TorusGrid& g) const {
    if (radius_sq < 0) return true;
    long nyq = static_cast<long>(g.n / 2) * (g.n / 2);
    return radius_sq >= nyq * g.dim;
  }
};

// Cached table of |k|^2 per spectral slot for a grid (shared, thread-safe).
const std::vector<long>& wavevector_sq_table(const TorusGrid& g);

// ---- transforms -------------------------------------------------------------
// Forward transforms carry the 1/n^dim factor, so coefficients c_k satisfy
// f(x_j) = sum_k c_k e^{2 pi i k.x_j} and Parseval reads
// (1/n^d) sum_x |f(x)|^2 = sum_k |c_k|^2.

SpectralField to_spectral(const VectorField& f);
VectorField to_real(const SpectralField& f);  // drops imaginary round-off
SpectralScalar to_spectral(const ScalarField& f);
ScalarField to_real(const SpectralScalar& f);

// ---- differential operators -------------------------------------------------

VectorField laplacian(const VectorField& f);
VectorField bilaplacian(const VectorField& f);
ScalarField laplacian(const ScalarField& f);

// Spectral derivative along one axis (0-based). Nyquist uses the signed
// representative +n/2; the real part of the inverse transform is returned.
VectorField derivative(const VectorField& f, int axis);
ScalarField derivative(const ScalarField& f, int axis);
SpectralField derivative(const SpectralField& f, int axis);
SpectralScalar derivative(const SpectralScalar& f, int axis);

// Mixed second derivative of a scalar field, d^2 f / dx_a dx_b.
ScalarField second_derivative(const ScalarField& f, int a, int b);

// Apply an isotropic Fourier multiplier mult(|k|^2) in place.
template <class F>
void apply_isotropic(SpectralField& f, F&& mult) {
  const auto& ksq = wavevector_sq_table(f.grid);
  for (auto& c : f.comp)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= mult(ksq[i]);
}

template <class F>
void apply_isotropic(SpectralScalar& f, F&& mult) {
  const auto& ksq = wavevector_sq_table(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] *= mult(ksq[i]);
}

// ---- projection and resampling ----------------------------------------------

void project(SpectralField& f, const SpectralCutoff& cutoff);
void project(SpectralScalar& f, const SpectralCutoff& cutoff);
VectorField galerkin_project(const VectorField& f, const SpectralCutoff& cutoff);

// Spectral zero-padding / truncation to a new resolution. Enlarging splits
// Nyquist coefficients across +n/2 and -n/2 so real fields stay real;
// shrinking folds them back, making round trips exact on band-limited data.
SpectralField embed(const SpectralField& f, int n_new);
VectorField resample(const VectorField& f, int n_new);

// ---- norms -------------------------------------------------------------------
// All reductions run in flattened slot order so results are reproducible.

double l2_norm(const VectorField& f);
double l2_norm(const ScalarField& f);
double l2_inner(const VectorField& a, const VectorField& b);
double l2_inner(const ScalarField& a, const ScalarField& b);
double linf_norm(const VectorField& f);  // max Euclidean magnitude
double linf_norm(const ScalarField& f);  // max absolute value

// Canonical Sobolev norm with multiplier (1 + 4 pi^2 |k|^2)^s.
double sobolev_norm(const VectorField& f, double s);
double sobolev_norm(const ScalarField& f, double s);

// Derivative-sum convention sum_{j<=s} ||D^j f||_{L2}^2 for integer s >= 0.
double sobolev_norm_dsum(const VectorField& f, int s);
double sobolev_norm_dsum(const ScalarField& f, int s);

// Homogeneous seminorm ||D^s f||_{L2} for integer s >= 0.
double sobolev_seminorm(const VectorField& f, int s);
double sobolev_seminorm(const ScalarField& f, int s);

}  // namespace sllg
