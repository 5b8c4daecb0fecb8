#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "sllg/grid.hpp"

namespace sllg {

// Real 3-component field sampled on a torus grid. Values are samples of a
// map T^dim -> R^3; unit-sphere constraints are enforced by callers.
struct VectorField {
  TorusGrid grid;
  std::array<std::vector<double>, 3> comp;

  VectorField() = default;
  explicit VectorField(const TorusGrid& g) : grid(g) {
    for (auto& c : comp) c.assign(g.size(), 0.0);
  }
};

// Real scalar field on the same grids (dot products, energy densities, ...).
struct ScalarField {
  TorusGrid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const TorusGrid& g) : grid(g), values(g.size(), 0.0) {}
};

// Fourier coefficients of a VectorField, same flattened slot layout as the
// real samples. Coefficients satisfy Hermitian symmetry for real fields.
struct SpectralField {
  TorusGrid grid;
  std::array<std::vector<std::complex<double>>, 3> comp;

  SpectralField() = default;
  explicit SpectralField(const TorusGrid& g) : grid(g) {
    for (auto& c : comp) c.assign(g.size(), {0.0, 0.0});
  }
};

struct SpectralScalar {
  TorusGrid grid;
  std::vector<std::complex<double>> values;

  SpectralScalar() = default;
  explicit SpectralScalar(const TorusGrid& g)
      : grid(g), values(g.size(), {0.0, 0.0}) {}
};

// ---- pointwise algebra ----------------------------------------------------

inline VectorField cross(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid, b.grid, "cross");
  VectorField r(a.grid);
  const std::size_t m = a.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a0 = a.comp[0][i], a1 = a.comp[1][i], a2 = a.comp[2][i];
    const double b0 = b.comp[0][i], b1 = b.comp[1][i], b2 = b.comp[2][i];
    r.comp[0][i] = a1 * b2 - a2 * b1;
    r.comp[1][i] = a2 * b0 - a0 * b2;
    r.comp[2][i] = a0 * b1 - a1 * b0;
  }
  return r;
}

inline ScalarField dot(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid, b.grid, "dot");
  ScalarField r(a.grid);
  const std::size_t m = a.grid.size();
  for (std::size_t i = 0; i < m; ++i)
    r.values[i] = a.comp[0][i] * b.comp[0][i] + a.comp[1][i] * b.comp[1][i] +
                  a.comp[2][i] * b.comp[2][i];
  return r;
}

// r += s * f
inline void axpy(VectorField& r, double s, const VectorField& f) {
  require_same_grid(r.grid, f.grid, "axpy");
  const std::size_t m = r.grid.size();
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < m; ++i) r.comp[c][i] += s * f.comp[c][i];
}

inline void scale(VectorField& f, double s) {
  for (auto& c : f.comp)
    for (auto& v : c) v *= s;
}

inline VectorField scaled(const VectorField& f, double s) {
  VectorField r = f;
  scale(r, s);
  return r;
}

// r += s * (w pointwise-times f), used for terms like (m,G) m.
inline void axpy_scalar_times(VectorField& r, double s, const ScalarField& w,
                              const VectorField& f) {
  require_same_grid(r.grid, f.grid, "axpy_scalar_times");
  require_same_grid(r.grid, w.grid, "axpy_scalar_times");
  const std::size_t m = r.grid.size();
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < m; ++i)
      r.comp[c][i] += s * w.values[i] * f.comp[c][i];
}

// Pointwise Euclidean normalization m <- m/|m|. Throws if |m| collapses.
VectorField normalized(const VectorField& f, double min_norm = 0.5);

// sup_x | |m(x)| - 1 |, the pointwise sphere-constraint defect.
inline double sup_unit_deviation(const VectorField& f) {
  double worst = 0.0;
  const std::size_t m = f.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double norm =
        std::sqrt(f.comp[0][i] * f.comp[0][i] + f.comp[1][i] * f.comp[1][i] +
                  f.comp[2][i] * f.comp[2][i]);
    worst = std::max(worst, std::abs(norm - 1.0));
  }
  return worst;
}

inline bool all_finite(const VectorField& f) {
  for (const auto& c : f.comp)
    for (double v : c)
      if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace sllg
