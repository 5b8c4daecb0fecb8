#pragma once

// Shared utilities for the test suites: seeded random fields and closed-form
// reference constructions used as independent oracles.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "sllg/field.hpp"
#include "sllg/spectral.hpp"

namespace sllg::testing {

constexpr double kPi = 3.14159265358979323846264338327950288;

inline VectorField random_field(const TorusGrid& g, unsigned seed,
                                double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, amplitude);
  VectorField f(g);
  for (auto& c : f.comp)
    for (auto& v : c) v = dist(rng);
  return f;
}

inline ScalarField random_scalar(const TorusGrid& g, unsigned seed,
                                 double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, amplitude);
  ScalarField f(g);
  for (auto& v : f.values) v = dist(rng);
  return f;
}

// Band-limited smooth random data: white samples pushed through the
// (separately tested) shell projection.
inline VectorField random_band_limited(const TorusGrid& g, unsigned seed,
                                       long band_sq, double amplitude = 1.0) {
  return galerkin_project(random_field(g, seed, amplitude),
                          SpectralCutoff{band_sq});
}

inline ScalarField random_band_limited_scalar(const TorusGrid& g, unsigned seed,
                                              long band_sq,
                                              double amplitude = 1.0) {
  SpectralScalar s = to_spectral(random_scalar(g, seed, amplitude));
  project(s, SpectralCutoff{band_sq});
  return to_real(s);
}

// Rodrigues rotation of v about the unit axis u by angle theta.
inline std::array<double, 3> rotate_axis(const std::array<double, 3>& v,
                                         const std::array<double, 3>& u,
                                         double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double ud = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  const std::array<double, 3> ux = {u[1] * v[2] - u[2] * v[1],
                                    u[2] * v[0] - u[0] * v[2],
                                    u[0] * v[1] - u[1] * v[0]};
  std::array<double, 3> r;
  for (int i = 0; i < 3; ++i)
    r[i] = v[i] * c + ux[i] * s + u[i] * ud * (1.0 - c);
  return r;
}

// Least-squares slope of log(err) against log(dt). Expects matching sizes.
inline double loglog_slope(const std::vector<double>& dts,
                           const std::vector<double>& errs) {
  const std::size_t n = dts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(dts[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double d = static_cast<double>(n);
  return (d * sxy - sx * sy) / (d * sxx - sx * sx);
}

// max_i |a_i - b_i| over all components and grid points.
inline double max_abs_diff(const VectorField& a, const VectorField& b) {
  double worst = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a.comp[c].size(); ++i)
      worst = std::max(worst, std::abs(a.comp[c][i] - b.comp[c][i]));
  return worst;
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

}  // namespace sllg::testing
