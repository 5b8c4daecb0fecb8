#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "sllg/errors.hpp"

namespace sllg {

// Discretized driving noise: independent scalar Brownian increments per
// noise channel over [0, horizon]. Stored increment-wise, noise-major.
// Refinement inserts Brownian-bridge midpoints; the two children of an
// increment sum back to it up to one rounding (~1 ulp), so time-step
// studies can reuse one path across resolutions.
struct BrownianPath {
  std::uint64_t seed = 0;
  double horizon = 0.0;
  std::size_t base_steps = 0;  // steps at refinement level 0
  int level = 0;               // number of refinements applied
  int n_noises = 1;
  std::vector<double> increments;

  std::size_t steps() const { return base_steps << level; }
  double dt() const { return horizon / static_cast<double>(steps()); }

  double increment(int noise, std::size_t i) const {
    return increments[static_cast<std::size_t>(noise) * steps() + i];
  }

  // B(horizon) for one channel (left-to-right sum, deterministic).
  double total(int noise) const {
    double acc = 0.0;
    const std::size_t m = steps();
    for (std::size_t i = 0; i < m; ++i) acc += increment(noise, i);
    return acc;
  }
};

BrownianPath sample_brownian(std::uint64_t seed, double horizon,
                             std::size_t steps, int n_noises = 1);

// One halving of the step size. Children of increment v are v/2 + xi and
// v - (v/2 + xi) with xi ~ N(0, dt/4) addressed by (seed, level, index).
BrownianPath refine_brownian(const BrownianPath& path);

}  // namespace sllg
