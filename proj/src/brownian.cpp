#include "sllg/brownian.hpp"

#include <cmath>
#include <string>

#include "sllg/rng.hpp"

namespace sllg {

BrownianPath sample_brownian(std::uint64_t seed, double horizon,
                             std::size_t steps, int n_noises) {
  if (!(horizon > 0.0))
    throw PreconditionError("sample_brownian: horizon must be positive");
  if (steps == 0)
    throw PreconditionError("sample_brownian: need at least one step");
  if (n_noises < 0)
    throw PreconditionError("sample_brownian: negative noise count");

  BrownianPath p;
  p.seed = seed;
  p.horizon = horizon;
  p.base_steps = steps;
  p.level = 0;
  p.n_noises = n_noises;
  p.increments.resize(static_cast<std::size_t>(n_noises) * steps);
  const double root_dt = std::sqrt(horizon / static_cast<double>(steps));
  for (int w = 0; w < n_noises; ++w)
    for (std::size_t i = 0; i < steps; ++i)
      p.increments[static_cast<std::size_t>(w) * steps + i] =
          root_dt * rng::normal(seed, rng::kBrownianBase,
                                static_cast<std::uint64_t>(w), 0, i);
  return p;
}

BrownianPath refine_brownian(const BrownianPath& path) {
  BrownianPath fine;
  fine.seed = path.seed;
  fine.horizon = path.horizon;
  fine.base_steps = path.base_steps;
  fine.level = path.level + 1;
  fine.n_noises = path.n_noises;

  const std::size_t coarse_steps = path.steps();
  fine.increments.resize(static_cast<std::size_t>(path.n_noises) * 2 *
                         coarse_steps);
  // Bridge offset has variance dt_coarse/4.
  const double half_root_dt = 0.5 * std::sqrt(path.dt());
  for (int w = 0; w < path.n_noises; ++w) {
    const std::size_t src = static_cast<std::size_t>(w) * coarse_steps;
    const std::size_t dst = static_cast<std::size_t>(w) * 2 * coarse_steps;
    for (std::size_t i = 0; i < coarse_steps; ++i) {
      const double v = path.increments[src + i];
      const double xi =
          half_root_dt * rng::normal(path.seed, rng::kBrownianBridge,
                                     static_cast<std::uint64_t>(w),
                                     static_cast<std::uint64_t>(fine.level), i);
      // Children sum back to v up to one rounding of the sibling; a bitwise
      // identity is not achievable in binary64 once |v - first| exceeds |v|.
      const double first = 0.5 * v + xi;
      fine.increments[dst + 2 * i] = first;
      fine.increments[dst + 2 * i + 1] = v - first;
    }
  }
  return fine;
}

}  // namespace sllg
