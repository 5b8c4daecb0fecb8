#pragma once

#include <cstdint>

namespace sllg {

// Counter-based Gaussian generator. Every draw is a pure function of
// (seed, stream, a, b, c), so noise can be addressed by position instead of
// sequence: path refinement, parallel generation and replay all reproduce
// bit-identically from the seed.
namespace rng {

// Stream ids keep unrelated consumers statistically independent.
inline constexpr std::uint64_t kBrownianBase = 1;
inline constexpr std::uint64_t kBrownianBridge = 2;
inline constexpr std::uint64_t kAnsatz = 3;
inline constexpr std::uint64_t kNoiseField = 4;
inline constexpr std::uint64_t kExperiment = 5;

std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t a, std::uint64_t b, std::uint64_t c);

// Uniform in the open interval (0,1).
double uniform01(std::uint64_t h);

// Standard normal addressed by counters (Box-Muller on two sub-hashes).
double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
              std::uint64_t b, std::uint64_t c);

}  // namespace rng
}  // namespace sllg
