#include "sllg/rng.hpp"

#include <cmath>

namespace sllg::rng {
namespace {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix(seed ^ 0xd1b54a32d192ed03ULL);
  h = mix(h ^ stream);
  h = mix(h ^ a);
  h = mix(h ^ b);
  h = mix(h ^ c);
  return h;
}

double uniform01(std::uint64_t h) {
  // 53 high bits, offset by half an ulp: strictly inside (0,1).
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
              std::uint64_t b, std::uint64_t c) {
  const double u1 = uniform01(hash_counter(seed, stream, a, b, 2 * c));
  const double u2 = uniform01(hash_counter(seed, stream, a, b, 2 * c + 1));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace sllg::rng
