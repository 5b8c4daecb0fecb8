#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "sllg/field.hpp"

namespace sllg {

// Families of admissible initial fields: unit-length, smooth, and -- for the
// soliton families -- topologically nontrivial.
enum class AnsatzKind {
  kConstant,
  kSingleHarmonic,
  kPerturbedConstant,
  kSkyrmion2d,
  kTwistedSkyrmionString3d,
};

// Canonical config-file names ("constant", "single-harmonic", ...).
const char* ansatz_name(AnsatzKind kind);
AnsatzKind parse_ansatz(const std::string& name);

// Bag of parameters covering every ansatz family; each constructor reads the
// fields relevant to it and ignores the rest.
struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::kConstant;

  std::array<double, 3> direction{0.0, 0.0, 1.0};  // constant

  std::array<int, 3> wavevector{1, 0, 0};  // single-harmonic
  std::array<int, 2> axis_pair{0, 1};

  std::uint64_t seed = 0;  // perturbed-constant
  double amplitude = 0.1;
  long band_sq = 2;

  std::array<double, 3> center{0.5, 0.5, 0.5};  // soliton families
  double radius = 0.25;
  int sign = 1;    // 2D: topological charge sign
  int twists = 1;  // 3D: twist count = Hopf charge
};

// Uniform field along `direction` (normalized internally).
// Throws PreconditionError when the direction is (numerically) zero.
VectorField make_constant(const TorusGrid& g,
                          const std::array<double, 3>& direction);

// m(x) = cos(2 pi k.x) e_a + sin(2 pi k.x) e_b for the requested axis pair.
// Unit length at every node; a stationary state of the deterministic flow
// since the variational gradient is then parallel to m.
VectorField make_single_harmonic(const TorusGrid& g,
                                 const std::array<int, 3>& k,
                                 const std::array<int, 2>& axis_pair = {0, 1});

// Constant e3 plus a seeded band-limited perturbation rescaled to sup-norm
// `amplitude`, then normalized pointwise. Requires amplitude < 0.5 so the
// field stays away from zero before normalization.
VectorField make_perturbed_constant(const TorusGrid& g, std::uint64_t seed,
                                    double amplitude, long band_sq);

// Compactly supported 2D skyrmion: radial profile theta(r) falling smoothly
// from pi at `center` to 0 at `radius` (flat at both ends, so the field is
// C-infinity and exactly e3 outside the disk). sign = +1 gives degree +1.
// Requires d = 2 and 0 < radius < 1/2.
VectorField make_skyrmion_2d(const TorusGrid& g,
                             const std::array<double, 2>& center,
                             double radius, int sign);

// Closed twisted skyrmion string (hopfion). A skyrmion tube closed into a
// loop inside the ball of the given radius, its internal phase making
// `twists` full turns along the loop; built as a degree-`twists` suspension
// of the direction sphere composed with the standard fibration S^3 -> S^2.
// The field is exactly e3 outside the ball, so the flux of the pullback area
// form through every coordinate 2-torus vanishes and the Hopf invariant is
// well-defined; it equals `twists`. Requires d = 3 and 0 < radius < 1/2.
VectorField make_twisted_skyrmion_string_3d(const TorusGrid& g,
                                            const std::array<double, 3>& center,
                                            double radius, int twists);

// Dispatch on spec.kind.
VectorField build_ansatz(const TorusGrid& g, const AnsatzSpec& spec);

// C-infinity monotone step: 0 for t <= 0, 1 for t >= 1, flat at both ends.
double smoothstep_flat(double t);

}  // namespace sllg
