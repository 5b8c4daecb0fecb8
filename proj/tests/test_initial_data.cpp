#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sllg/initial_data.hpp"
#include "sllg/model.hpp"
#include "sllg/spectral.hpp"

using namespace sllg;
using sllg::testing::kPi;

TEST_CASE("smoothstep is a flat-ended monotone ramp") {
  CHECK(smoothstep_flat(-0.5) == 0.0);
  CHECK(smoothstep_flat(0.0) == 0.0);
  CHECK(smoothstep_flat(1.0) == 1.0);
  CHECK(smoothstep_flat(2.0) == 1.0);
  CHECK(smoothstep_flat(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(smoothstep_flat(0.01) < 1e-40);       // flat near 0
  CHECK(1.0 - smoothstep_flat(0.99) < 1e-40);  // flat near 1
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = smoothstep_flat(i / 100.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("constant ansatz is uniform, unit and energy-free") {
  const TorusGrid g{2, 8};
  VectorField m = make_constant(g, {0.0, 0.0, 2.5});  // normalized internally
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(m.comp[0][i] == 0.0);
    CHECK(m.comp[1][i] == 0.0);
    CHECK(m.comp[2][i] == 1.0);
  }
  ModelParams p = default_params(g, 1.0, 0.1);
  CHECK(energy(m, p) < 1e-25);
  CHECK(l2_norm(drift(m, p)) < 1e-12);
  CHECK_THROWS_AS(make_constant(g, {0.0, 0.0, 0.0}), PreconditionError);
}

TEST_CASE("single harmonic matches its closed form") {
  const TorusGrid g{2, 16};
  VectorField m = make_single_harmonic(g, {1, 0, 0});
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(g.coords(i)[0]);
    CHECK(m.comp[0][i] == doctest::Approx(std::cos(2 * kPi * x)).epsilon(1e-15));
    CHECK(m.comp[1][i] == doctest::Approx(std::sin(2 * kPi * x)).epsilon(1e-15));
    CHECK(m.comp[2][i] == 0.0);
  }
  CHECK(sup_unit_deviation(m) < 1e-15);

  // The variational gradient is parallel to m, so the drift vanishes.
  ModelParams p = default_params(g, 1.0, 0.1);
  CHECK(l2_norm(drift(m, p)) < 1e-9);

  // Energy closed form for |k|^2 = 2.
  VectorField diag = make_single_harmonic(g, {1, 1, 0}, {1, 2});
  const double ksq = 2.0;
  const double expected = 0.5 * (4 * kPi * kPi * ksq +
                                 16 * std::pow(kPi, 4) * p.epsilon *
                                     p.epsilon * ksq * ksq);
  CHECK(energy(diag, p) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(diag.comp[0][0] == 0.0);  // circle lives in the requested axis pair

  CHECK_THROWS_AS(make_single_harmonic(g, {0, 0, 0}), PreconditionError);
  CHECK_THROWS_AS(make_single_harmonic(g, {0, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(make_single_harmonic(g, {1, 0, 0}, {1, 1}),
                  PreconditionError);
}

TEST_CASE("perturbed constant is unit, seeded and band-limited") {
  const TorusGrid g{2, 16};
  VectorField a = make_perturbed_constant(g, 7, 0.2, 2);
  VectorField b = make_perturbed_constant(g, 7, 0.2, 2);
  VectorField c = make_perturbed_constant(g, 8, 0.2, 2);
  for (int comp = 0; comp < 3; ++comp) CHECK(a.comp[comp] == b.comp[comp]);
  CHECK(sllg::testing::max_abs_diff(a, c) > 1e-3);  // seeds matter
  CHECK(sup_unit_deviation(a) < 1e-12);

  // Deviation from e3 is bounded by the requested amplitude (normalizing a
  // field of the form e3 + p with |p| <= amp cannot push it further away).
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    dev = std::max(dev, std::abs(a.comp[2][i] - 1.0) + std::abs(a.comp[0][i]) +
                            std::abs(a.comp[1][i]));
  CHECK(dev > 0.05);  // genuinely perturbed
  CHECK(dev < 0.75);

  VectorField flat = make_perturbed_constant(g, 7, 0.0, 2);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(flat.comp[2][i] == 1.0);

  // Tangency: m . d_j m vanishes to spectral accuracy on unit fields.
  for (int axis = 0; axis < 2; ++axis)
    CHECK(l2_norm(dot(a, derivative(a, axis))) < 1e-6);

  CHECK_THROWS_AS(make_perturbed_constant(g, 1, 0.5, 2), PreconditionError);
  CHECK_THROWS_AS(make_perturbed_constant(g, 1, -0.1, 2), PreconditionError);
}

TEST_CASE("2D skyrmion has exact far field, center and unit length") {
  const TorusGrid g{2, 32};
  const double R = 0.3;
  VectorField m = make_skyrmion_2d(g, {0.5, 0.5}, R, +1);
  CHECK(sup_unit_deviation(m) < 1e-12);

  std::size_t outside = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto cc = g.coords(i);
    const double dx = g.coordinate(cc[0]) - 0.5;
    const double dy = g.coordinate(cc[1]) - 0.5;
    if (std::hypot(dx, dy) >= R) {
      ++outside;
      CHECK(m.comp[0][i] == 0.0);
      CHECK(m.comp[1][i] == 0.0);
      CHECK(m.comp[2][i] == 1.0);
    }
  }
  CHECK(outside > 0);
  // The grid hits the center exactly; the core points to -e3 there.
  const std::size_t center = g.index(16, 16);
  CHECK(m.comp[2][center] == -1.0);

  CHECK_THROWS_AS(make_skyrmion_2d(g, {0.5, 0.5}, 0.0, 1), PreconditionError);
  CHECK_THROWS_AS(make_skyrmion_2d(g, {0.5, 0.5}, 0.5, 1), PreconditionError);
  CHECK_THROWS_AS(make_skyrmion_2d(g, {0.5, 0.5}, 0.3, 2), PreconditionError);
  CHECK_THROWS_AS(make_skyrmion_2d(TorusGrid{3, 8}, {0.5, 0.5}, 0.3, 1),
                  PreconditionError);
}

TEST_CASE("closed twisted string has exact far field and unit length") {
  const TorusGrid g{3, 16};
  const double R = 0.45;
  VectorField m = make_twisted_skyrmion_string_3d(g, {0.5, 0.5, 0.5}, R, 1);
  CHECK(sup_unit_deviation(m) < 1e-12);

  std::size_t outside = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto cc = g.coords(i);
    double rho_sq = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double d = g.coordinate(cc[a]) - 0.5;
      rho_sq += d * d;
    }
    if (std::sqrt(rho_sq) >= R) {
      ++outside;
      CHECK(m.comp[0][i] == 0.0);
      CHECK(m.comp[1][i] == 0.0);
      CHECK(m.comp[2][i] == 1.0);
    }
  }
  CHECK(outside > 0);

  CHECK_THROWS_AS(
      make_twisted_skyrmion_string_3d(g, {0.5, 0.5, 0.5}, 0.6, 1),
      PreconditionError);
  CHECK_THROWS_AS(
      make_twisted_skyrmion_string_3d(TorusGrid{2, 8}, {0.5, 0.5, 0.5}, 0.3,
                                      1),
      PreconditionError);
}

TEST_CASE("ansatz dispatch and naming round-trip") {
  for (AnsatzKind k :
       {AnsatzKind::kConstant, AnsatzKind::kSingleHarmonic,
        AnsatzKind::kPerturbedConstant, AnsatzKind::kSkyrmion2d,
        AnsatzKind::kTwistedSkyrmionString3d})
    CHECK(parse_ansatz(ansatz_name(k)) == k);
  CHECK_THROWS_AS(parse_ansatz("spiral"), PreconditionError);

  const TorusGrid g{2, 16};
  AnsatzSpec spec;
  spec.kind = AnsatzKind::kPerturbedConstant;
  spec.seed = 7;
  spec.amplitude = 0.2;
  spec.band_sq = 2;
  VectorField via_spec = build_ansatz(g, spec);
  VectorField direct = make_perturbed_constant(g, 7, 0.2, 2);
  for (int c = 0; c < 3; ++c) CHECK(via_spec.comp[c] == direct.comp[c]);

  spec.kind = AnsatzKind::kSkyrmion2d;
  spec.radius = 0.3;
  VectorField sk = build_ansatz(g, spec);
  VectorField sk_direct = make_skyrmion_2d(g, {0.5, 0.5}, 0.3, 1);
  for (int c = 0; c < 3; ++c) CHECK(sk.comp[c] == sk_direct.comp[c]);
}
