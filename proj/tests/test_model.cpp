#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "sllg/errors.hpp"
#include "sllg/model.hpp"
#include "helpers.hpp"

using namespace sllg;
using sllg::testing::kPi;

namespace {

VectorField single_harmonic_x1(const TorusGrid& g) {
  VectorField m(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(g.coords(i)[0]);
    m.comp[0][i] = std::cos(2.0 * kPi * x);
    m.comp[1][i] = std::sin(2.0 * kPi * x);
    m.comp[2][i] = 0.0;
  }
  return m;
}

// Direct grid evaluation of <m x G, v> and <m x (m x G), v>.
double direct_precession(const VectorField& m, const VectorField& v,
                         const ModelParams& p) {
  return l2_inner(cross(m, variational_gradient(m, p)), v);
}
double direct_damping(const VectorField& m, const VectorField& v,
                      const ModelParams& p) {
  const VectorField g = variational_gradient(m, p);
  return l2_inner(cross(m, cross(m, g)), v);
}

using Vec3 = std::array<double, 3>;
Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

TEST_CASE("variational gradient closed forms") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.1);

  VectorField c = constant_field(g, 0.3, -0.8, 0.52);
  CHECK(linf_norm(variational_gradient(c, p)) < 1e-12);

  VectorField m = single_harmonic_x1(g);
  VectorField grad = variational_gradient(m, p);
  const double factor =
      16.0 * std::pow(kPi, 4) * p.epsilon * p.epsilon + 4.0 * kPi * kPi;
  VectorField expect = scaled(m, factor);
  CHECK(sllg::testing::max_abs_diff(grad, expect) < factor * 1e-13);
}

TEST_CASE("gradient matches central differences of the energy") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.2);
  VectorField m = sllg::testing::random_band_limited(g, 21, 9, 1.0);
  VectorField v = sllg::testing::random_band_limited(g, 22, 9, 1.0);

  const double pairing = l2_inner(variational_gradient(m, p), v);
  for (double delta : {1e-3, 1e-4}) {
    VectorField plus = m, minus = m;
    axpy(plus, delta, v);
    axpy(minus, -delta, v);
    const double fd = (energy(plus, p) - energy(minus, p)) / (2.0 * delta);
    // The energy is quadratic, so the quotient is exact up to cancellation.
    CHECK(fd == doctest::Approx(pairing).epsilon(1e-6));
  }
}

TEST_CASE("drift vanishes where the torque does and stays tangent") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 2.0, 0.15);

  CHECK(linf_norm(drift(constant_field(g, 0.0, 0.0, 1.0), p)) < 1e-12);

  // G is pointwise parallel to a unit single-harmonic field.
  VectorField m = single_harmonic_x1(g);
  CHECK(linf_norm(drift(m, p)) < 1e-9);

  VectorField r = sllg::testing::random_band_limited(g, 33, 16, 1.0);
  VectorField d = drift(r, p);
  const ScalarField tangent = dot(d, r);
  CHECK(linf_norm(tangent) < 1e-12 * linf_norm(d) * linf_norm(r));
}

TEST_CASE("effective torque components are orthogonal to m") {
  const TorusGrid g{3, 8};
  ModelParams p = default_params(g, 1.0, 0.1);
  VectorField m = sllg::testing::random_band_limited(g, 5, 4, 1.0);
  EffectiveTorque t = effective_torque(m, p);
  const double scale = linf_norm(t.gradient) * linf_norm(m) + 1.0;
  CHECK(linf_norm(dot(t.precession, m)) < 1e-12 * scale);
  CHECK(linf_norm(dot(t.damping, m)) < 1e-12 * scale * linf_norm(m));
}

TEST_CASE("noise operator basics") {
  const TorusGrid g{1, 8};
  VectorField e1 = constant_field(g, 1.0, 0.0, 0.0);
  VectorField e2 = constant_field(g, 0.0, 1.0, 0.0);
  VectorField e3 = constant_field(g, 0.0, 0.0, 1.0);

  CHECK(sllg::testing::max_abs_diff(noise_operator(e1, e2), e3) == 0.0);
  CHECK(linf_norm(noise_operator(e1, constant_field(g, 0, 0, 0))) == 0.0);

  VectorField m = sllg::testing::random_field(g, 7, 1.0);
  VectorField h = sllg::testing::random_field(g, 8, 1.0);
  CHECK(linf_norm(dot(noise_operator(m, h), m)) <
        1e-13 * (1.0 + linf_norm(m) * linf_norm(m) * linf_norm(h)));

  const TorusGrid g2{1, 16};
  CHECK_THROWS_AS(noise_operator(m, constant_field(g2, 1, 0, 0)),
                  GridMismatchError);
}

TEST_CASE("Ito correction closed forms") {
  const TorusGrid g{1, 8};
  ModelParams p = default_params(g, 1.0, 0.1);  // noise field e3

  VectorField m = constant_field(g, 1.0, 0.0, 0.0);
  VectorField corr = ito_correction(m, p);
  // (1/2) ((e1 x e3) x e3) = (1/2) ((0,-1,0) x e3) = (-1/2, 0, 0)
  CHECK(sllg::testing::max_abs_diff(
            corr, constant_field(g, -0.5, 0.0, 0.0)) < 1e-15);

  CHECK(linf_norm(ito_correction(constant_field(g, 0, 0, 2.0), p)) == 0.0);

  ModelParams none = p;
  none.noise_fields.clear();
  CHECK(linf_norm(ito_correction(m, none)) == 0.0);
}

TEST_CASE("energy closed forms") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.1);

  CHECK(energy(constant_field(g, 1, 2, 3), p) < 1e-14);

  VectorField m = single_harmonic_x1(g);
  const double expect =
      0.5 * (4.0 * kPi * kPi +
             16.0 * std::pow(kPi, 4) * p.epsilon * p.epsilon);
  CHECK(energy(m, p) == doctest::Approx(expect).epsilon(1e-12));

  // Vanishing regularization leaves the Dirichlet energy.
  ModelParams small = p;
  small.epsilon = 1e-8;
  CHECK(energy(m, small) ==
        doctest::Approx(0.5 * 4.0 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("deterministic energy dissipation identity") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.7, 0.12);
  // Pointwise-unit smooth field, bounded away from zero before normalizing.
  VectorField m = constant_field(g, 0.0, 0.0, 1.0);
  axpy(m, 1.0, sllg::testing::random_band_limited(g, 40, 4, 0.25));
  m = normalized(m, 0.5);
  VectorField gvec = variational_gradient(m, p);
  VectorField d = drift(m, p);
  const double lhs = l2_inner(gvec, d);
  const double gsq = l2_inner(gvec, gvec);
  const double proj = l2_norm(dot(m, gvec));
  const double rhs = -p.lambda * (gsq - proj * proj);
  CHECK(lhs <= 0.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("weak pairings equal direct spectral evaluation on smooth fields") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.3);
  // Band |k|^2 <= 4: all integrands stay below the aliasing threshold.
  VectorField m = sllg::testing::random_band_limited(g, 51, 4, 1.0);
  VectorField v = sllg::testing::random_band_limited(g, 52, 4, 1.0);

  const double wp = weak_pairing_precession(m, v, p);
  const double dp = direct_precession(m, v, p);
  CHECK(wp == doctest::Approx(dp).epsilon(1e-8));

  const double wd = weak_pairing_damping(m, v, p);
  const double dd = direct_damping(m, v, p);
  CHECK(wd == doctest::Approx(dd).epsilon(1e-8));

  // v = m kills the precession pairing (repeated factor in the triple
  // product).
  CHECK(std::abs(weak_pairing_precession(m, m, p)) <
        1e-10 * (1.0 + std::abs(dp)));

  // Constant m kills both pairings.
  VectorField c = constant_field(g, 0.6, 0.0, 0.8);
  CHECK(std::abs(weak_pairing_precession(c, v, p)) < 1e-12);
  CHECK(std::abs(weak_pairing_damping(c, v, p)) < 1e-12);
}

TEST_CASE("3D weak pairings also match the direct evaluation") {
  const TorusGrid g{3, 16};
  ModelParams p = default_params(g, 1.0, 0.2);
  VectorField m = sllg::testing::random_band_limited(g, 61, 3, 1.0);
  VectorField v = sllg::testing::random_band_limited(g, 62, 3, 1.0);
  CHECK(weak_pairing_precession(m, v, p) ==
        doctest::Approx(direct_precession(m, v, p)).epsilon(1e-8));
  CHECK(weak_pairing_damping(m, v, p) ==
        doctest::Approx(direct_damping(m, v, p)).epsilon(1e-8));
}

TEST_CASE("quadruple symmetry of the damping pairing") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.25);
  VectorField m = sllg::testing::random_band_limited(g, 71, 4, 1.0);
  VectorField v = sllg::testing::random_band_limited(g, 72, 4, 1.0);
  // <m x (m x G), v> = <m x G, v x m>, both sides evaluated directly.
  const VectorField gvec = variational_gradient(m, p);
  const double lhs = l2_inner(cross(m, cross(m, gvec)), v);
  const double rhs = l2_inner(cross(m, gvec), cross(v, m));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("pointwise vector product identities") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n01(0.0, 1.0);
  auto rnd = [&] { return Vec3{n01(rng), n01(rng), n01(rng)}; };
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 v = rnd(), w = rnd(), u = rnd(), z = rnd();
    // (v x w, u) = (u x v, w)
    CHECK(dot3(cross3(v, w), u) ==
          doctest::Approx(dot3(cross3(u, v), w)).epsilon(1e-13));
    // v x (w x u) = (v,u) w - (v,w) u
    const Vec3 lhs = cross3(v, cross3(w, u));
    for (int c = 0; c < 3; ++c)
      CHECK(lhs[c] == doctest::Approx(dot3(v, u) * w[c] -
                                      dot3(v, w) * u[c]).epsilon(1e-12));
    // (v x (w x u), z) = (z x v, w x u) = (v,u)(w,z) - (v,w)(u,z)
    const double q1 = dot3(cross3(v, cross3(w, u)), z);
    const double q2 = dot3(cross3(z, v), cross3(w, u));
    const double q3 = dot3(v, u) * dot3(w, z) - dot3(v, w) * dot3(u, z);
    CHECK(q1 == doctest::Approx(q2).epsilon(1e-12));
    CHECK(q1 == doctest::Approx(q3).epsilon(1e-12));
    // v x (v x w) = -|v|^2 w + (v,w) v
    const Vec3 s = cross3(v, cross3(v, w));
    for (int c = 0; c < 3; ++c)
      CHECK(s[c] == doctest::Approx(-dot3(v, v) * w[c] +
                                    dot3(v, w) * v[c]).epsilon(1e-12));
  }
}

TEST_CASE("unit-field identity for the bilaplacian damping term") {
  const TorusGrid g{2, 32};
  // Smooth, pointwise-unit field: normalized small perturbation of e3.
  VectorField m = constant_field(g, 0.0, 0.0, 1.0);
  axpy(m, 1.0, sllg::testing::random_band_limited(g, 81, 4, 0.05));
  m = normalized(m, 0.5);
  VectorField v = sllg::testing::random_band_limited(g, 82, 4, 1.0);

  // Direct evaluation of <m x (m x Lap^2 m), v> on the grid.
  const double direct = l2_inner(cross(m, cross(m, bilaplacian(m))), v);
  const double identity = damping_identity_rhs(m, v);
  const double scale = std::abs(direct) + std::abs(identity);
  CHECK(std::abs(direct - identity) < 1e-6 * scale);

  // Constant unit field: every term vanishes.
  CHECK(std::abs(damping_identity_rhs(constant_field(g, 0, 0, 1), v)) < 1e-12);

  // Harmonic closed form: the left side is orthogonal to v = m.
  VectorField h = single_harmonic_x1(g);
  CHECK(std::abs(damping_identity_rhs(h, h)) < 1e-8);

  // Non-unit fields are rejected.
  CHECK_THROWS_AS(damping_identity_rhs(scaled(m, 1.01), v),
                  PreconditionError);
}

TEST_CASE("zero padding removes aliasing from the drift products") {
  // Data with |k|inf <= 4 on a 16-grid: the cubic torque reaches |k| = 12,
  // so the plain pointwise product aliases while the padded one stays clean
  // inside the retained band. Truth = drift evaluated on a 64-grid (fully
  // resolved) and truncated back.
  const TorusGrid coarse{2, 16};
  ModelParams p = default_params(coarse, 1.0, 0.1);
  VectorField m = sllg::testing::random_band_limited(coarse, 91, 16, 0.4);

  ModelParams pd = p;
  pd.dealias = true;
  const VectorField plain = drift(m, p);
  const VectorField padded = drift(m, pd);

  ModelParams p64 = default_params(TorusGrid{2, 64}, 1.0, 0.1);
  const VectorField truth = resample(drift(resample(m, 64), p64), 16);

  const double err_plain = sllg::testing::max_abs_diff(plain, truth);
  const double err_padded = sllg::testing::max_abs_diff(padded, truth);
  const double scale = linf_norm(truth);
  CHECK(err_padded < 1e-10 * scale);   // padded evaluation is exact here
  CHECK(err_plain > 100.0 * err_padded);  // plain one genuinely aliases

  ModelParams bad = p;
  bad.lambda = -1.0;
  CHECK_THROWS_AS(drift(m, bad), PreconditionError);
}
