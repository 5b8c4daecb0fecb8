#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "sllg/errors.hpp"
#include "sllg/integrate.hpp"
#include "helpers.hpp"

using namespace sllg;
using sllg::testing::kPi;

namespace {

// Smooth pointwise-unit initial state: normalized perturbation of e3.
VectorField smooth_unit_field(const TorusGrid& g, unsigned seed, double amp,
                              long band_sq) {
  VectorField m = constant_field(g, 0.0, 0.0, 1.0);
  axpy(m, 1.0, sllg::testing::random_band_limited(g, seed, band_sq, amp));
  return normalized(m, 0.5);
}

VectorField uniform_e1(const TorusGrid& g) {
  return constant_field(g, 1.0, 0.0, 0.0);
}

// Exact endpoint of the rigid-rotation solution m(T) = Rot(e3, -B_T) m0 for
// uniform m0 = e1 and constant h = e3.
VectorField rotation_oracle(const TorusGrid& g, double b_total) {
  const auto r = sllg::testing::rotate_axis({1.0, 0.0, 0.0}, {0.0, 0.0, 1.0},
                                            -b_total);
  return constant_field(g, r[0], r[1], r[2]);
}

// RMS endpoint error of a scheme against the rotation oracle over seeds,
// one refinement level per entry of the returned (dts, errors) pair.
std::pair<std::vector<double>, std::vector<double>> rotation_errors(
    Scheme scheme, int levels, std::size_t base_steps,
    const std::vector<std::uint64_t>& seeds) {
  const TorusGrid g{1, 4};
  ModelParams p = default_params(g, 1.0, 0.1);
  const VectorField m0 = uniform_e1(g);

  std::vector<double> dts, errs;
  for (int lev = 0; lev < levels; ++lev) {
    double acc = 0.0;
    double dt = 0.0;
    for (std::uint64_t seed : seeds) {
      BrownianPath path = sample_brownian(seed, 1.0, base_steps, 1);
      for (int r = 0; r < lev; ++r) path = refine_brownian(path);
      dt = path.dt();
      SchemeConfig sc;
      sc.scheme = scheme;
      sc.l2_slack = 0.5;  // coarse-step sweep: norm drift is the point
      Trajectory tr = integrate(m0, p, path, sc);
      const VectorField exact = rotation_oracle(g, path.total(0));
      const double err = l2_norm([&] {
        VectorField d = tr.final_state();
        axpy(d, -1.0, exact);
        return d;
      }());
      acc += err * err;
    }
    dts.push_back(dt);
    errs.push_back(std::sqrt(acc / static_cast<double>(seeds.size())));
  }
  return {dts, errs};
}

}  // namespace

TEST_CASE("trajectories are bitwise deterministic") {
  const TorusGrid g{2, 8};
  ModelParams p = default_params(g, 1.0, 0.1);
  VectorField m0 = smooth_unit_field(g, 3, 0.2, 2);
  BrownianPath path = sample_brownian(17, 0.01, 50, 1);
  SchemeConfig sc;
  sc.galerkin_cutoff = SpectralCutoff{8};  // keep dt * stiffness small
  sc.l2_slack = 1e-3;

  Trajectory a = integrate(m0, p, path, sc);
  Trajectory b = integrate(m0, p, path, sc);
  for (int c = 0; c < 3; ++c)
    CHECK(a.final_state().comp[c] == b.final_state().comp[c]);
  CHECK(a.l2_norms == b.l2_norms);
  CHECK(a.energies == b.energies);
}

TEST_CASE("single-harmonic state with no noise is stationary") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.1);
  p.noise_fields.clear();
  VectorField m0(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(g.coords(i)[0]);
    m0.comp[0][i] = std::cos(2.0 * kPi * x);
    m0.comp[1][i] = std::sin(2.0 * kPi * x);
  }
  SchemeConfig sc;
  sc.dt = 1e-3;
  // The state occupies |k|^2 = 1; projecting onto that band keeps rounding
  // noise out of the stiff high modes, which this dt does not resolve.
  sc.galerkin_cutoff = SpectralCutoff{2};
  VectorField one = step_heun(m0, p, sc, {});
  CHECK(sllg::testing::max_abs_diff(one, m0) < 1e-12);

  BrownianPath path = sample_brownian(1, 0.05, 50, 0);
  Trajectory tr = integrate(m0, p, path, sc);
  CHECK(sllg::testing::max_abs_diff(tr.final_state(), m0) < 1e-11);
}

TEST_CASE("Heun converges at first order on the rotation oracle") {
  auto [dts, errs] = rotation_errors(Scheme::kStratonovichHeun, 5, 32,
                                     {11, 22, 33, 44});
  for (std::size_t i = 0; i + 1 < errs.size(); ++i)
    CHECK(errs[i + 1] < errs[i]);  // refined path drives a smaller error
  CHECK(sllg::testing::loglog_slope(dts, errs) >= 0.9);
}

TEST_CASE("corrected Euler-Maruyama converges on the rotation oracle") {
  auto [dts, errs] = rotation_errors(Scheme::kItoEulerCorrected, 5, 32,
                                     {11, 22, 33, 44});
  CHECK(sllg::testing::loglog_slope(dts, errs) >= 0.5);
  CHECK(errs.back() < errs.front());
}

TEST_CASE("omitting the Ito correction biases the norm measurably") {
  const TorusGrid g{1, 4};
  ModelParams p = default_params(g, 1.0, 0.1);
  const VectorField m0 = uniform_e1(g);
  const VectorField h = p.noise_fields[0];
  const double T = 0.25;
  const std::size_t steps = 250;  // dt = 1e-3
  BrownianPath path = sample_brownian(5, T, steps, 1);

  SchemeConfig sc;
  sc.scheme = Scheme::kItoEulerCorrected;
  sc.l2_slack = 0.5;
  Trajectory corrected = integrate(m0, p, path, sc);

  // Bare Euler-Maruyama on the Ito form without the correction: the norm
  // grows like exp(t/2) instead of staying near 1.
  VectorField m = m0;
  for (std::size_t i = 0; i < steps; ++i)
    axpy(m, path.increment(0, i), cross(m, h));
  const double norm_bare = l2_norm(m);
  const double norm_corr = l2_norm(corrected.final_state());
  CHECK(std::abs(norm_corr - 1.0) < 0.05);
  CHECK(norm_bare - 1.0 > 0.08);  // systematic bias, not noise
}

TEST_CASE("per-step L2 defect of Heun scales like dt^2") {
  // On a constant state the drift vanishes, which isolates the noise-induced
  // norm defect.  One Heun step from m = e1 with h = e3 and frozen increment
  // db = sqrt(dt) gives ||m+||^2 = 1 + dt^2/4 exactly: the predictor tilts the
  // noise operator by dt*(m x h) x h = -dt*e1 and the defect is a quarter of
  // that tilt squared.
  const TorusGrid g{1, 4};
  ModelParams p = default_params(g, 1.0, 0.1);
  const VectorField m0 = uniform_e1(g);

  auto defect = [&](double dt) {
    SchemeConfig sc;
    sc.dt = dt;
    const std::array<double, 1> db = {std::sqrt(dt)};  // frozen W = sqrt(dt)
    return std::abs(l2_norm(step_heun(m0, p, sc, db)) - 1.0);
  };
  const double d1 = defect(1e-3);
  const double d2 = defect(5e-4);
  CHECK(d1 == doctest::Approx(0.125e-6).epsilon(0.01));
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("IMEX agrees with explicit Heun as dt shrinks") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.1);
  VectorField m0 = smooth_unit_field(g, 9, 0.2, 2);

  std::vector<double> gaps;
  for (std::size_t steps : {200, 400, 800}) {
    BrownianPath path = sample_brownian(23, 0.01, steps, 1);
    SchemeConfig heun;
    heun.galerkin_cutoff = SpectralCutoff{32};
    SchemeConfig imex = heun;
    imex.scheme = Scheme::kImexHeun;
    VectorField a = integrate(m0, p, path, heun).final_state();
    axpy(a, -1.0, integrate(m0, p, path, imex).final_state());
    gaps.push_back(l2_norm(a));
  }
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
  CHECK(gaps.back() < 1e-6);
}

TEST_CASE("noise-off energy decreases monotonically") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.1);
  p.noise_fields.clear();
  VectorField m0 = smooth_unit_field(g, 13, 0.3, 4);
  BrownianPath path = sample_brownian(1, 0.002, 400, 0);
  SchemeConfig sc;
  sc.galerkin_cutoff = SpectralCutoff{64};
  Trajectory tr = integrate(m0, p, path, sc);
  REQUIRE(tr.energies.size() > 10);
  for (std::size_t i = 0; i + 1 < tr.energies.size(); ++i)
    CHECK(tr.energies[i + 1] <= tr.energies[i] + 1e-10);
  CHECK(tr.energies.back() < tr.energies.front());
}

TEST_CASE("monotone L2 bound holds along noisy runs") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.1);
  scale(p.noise_fields[0], 0.1);  // gentle noise
  VectorField m0 = smooth_unit_field(g, 15, 0.2, 2);
  BrownianPath path = sample_brownian(29, 0.02, 800, 1);
  SchemeConfig sc;
  sc.galerkin_cutoff = SpectralCutoff{16};
  Trajectory tr = integrate(m0, p, path, sc);  // default 1e-6 slack enforced
  const double cap = tr.l2_norms.front() * (1.0 + 1e-6);
  for (double v : tr.l2_norms) CHECK(v <= cap);
}

TEST_CASE("renormalization pins the sphere constraint") {
  const TorusGrid g{2, 8};
  ModelParams p = default_params(g, 1.0, 0.1);
  VectorField m0 = smooth_unit_field(g, 19, 0.2, 2);
  BrownianPath path = sample_brownian(31, 0.01, 100, 1);
  SchemeConfig sc;
  sc.renormalize = true;
  Trajectory tr = integrate(m0, p, path, sc);
  for (double d : tr.unit_deviations) CHECK(d < 1e-14);
}

TEST_CASE("sphere defect shrinks under simultaneous dt and cutoff refinement") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.05);
  scale(p.noise_fields[0], 0.5);
  VectorField m0 = smooth_unit_field(g, 21, 0.25, 2);

  auto final_dev = [&](std::size_t steps, long cutoff_sq, int* half_idx,
                       Trajectory* out_tr) {
    BrownianPath path = sample_brownian(37, 0.01, steps, 1);
    SchemeConfig sc;
    sc.galerkin_cutoff = SpectralCutoff{cutoff_sq};
    Trajectory tr = integrate(m0, p, path, sc);
    if (half_idx) *half_idx = static_cast<int>(tr.times.size()) / 2;
    if (out_tr) *out_tr = tr;
    return tr.unit_deviations.back();
  };

  Trajectory coarse_tr;
  int half = 0;
  const double dev_coarse = final_dev(100, 8, &half, &coarse_tr);
  const double dev_fine = final_dev(200, 32, nullptr, nullptr);
  CHECK(dev_fine < dev_coarse);

  // At most linear growth: the defect at T stays within a small multiple of
  // the defect accumulated by T/2.
  const double dev_half = coarse_tr.unit_deviations[half];
  CHECK(dev_coarse <= 3.0 * dev_half + 1e-14);
}

TEST_CASE("Heun and corrected Euler converge to each other") {
  const TorusGrid g{2, 8};
  ModelParams p = default_params(g, 1.0, 0.1);
  scale(p.noise_fields[0], 0.5);
  VectorField m0 = smooth_unit_field(g, 25, 0.2, 2);

  std::vector<double> gaps;
  BrownianPath path = sample_brownian(41, 0.02, 100, 1);
  for (int lev = 0; lev < 3; ++lev) {
    SchemeConfig heun;
    heun.l2_slack = 0.5;
    heun.galerkin_cutoff = SpectralCutoff{8};
    SchemeConfig em = heun;
    em.scheme = Scheme::kItoEulerCorrected;
    VectorField a = integrate(m0, p, path, heun).final_state();
    axpy(a, -1.0, integrate(m0, p, path, em).final_state());
    gaps.push_back(l2_norm(a));
    path = refine_brownian(path);
  }
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
}

TEST_CASE("instability is reported as a typed error") {
  const TorusGrid g{2, 16};
  ModelParams p = default_params(g, 1.0, 0.5);
  VectorField m0 = smooth_unit_field(g, 43, 0.3, 16);
  BrownianPath path = sample_brownian(47, 1.0, 10, 1);  // dt = 0.1, stiff
  SchemeConfig sc;
  bool typed = false;
  try {
    integrate(m0, p, path, sc);
  } catch (const NumericalBlowupError& e) {
    typed = true;
    CHECK(e.step() >= 1);
  } catch (const L2BoundViolationError& e) {
    typed = true;
    CHECK(e.step() >= 1);
  }
  CHECK(typed);
}

TEST_CASE("empty path yields the initial-state trajectory") {
  const TorusGrid g{2, 8};
  ModelParams p = default_params(g, 1.0, 0.1);
  VectorField m0 = smooth_unit_field(g, 51, 0.2, 2);
  Trajectory tr = integrate(m0, p, BrownianPath{}, SchemeConfig{});
  CHECK(tr.snapshots.size() == 1);
  CHECK(tr.times == std::vector<double>{0.0});
  CHECK(sllg::testing::max_abs_diff(tr.final_state(), m0) == 0.0);
}

TEST_CASE("precondition violations are rejected") {
  const TorusGrid g{2, 8};
  ModelParams p = default_params(g, 1.0, 0.1);
  BrownianPath path = sample_brownian(3, 0.01, 10, 1);

  // Non-unit initial state.
  CHECK_THROWS_AS(
      integrate(constant_field(g, 0.0, 0.0, 1.1), p, path, SchemeConfig{}),
      PreconditionError);

  // dt inconsistent with the path.
  SchemeConfig sc;
  sc.dt = 0.9 * path.dt();
  CHECK_THROWS_AS(
      integrate(constant_field(g, 0, 0, 1), p, path, sc), PreconditionError);

  // Noise arity mismatch between path and model.
  BrownianPath two = sample_brownian(3, 0.01, 10, 2);
  CHECK_THROWS_AS(
      integrate(constant_field(g, 0, 0, 1), p, two, SchemeConfig{}),
      PreconditionError);

  // Stepper called with the wrong number of increments.
  CHECK_THROWS_AS(
      step_heun(constant_field(g, 0, 0, 1), p, SchemeConfig{}, {}),
      PreconditionError);
}

TEST_CASE("observer strides and callback fire as configured") {
  const TorusGrid g{2, 8};
  ModelParams p = default_params(g, 1.0, 0.1);
  VectorField m0 = smooth_unit_field(g, 53, 0.2, 2);
  BrownianPath path = sample_brownian(59, 0.01, 100, 1);
  ObserverConfig obs;
  obs.snapshot_stride = 25;
  obs.record_stride = 10;
  std::size_t calls = 0;
  obs.callback = [&](std::size_t, double, const VectorField&) { ++calls; };
  SchemeConfig sc;
  sc.renormalize = true;  // bookkeeping test; keep the norm guard quiet
  Trajectory tr = integrate(m0, p, path, sc, obs);
  CHECK(tr.snapshots.size() == 5);  // t=0 plus 4 interior/final at stride 25
  CHECK(tr.times.size() == 11);     // t=0 plus every 10th step
  CHECK(calls == 11);
  CHECK(tr.snapshot_times.back() == doctest::Approx(0.01));
}
