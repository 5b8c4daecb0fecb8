#include "sllg/integrate.hpp"

#include <cmath>
#include <string>

#include "sllg/errors.hpp"

namespace sllg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// dt * drift + sum_k db_k (m x h_k), Galerkin-projected.
VectorField explicit_increment(const VectorField& m, const ModelParams& p,
                               const SchemeConfig& sc,
                               std::span<const double> db, double dt,
                               bool ito) {
  VectorField inc = drift(m, p);
  scale(inc, dt);
  if (ito) axpy(inc, dt, ito_correction(m, p));
  for (std::size_t k = 0; k < p.noise_fields.size(); ++k)
    axpy(inc, db[k], noise_operator(m, p.noise_fields[k]));
  if (!sc.galerkin_cutoff.keeps_all(m.grid))
    inc = galerkin_project(inc, sc.galerkin_cutoff);
  return inc;
}

void check_noise_arity(const ModelParams& p, std::span<const double> db) {
  if (db.size() != p.noise_fields.size())
    throw PreconditionError(
        "step: got " + std::to_string(db.size()) + " increments for " +
        std::to_string(p.noise_fields.size()) + " noise fields");
}

VectorField finish_step(VectorField m, const SchemeConfig& sc) {
  if (sc.renormalize) m = normalized(m, 0.5);
  return m;
}

// The nonlinear remainder N(m) = drift(m) - L m with L = -lambda G linear:
//   N(m) = lambda (m,G) m + lambda (1-|m|^2) G + m x G,
// exact pointwise by v x (v x w) = (v,w) v - |v|^2 w. Honors p.dealias the
// same way drift() does.
VectorField nonlinear_remainder(const VectorField& m, const VectorField& g,
                                double lambda) {
  VectorField out = cross(m, g);
  const ScalarField mg = dot(m, g);
  axpy_scalar_times(out, lambda, mg, m);
  const ScalarField msq = dot(m, m);
  const std::size_t sz = m.grid.size();
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < sz; ++i)
      out.comp[c][i] += lambda * (1.0 - msq.values[i]) * g.comp[c][i];
  return out;
}

VectorField remainder_dispatch(const VectorField& m, const ModelParams& p) {
  VectorField g = variational_gradient(m, p);
  if (!p.dealias) return nonlinear_remainder(m, g, p.lambda);
  const int n = m.grid.n;
  const int n_pad = ((3 * n + 1) / 2 + ((3 * n + 1) / 2) % 2);
  VectorField fine = nonlinear_remainder(resample(m, n_pad),
                                         resample(g, n_pad), p.lambda);
  return resample(fine, n);
}

// -lambda (eps^2 (4pi^2|k|^2)^2 + 4pi^2|k|^2), the implicit multiplier.
double linear_multiplier(long ksq, double lambda, double epsilon) {
  const double lap = kTwoPi * kTwoPi * static_cast<double>(ksq);
  return -lambda * lap * (1.0 + epsilon * epsilon * lap);
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kStratonovichHeun:
      return "stratonovich-heun";
    case Scheme::kItoEulerCorrected:
      return "ito-euler-corrected";
    case Scheme::kImexHeun:
      return "imex-heun";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "stratonovich-heun") return Scheme::kStratonovichHeun;
  if (name == "ito-euler-corrected") return Scheme::kItoEulerCorrected;
  if (name == "imex-heun") return Scheme::kImexHeun;
  throw ConfigError("unknown scheme '" + name +
                    "' (expected stratonovich-heun, ito-euler-corrected, or "
                    "imex-heun)");
}

VectorField step_heun(const VectorField& m, const ModelParams& p,
                      const SchemeConfig& sc, std::span<const double> db) {
  check_noise_arity(p, db);
  const double dt = sc.dt;
  const VectorField base_inc = explicit_increment(m, p, sc, db, dt, false);
  VectorField pred = m;
  axpy(pred, 1.0, base_inc);

  VectorField out = m;
  axpy(out, 0.5, base_inc);
  axpy(out, 0.5, explicit_increment(pred, p, sc, db, dt, false));
  return finish_step(std::move(out), sc);
}

VectorField step_euler_ito(const VectorField& m, const ModelParams& p,
                           const SchemeConfig& sc,
                           std::span<const double> db) {
  check_noise_arity(p, db);
  VectorField out = m;
  axpy(out, 1.0, explicit_increment(m, p, sc, db, sc.dt, sc.ito_correction));
  return finish_step(std::move(out), sc);
}

VectorField step_imex_heun(const VectorField& m, const ModelParams& p,
                           const SchemeConfig& sc,
                           std::span<const double> db) {
  check_noise_arity(p, db);
  const double dt = sc.dt;
  const auto& ksq = wavevector_sq_table(m.grid);

  // Explicit part at the base point: dt N(m) + sum db_k m x h_k.
  VectorField expl = remainder_dispatch(m, p);
  scale(expl, dt);
  for (std::size_t k = 0; k < p.noise_fields.size(); ++k)
    axpy(expl, db[k], noise_operator(m, p.noise_fields[k]));

  SpectralField mh = to_spectral(m);
  SpectralField rhs = to_spectral(expl);

  // Predictor: (1 - dt L) m* = m + explicit part.
  SpectralField pred_h(m.grid);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < ksq.size(); ++i) {
      const double lin = linear_multiplier(ksq[i], p.lambda, p.epsilon);
      pred_h.comp[c][i] =
          (mh.comp[c][i] + rhs.comp[c][i]) / (1.0 - dt * lin);
    }
  project(pred_h, sc.galerkin_cutoff);
  VectorField pred = to_real(pred_h);

  // Corrector: Crank-Nicolson on L, trapezoid on N and on the noise.
  VectorField expl2 = remainder_dispatch(pred, p);
  scale(expl2, dt);
  for (std::size_t k = 0; k < p.noise_fields.size(); ++k)
    axpy(expl2, db[k], noise_operator(pred, p.noise_fields[k]));
  axpy(expl2, 1.0, expl);
  scale(expl2, 0.5);

  SpectralField rhs2 = to_spectral(expl2);
  SpectralField out_h(m.grid);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < ksq.size(); ++i) {
      const double lin = linear_multiplier(ksq[i], p.lambda, p.epsilon);
      out_h.comp[c][i] =
          (mh.comp[c][i] * (1.0 + 0.5 * dt * lin) + rhs2.comp[c][i]) /
          (1.0 - 0.5 * dt * lin);
    }
  project(out_h, sc.galerkin_cutoff);
  return finish_step(to_real(out_h), sc);
}

Trajectory integrate(const VectorField& m0, const ModelParams& p,
                     const BrownianPath& path, const SchemeConfig& sc,
                     const ObserverConfig& obs) {
  if (static_cast<std::size_t>(path.n_noises) != p.noise_fields.size() &&
      path.steps() > 0)
    throw PreconditionError("integrate: path carries " +
                            std::to_string(path.n_noises) +
                            " noises but the model has " +
                            std::to_string(p.noise_fields.size()));
  const double dev = sup_unit_deviation(m0);
  if (dev > 1e-6)
    throw PreconditionError(
        "integrate: m0 is not pointwise unit (deviation " +
        std::to_string(dev) + " > 1e-6)");

  const std::size_t steps = path.steps();
  const double dt = steps > 0 ? path.dt() : 0.0;
  if (sc.dt > 0.0 && steps > 0 &&
      std::abs(sc.dt - dt) > 1e-9 * std::max(dt, sc.dt))
    throw PreconditionError(
        "integrate: configured dt does not match horizon/steps");
  SchemeConfig cfg = sc;
  cfg.dt = dt;

  VectorField m = sc.galerkin_cutoff.keeps_all(m0.grid)
                      ? m0
                      : galerkin_project(m0, sc.galerkin_cutoff);
  // A renormalizing scheme evolves on pointwise-unit states; bring the
  // projected initial state onto that manifold before the norm baseline is
  // measured, exactly as every later step will be.
  if (cfg.renormalize) m = normalized(m, 0.5);
  ModelParams params = p;
  const double l2_base = l2_norm(m);
  const double l2_cap = l2_base * (1.0 + cfg.l2_slack);

  Trajectory out;
  auto record = [&](double t, const VectorField& state) {
    out.times.push_back(t);
    out.l2_norms.push_back(l2_norm(state));
    out.energies.push_back(energy(state, params));
    out.unit_deviations.push_back(sup_unit_deviation(state));
  };
  auto snapshot = [&](double t, const VectorField& state) {
    out.snapshot_times.push_back(t);
    out.snapshots.push_back(state);
  };
  record(0.0, m);
  snapshot(0.0, m);
  if (obs.callback) obs.callback(0, 0.0, m);

  std::vector<double> db(params.noise_fields.size(), 0.0);
  const std::size_t record_stride = obs.record_stride ? obs.record_stride : 1;
  for (std::size_t i = 0; i < steps; ++i) {
    for (std::size_t k = 0; k < db.size(); ++k)
      db[k] = path.increment(static_cast<int>(k), i);

    switch (cfg.scheme) {
      case Scheme::kStratonovichHeun:
        m = step_heun(m, params, cfg, db);
        break;
      case Scheme::kItoEulerCorrected:
        m = step_euler_ito(m, params, cfg, db);
        break;
      case Scheme::kImexHeun:
        m = step_imex_heun(m, params, cfg, db);
        break;
    }
    const std::size_t step_no = i + 1;
    const double t = static_cast<double>(step_no) * dt;

    if (!all_finite(m))
      throw NumericalBlowupError(
          "integrate: non-finite state at step " + std::to_string(step_no) +
              " (t=" + std::to_string(t) + "); reduce dt",
          step_no);
    const double norm_now = l2_norm(m);
    if (norm_now > l2_cap)
      throw L2BoundViolationError(
          "integrate: ||m||_L2 = " + std::to_string(norm_now) +
              " exceeds the monotone bound " + std::to_string(l2_base) +
              " beyond slack at step " + std::to_string(step_no) +
              "; the scheme is unstable at this dt",
          step_no);

    const bool last = step_no == steps;
    if (last || step_no % record_stride == 0) {
      record(t, m);
      if (obs.callback) obs.callback(step_no, t, m);
    }
    if (last || (obs.snapshot_stride > 0 && step_no % obs.snapshot_stride == 0))
      snapshot(t, m);
  }
  return out;
}

}  // namespace sllg
