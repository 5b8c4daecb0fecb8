#include "sllg/model.hpp"

#include <cmath>
#include <string>

#include "sllg/errors.hpp"

namespace sllg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void validate(const ModelParams& p) {
  if (!(p.lambda > 0.0))
    throw PreconditionError("ModelParams: lambda must be positive");
  if (!(p.epsilon > 0.0))
    throw PreconditionError("ModelParams: epsilon must be positive");
}

// Smallest even size >= 3n/2. The 3/2 rule removes aliasing of quadratic
// products; for the cubic damping term it is the conventional compromise.
int padded_size(int n) {
  const int p = (3 * n + 1) / 2;
  return p + (p % 2);
}

// lambda m x (m x G) + m x G on whatever grid m and G live on.
VectorField torque_sum(const VectorField& m, const VectorField& g,
                       double lambda) {
  VectorField prec = cross(m, g);
  VectorField out = cross(m, prec);
  scale(out, lambda);
  axpy(out, 1.0, prec);
  return out;
}

}  // namespace

VectorField constant_field(const TorusGrid& grid, double x, double y,
                           double z) {
  VectorField f(grid);
  const std::size_t sz = grid.size();
  for (std::size_t i = 0; i < sz; ++i) {
    f.comp[0][i] = x;
    f.comp[1][i] = y;
    f.comp[2][i] = z;
  }
  return f;
}

ModelParams default_params(const TorusGrid& grid, double lambda,
                           double epsilon) {
  ModelParams p;
  p.lambda = lambda;
  p.epsilon = epsilon;
  p.noise_fields.push_back(constant_field(grid, 0.0, 0.0, 1.0));
  validate(p);
  return p;
}

VectorField variational_gradient(const VectorField& m, const ModelParams& p) {
  validate(p);
  SpectralField mh = to_spectral(m);
  const double eps_sq = p.epsilon * p.epsilon;
  apply_isotropic(mh, [eps_sq](long ksq) {
    const double lap = kTwoPi * kTwoPi * static_cast<double>(ksq);
    return lap * (1.0 + eps_sq * lap);  // eps^2 (4pi^2|k|^2)^2 + 4pi^2|k|^2
  });
  return to_real(mh);
}

EffectiveTorque effective_torque(const VectorField& m, const ModelParams& p) {
  EffectiveTorque t;
  t.gradient = variational_gradient(m, p);
  t.precession = cross(m, t.gradient);
  t.damping = cross(m, t.precession);
  return t;
}

VectorField drift(const VectorField& m, const ModelParams& p) {
  VectorField g = variational_gradient(m, p);
  if (!p.dealias) return torque_sum(m, g, p.lambda);
  const int n_pad = padded_size(m.grid.n);
  VectorField fine =
      torque_sum(resample(m, n_pad), resample(g, n_pad), p.lambda);
  return resample(fine, m.grid.n);
}

VectorField noise_operator(const VectorField& m, const VectorField& h) {
  require_same_grid(m.grid, h.grid, "noise_operator");
  return cross(m, h);
}

VectorField ito_correction(const VectorField& m, const ModelParams& p) {
  validate(p);
  VectorField out(m.grid);
  for (const VectorField& h : p.noise_fields) {
    require_same_grid(m.grid, h.grid, "ito_correction");
    axpy(out, 0.5, cross(cross(m, h), h));
  }
  return out;
}

double energy(const VectorField& m, const ModelParams& p) {
  validate(p);
  SpectralField mh = to_spectral(m);
  const auto& ksq = wavevector_sq_table(m.grid);
  const double eps_sq = p.epsilon * p.epsilon;
  double acc = 0.0;
  for (std::size_t i = 0; i < ksq.size(); ++i) {
    const double lap = kTwoPi * kTwoPi * static_cast<double>(ksq[i]);
    const double w = 0.5 * lap * (1.0 + eps_sq * lap);
    acc += w * (std::norm(mh.comp[0][i]) + std::norm(mh.comp[1][i]) +
                std::norm(mh.comp[2][i]));
  }
  return acc;
}

double weak_pairing_precession(const VectorField& m, const VectorField& v,
                               const ModelParams& p) {
  validate(p);
  require_same_grid(m.grid, v.grid, "weak_pairing_precession");
  const double eps_sq = p.epsilon * p.epsilon;
  const VectorField lap_m = laplacian(m);
  double acc = eps_sq * l2_inner(cross(laplacian(v), m), lap_m);
  for (int a = 0; a < m.grid.dim; ++a)
    acc += 2.0 * eps_sq *
           l2_inner(cross(derivative(v, a), derivative(m, a)), lap_m);
  return acc - l2_inner(cross(m, lap_m), v);
}

double weak_pairing_damping(const VectorField& m, const VectorField& v,
                            const ModelParams& p) {
  validate(p);
  require_same_grid(m.grid, v.grid, "weak_pairing_damping");
  const double eps_sq = p.epsilon * p.epsilon;
  const VectorField lap_m = laplacian(m);
  const VectorField u = cross(v, m);  // test function of the symmetric form
  double acc = eps_sq * l2_inner(cross(laplacian(u), m), lap_m);
  for (int a = 0; a < m.grid.dim; ++a)
    acc += 2.0 * eps_sq *
           l2_inner(cross(derivative(u, a), derivative(m, a)), lap_m);
  return acc - l2_inner(cross(m, cross(m, lap_m)), v);
}

double damping_identity_rhs(const VectorField& m, const VectorField& v) {
  require_same_grid(m.grid, v.grid, "damping_identity_rhs");
  const std::size_t sz = m.grid.size();
  const double worst = sup_unit_deviation(m);
  if (worst > 1e-6)
    throw PreconditionError(
        "damping_identity_rhs: field is not pointwise unit (deviation " +
        std::to_string(worst) + ")");

  const VectorField lap_m = laplacian(m);
  double acc = -l2_inner(laplacian(v), lap_m);

  // <|Lap m|^2 m, v>
  {
    const ScalarField lap_sq = dot(lap_m, lap_m);
    const ScalarField mv = dot(m, v);
    double term = 0.0;
    for (std::size_t i = 0; i < sz; ++i)
      term += lap_sq.values[i] * mv.values[i];
    acc += term / static_cast<double>(sz);
  }

  // -2 <grad m (x) grad m, Hess(v . m)>
  {
    const ScalarField vm = dot(m, v);
    std::vector<VectorField> dm;
    for (int a = 0; a < m.grid.dim; ++a) dm.push_back(derivative(m, a));
    for (int a = 0; a < m.grid.dim; ++a)
      for (int b = 0; b < m.grid.dim; ++b)
        acc += -2.0 * l2_inner(dot(dm[a], dm[b]), second_derivative(vm, a, b));
  }
  return acc;
}

}  // namespace sllg
