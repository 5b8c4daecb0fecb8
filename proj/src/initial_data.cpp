#include "sllg/initial_data.hpp"

#include <cmath>
#include <cstdlib>

#include "sllg/rng.hpp"
#include "sllg/spectral.hpp"

namespace sllg {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Displacement x - c wrapped to the nearest periodic image, in [-1/2, 1/2].
double minimal_image(double x, double c) {
  const double d = x - c;
  return d - std::round(d);
}

void check_radius(double radius) {
  if (!(radius > 0.0) || !(radius < 0.5))
    throw PreconditionError("soliton radius must lie in (0, 1/2), got " +
                            std::to_string(radius));
}

// Degree-q self-map of the unit sphere: the azimuth winds q times and the
// colatitude is remapped through cot(theta_q/2) = cot(theta/2)^q (the q-th
// power map in the stereographic chart). q = 1 is the identity, negative q
// reverses orientation.
std::array<double, 3> sphere_power_map(const std::array<double, 3>& n, int q) {
  const double planar = std::hypot(n[0], n[1]);
  const double theta = std::atan2(planar, n[2]);
  const double phi = std::atan2(n[1], n[0]);
  const double half = 0.5 * theta;
  const double si = std::sin(half);
  if (si == 0.0) return {0.0, 0.0, 1.0};  // north pole is fixed for every q
  // |q| in the colatitude, signed q in the azimuth: w -> w^|q| composed with
  // an azimuthal reflection when q < 0, so the degree is q itself (a plain
  // negative power would be a Moebius map of degree +|q|).
  const double rq =
      std::pow(std::cos(half) / si, static_cast<double>(std::abs(q)));
  if (std::isinf(rq)) return {0.0, 0.0, 1.0};
  const double denom = rq * rq + 1.0;
  const double sin_tq = 2.0 * rq / denom;
  const double cos_tq = (rq * rq - 1.0) / denom;
  const double qphi = static_cast<double>(q) * phi;
  return {sin_tq * std::cos(qphi), sin_tq * std::sin(qphi), cos_tq};
}

}  // namespace

double smoothstep_flat(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

const char* ansatz_name(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::kConstant: return "constant";
    case AnsatzKind::kSingleHarmonic: return "single-harmonic";
    case AnsatzKind::kPerturbedConstant: return "perturbed-constant";
    case AnsatzKind::kSkyrmion2d: return "skyrmion-2d";
    case AnsatzKind::kTwistedSkyrmionString3d:
      return "twisted-skyrmion-string-3d";
  }
  throw PreconditionError("unknown ansatz kind");
}

AnsatzKind parse_ansatz(const std::string& name) {
  for (AnsatzKind k :
       {AnsatzKind::kConstant, AnsatzKind::kSingleHarmonic,
        AnsatzKind::kPerturbedConstant, AnsatzKind::kSkyrmion2d,
        AnsatzKind::kTwistedSkyrmionString3d}) {
    if (name == ansatz_name(k)) return k;
  }
  throw PreconditionError("unknown ansatz kind '" + name + "'");
}

VectorField make_constant(const TorusGrid& g,
                          const std::array<double, 3>& direction) {
  const double len = std::sqrt(direction[0] * direction[0] +
                               direction[1] * direction[1] +
                               direction[2] * direction[2]);
  if (!(len > 1e-12))
    throw PreconditionError("constant ansatz needs a nonzero direction");
  VectorField m(g);
  for (int c = 0; c < 3; ++c)
    std::fill(m.comp[c].begin(), m.comp[c].end(), direction[c] / len);
  return m;
}

VectorField make_single_harmonic(const TorusGrid& g,
                                 const std::array<int, 3>& k,
                                 const std::array<int, 2>& axis_pair) {
  long ksq = 0;
  for (int a = 0; a < 3; ++a) {
    if (a >= g.dim && k[a] != 0)
      throw PreconditionError(
          "harmonic wavevector uses an axis beyond the grid dimension");
    ksq += static_cast<long>(k[a]) * k[a];
  }
  if (ksq == 0)
    throw PreconditionError("harmonic ansatz needs a nonzero wavevector");
  const auto [a, b] = axis_pair;
  if (a < 0 || a > 2 || b < 0 || b > 2 || a == b)
    throw PreconditionError("axis pair must name two distinct components");

  VectorField m(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    const double phase =
        2.0 * kPi *
        (static_cast<double>(k[0]) * c[0] + static_cast<double>(k[1]) * c[1] +
         static_cast<double>(k[2]) * c[2]) /
        g.n;
    m.comp[a][i] = std::cos(phase);
    m.comp[b][i] = std::sin(phase);
  }
  return m;
}

VectorField make_perturbed_constant(const TorusGrid& g, std::uint64_t seed,
                                    double amplitude, long band_sq) {
  if (!(amplitude >= 0.0) || !(amplitude < 0.5))
    throw PreconditionError(
        "perturbation amplitude must lie in [0, 0.5), got " +
        std::to_string(amplitude));
  VectorField m(g);
  std::fill(m.comp[2].begin(), m.comp[2].end(), 1.0);
  if (amplitude == 0.0) return m;

  VectorField pert(g);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < g.size(); ++i)
      pert.comp[c][i] = rng::normal(seed, rng::kAnsatz,
                                    static_cast<std::uint64_t>(c), i, 0);
  pert = galerkin_project(pert, SpectralCutoff{band_sq});

  double sup = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    sup = std::max(sup, std::sqrt(pert.comp[0][i] * pert.comp[0][i] +
                                  pert.comp[1][i] * pert.comp[1][i] +
                                  pert.comp[2][i] * pert.comp[2][i]));
  if (sup > 0.0) axpy(m, amplitude / sup, pert);
  return normalized(m);
}

VectorField make_skyrmion_2d(const TorusGrid& g,
                             const std::array<double, 2>& center,
                             double radius, int sign) {
  if (g.dim != 2)
    throw PreconditionError("2D skyrmion ansatz needs a 2D grid");
  check_radius(radius);
  if (sign != 1 && sign != -1)
    throw PreconditionError("skyrmion charge sign must be +1 or -1");

  VectorField m(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    const double dx = minimal_image(g.coordinate(c[0]), center[0]);
    const double dy = minimal_image(g.coordinate(c[1]), center[1]);
    const double r = std::hypot(dx, dy);
    if (r >= radius) {
      m.comp[2][i] = 1.0;
      continue;
    }
    if (r == 0.0) {
      m.comp[2][i] = -1.0;
      continue;
    }
    const double theta = kPi * smoothstep_flat(1.0 - r / radius);
    const double st = std::sin(theta);
    // sign = +1 carries degree +1 under Q = (1/4pi) int m . (d1 m x d2 m).
    m.comp[0][i] = st * dx / r;
    m.comp[1][i] = -sign * st * dy / r;
    m.comp[2][i] = std::cos(theta);
  }
  return m;
}

VectorField make_twisted_skyrmion_string_3d(
    const TorusGrid& g, const std::array<double, 3>& center, double radius,
    int twists) {
  if (g.dim != 3)
    throw PreconditionError("twisted-string ansatz needs a 3D grid");
  check_radius(radius);

  VectorField m(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.coords(i);
    const std::array<double, 3> dx = {
        minimal_image(g.coordinate(c[0]), center[0]),
        minimal_image(g.coordinate(c[1]), center[1]),
        minimal_image(g.coordinate(c[2]), center[2])};
    const double rho = std::sqrt(dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2]);
    if (rho >= radius || rho == 0.0) {
      m.comp[2][i] = 1.0;
      continue;
    }
    // Suspension coordinate: f falls from pi at the center to 0 at the
    // boundary sphere, flat at both ends.
    const double f = kPi * smoothstep_flat(1.0 - rho / radius);
    const std::array<double, 3> nhat = {dx[0] / rho, dx[1] / rho,
                                        dx[2] / rho};
    const std::array<double, 3> s = sphere_power_map(nhat, twists);
    // Point on S^3 = (cos f, sin f * s), then the standard fibration
    // S^3 -> S^2 through the complex pairs Z0 = G0 + i G3, Z1 = G1 - i G2;
    // the conjugated pair orients the fibers so that `twists` = +1 links
    // them positively.
    const double sf = std::sin(f);
    const double z0r = std::cos(f), z0i = sf * s[2];
    const double z1r = sf * s[0], z1i = -sf * s[1];
    m.comp[0][i] = 2.0 * (z0r * z1r + z0i * z1i);
    m.comp[1][i] = 2.0 * (z0r * z1i - z0i * z1r);
    m.comp[2][i] = (z0r * z0r + z0i * z0i) - (z1r * z1r + z1i * z1i);
  }
  return m;
}

VectorField build_ansatz(const TorusGrid& g, const AnsatzSpec& spec) {
  switch (spec.kind) {
    case AnsatzKind::kConstant:
      return make_constant(g, spec.direction);
    case AnsatzKind::kSingleHarmonic:
      return make_single_harmonic(g, spec.wavevector, spec.axis_pair);
    case AnsatzKind::kPerturbedConstant:
      return make_perturbed_constant(g, spec.seed, spec.amplitude,
                                     spec.band_sq);
    case AnsatzKind::kSkyrmion2d:
      return make_skyrmion_2d(g, {spec.center[0], spec.center[1]},
                              spec.radius, spec.sign);
    case AnsatzKind::kTwistedSkyrmionString3d:
      return make_twisted_skyrmion_string_3d(g, spec.center, spec.radius,
                                             spec.twists);
  }
  throw PreconditionError("unknown ansatz kind");
}

}  // namespace sllg
