#include "sllg/topology.hpp"

#include <cmath>
#include <sstream>

#include "sllg/spectral.hpp"

namespace sllg {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFluxGate = 1e-6;

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / static_cast<double>(f.values.size());
}

// Normalize after checking the constraint gate shared by all invariants.
VectorField gated_normalize(const VectorField& m, const char* what) {
  const double dev = sup_unit_deviation(m);
  if (dev >= 0.1)
    throw PreconditionError(std::string(what) +
                            ": field is too far from unit length (sup "
                            "deviation " +
                            std::to_string(dev) + ")");
  return normalized(m);
}

InvariantReport report_from(double raw, int resolution) {
  InvariantReport r;
  r.raw = raw;
  r.nearest = std::lround(raw);
  r.residual = std::abs(raw - static_cast<double>(r.nearest));
  r.resolution = resolution;
  return r;
}

}  // namespace

InvariantReport degree_2d(const VectorField& m) {
  if (m.grid.dim != 2)
    throw PreconditionError("degree_2d needs a 2D field");
  const VectorField u = gated_normalize(m, "degree_2d");
  const ScalarField density =
      dot(u, cross(derivative(u, 0), derivative(u, 1)));
  return report_from(mean(density) / (4.0 * kPi), m.grid.n);
}

VectorField emergent_field(const VectorField& m) {
  if (m.grid.dim != 3)
    throw PreconditionError("emergent_field needs a 3D field");
  const VectorField d1 = derivative(m, 0);
  const VectorField d2 = derivative(m, 1);
  const VectorField d3 = derivative(m, 2);
  VectorField b(m.grid);
  b.comp[0] = dot(m, cross(d2, d3)).values;
  b.comp[1] = dot(m, cross(d3, d1)).values;
  b.comp[2] = dot(m, cross(d1, d2)).values;
  return b;
}

VectorField curl_potential(const VectorField& b) {
  if (b.grid.dim != 3)
    throw PreconditionError("curl_potential needs a 3D field");
  const SpectralField bh = to_spectral(b);
  SpectralField ah(b.grid);
  const std::size_t n = b.grid.size();
  const int nyquist = b.grid.n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const long ksq = b.grid.wavevector_sq(i);
    if (ksq == 0) continue;  // zero-mean gauge; flux part has no potential
    const auto c = b.grid.coords(i);
    // Nyquist slots hold k and -k in one coefficient; i k x (.) has no real
    // representative there, so the shell is dropped (it is quadrature tail).
    if (c[0] == nyquist || c[1] == nyquist || c[2] == nyquist) continue;
    const auto k = b.grid.wavevector(i);
    // A_hat = i (k x b_hat) * 2pi / |2pi k|^2 = i (k x b_hat) / (2pi |k|^2).
    const double scale = 1.0 / (2.0 * kPi * static_cast<double>(ksq));
    const std::complex<double> ifac(0.0, scale);
    const std::complex<double> b0 = bh.comp[0][i], b1 = bh.comp[1][i],
                               b2 = bh.comp[2][i];
    ah.comp[0][i] = ifac * (static_cast<double>(k[1]) * b2 -
                            static_cast<double>(k[2]) * b1);
    ah.comp[1][i] = ifac * (static_cast<double>(k[2]) * b0 -
                            static_cast<double>(k[0]) * b2);
    ah.comp[2][i] = ifac * (static_cast<double>(k[0]) * b1 -
                            static_cast<double>(k[1]) * b0);
  }
  return to_real(ah);
}

double whitehead_integral(const VectorField& a, const VectorField& b) {
  // With the area form normalized to total mass 1 the invariant is
  // int (A/4pi) ^ (F/4pi); each unordered component pair enters once.
  return l2_inner(a, b) / (16.0 * kPi * kPi);
}

InvariantReport hopf_invariant_3d(const VectorField& m) {
  if (m.grid.dim != 3)
    throw PreconditionError("hopf_invariant_3d needs a 3D field");
  const VectorField u = gated_normalize(m, "hopf_invariant_3d");
  const VectorField b = emergent_field(u);

  std::array<double, 3> fluxes;
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    double s = 0.0;
    for (double v : b.comp[c]) s += v;
    fluxes[c] = s / static_cast<double>(b.comp[c].size());
    worst = std::max(worst, std::abs(fluxes[c]));
  }
  if (worst > kFluxGate) {
    std::ostringstream os;
    os << "hopf_invariant_3d: the pullback form has nonzero mean flux ("
       << fluxes[0] << ", " << fluxes[1] << ", " << fluxes[2]
       << ") through the coordinate 2-tori; no periodic potential exists";
    throw FluxObstructionError(os.str(), worst);
  }

  InvariantReport r =
      report_from(whitehead_integral(curl_potential(b), b), m.grid.n);
  r.fluxes = fluxes;
  return r;
}

InvariantReport certify_pair(const InvariantReport& coarse,
                             const InvariantReport& fine, double threshold) {
  InvariantReport r = fine;
  r.certified = coarse.nearest == fine.nearest &&
                coarse.residual < threshold && fine.residual < threshold;
  return r;
}

InvariantSeries track_invariant(
    const Trajectory& tr,
    const std::function<InvariantReport(const VectorField&)>& invariant,
    std::size_t stride) {
  if (stride == 0)
    throw PreconditionError("track_invariant stride must be positive");
  if (tr.snapshots.empty())
    throw PreconditionError("track_invariant needs a trajectory that "
                            "recorded snapshots");
  InvariantSeries series;
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    if (i % stride != 0 && i + 1 != tr.snapshots.size()) continue;
    const double t = tr.snapshot_times[i];
    try {
      series.values.push_back(invariant(tr.snapshots[i]).raw);
    } catch (const FluxObstructionError& e) {
      throw FluxObstructionError(
          "at t = " + std::to_string(t) + ": " + e.what(), e.worst_flux());
    }
    series.times.push_back(t);
  }
  for (double v : series.values)
    series.max_drift = std::max(series.max_drift,
                                std::abs(v - series.values.front()));
  return series;
}

}  // namespace sllg
