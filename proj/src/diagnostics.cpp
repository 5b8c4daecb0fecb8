#include "sllg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "sllg/errors.hpp"
#include "sllg/spectral.hpp"
#include "sllg/topology.hpp"

namespace sllg {

namespace {

// Least-squares slope of y against x (>= 2 points, x must vary).
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0)
    throw PreconditionError("slope fit needs at least two distinct abscissae");
  return sxy / sxx;
}

void require_nonzero(const VectorField& u, const char* what) {
  if (!all_finite(u)) throw PreconditionError(std::string(what) + ": field has non-finite entries");
  if (l2_norm(u) == 0.0)
    throw PreconditionError(std::string(what) + ": undefined on the zero field");
}

}  // namespace

double unit_deviation(const VectorField& m) { return sup_unit_deviation(m); }

double tangency_residual(const VectorField& m) {
  double worst = 0.0;
  for (int axis = 0; axis < m.grid.dim; ++axis)
    worst = std::max(worst, l2_norm(dot(m, derivative(m, axis))));
  return worst;
}

double agmon_ratio(const VectorField& u) {
  require_nonzero(u, "agmon_ratio");
  const double alpha = 1.0 - static_cast<double>(u.grid.dim) / 4.0;
  const double low = l2_norm(u);
  const double high = sobolev_norm(u, 2.0);
  return linf_norm(u) / (std::pow(low, alpha) * std::pow(high, 1.0 - alpha));
}

double grad_l4_ratio(const VectorField& u) {
  require_nonzero(u, "grad_l4_ratio");
  // |grad u|^2 pointwise, summed over components and axes.
  ScalarField sq(u.grid);
  for (int axis = 0; axis < u.grid.dim; ++axis) {
    const VectorField du = derivative(u, axis);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < sq.values.size(); ++i)
        sq.values[i] += du.comp[c][i] * du.comp[c][i];
  }
  double fourth = 0.0;
  for (double v : sq.values) fourth += v * v;
  fourth /= static_cast<double>(sq.values.size());
  const double l4 = std::pow(fourth, 0.25);
  const double low = l2_norm(u);
  const double high = sobolev_norm(u, 2.0);
  return l4 / (std::pow(low, 0.25) * std::pow(high, 0.75));
}

DiagnosticsRecord measure(const VectorField& m, const ModelParams& p,
                          double t, bool with_charge) {
  if (!all_finite(m))
    throw PreconditionError("measure: state has non-finite entries");
  DiagnosticsRecord r;
  r.time = t;
  r.l2_norm = l2_norm(m);
  r.h1_seminorm = sobolev_seminorm(m, 1);
  r.h2_norm = sobolev_norm(m, 2.0);
  r.energy = energy(m, p);
  r.unit_deviation = sup_unit_deviation(m);
  r.tangency_residual = tangency_residual(m);
  if (with_charge) {
    if (m.grid.dim == 2)
      r.charge = degree_2d(m).raw;
    else if (m.grid.dim == 3)
      r.charge = hopf_invariant_3d(m).raw;
  }
  const double vals[] = {r.l2_norm, r.h1_seminorm,  r.h2_norm,
                         r.energy,  r.unit_deviation, r.tangency_residual};
  for (double v : vals)
    if (!std::isfinite(v))
      throw PreconditionError("measure: non-finite diagnostic value");
  return r;
}

std::vector<DiagnosticsRecord> measure_trajectory(const Trajectory& tr,
                                                  const ModelParams& p,
                                                  bool with_charge) {
  if (tr.snapshots.empty())
    throw PreconditionError("measure_trajectory: no snapshots recorded");
  if (tr.snapshots.size() != tr.snapshot_times.size())
    throw PreconditionError("measure_trajectory: snapshot/time count mismatch");
  std::vector<DiagnosticsRecord> rows;
  rows.reserve(tr.snapshots.size());
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    if (i > 0 && !(tr.snapshot_times[i] > tr.snapshot_times[i - 1]))
      throw PreconditionError(
          "measure_trajectory: snapshot times must strictly increase");
    rows.push_back(
        measure(tr.snapshots[i], p, tr.snapshot_times[i], with_charge));
  }
  return rows;
}

double holder_exponent_estimate(
    const Trajectory& tr,
    const std::function<double(const VectorField&)>& norm,
    std::vector<std::size_t> lags) {
  const std::size_t n = tr.snapshots.size();
  if (n < 16)
    throw PreconditionError(
        "holder_exponent_estimate: needs at least 16 snapshots");
  if (tr.snapshot_times.size() != n)
    throw PreconditionError(
        "holder_exponent_estimate: snapshot/time count mismatch");
  const auto diff_norm =
      norm ? norm
           : std::function<double(const VectorField&)>(
                 [](const VectorField& f) { return l2_norm(f); });
  if (lags.empty()) {
    for (std::size_t lag = 1; 2 * lag <= n - 1; lag *= 2) lags.push_back(lag);
  }
  std::sort(lags.begin(), lags.end());
  lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
  if (!lags.empty() && lags.front() == 0)
    throw PreconditionError("holder_exponent_estimate: zero lag");
  if (lags.size() < 2 || lags.back() > n - 1)
    throw PreconditionError(
        "holder_exponent_estimate: need >= 2 lags inside the trajectory");

  std::vector<double> log_tau, log_inc;
  bool any_motion = false;
  for (std::size_t lag : lags) {
    double tau_sum = 0.0, log_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + lag < n; ++i) {
      VectorField d = tr.snapshots[i + lag];
      axpy(d, -1.0, tr.snapshots[i]);
      const double inc = diff_norm(d);
      tau_sum += tr.snapshot_times[i + lag] - tr.snapshot_times[i];
      if (inc > 0.0) {
        log_sum += std::log(inc);
        ++count;
        any_motion = true;
      }
    }
    if (count == 0) continue;  // all increments at this lag vanish
    const std::size_t pairs = n - lag;
    log_tau.push_back(std::log(tau_sum / static_cast<double>(pairs)));
    log_inc.push_back(log_sum / static_cast<double>(count));
  }
  if (!any_motion) return std::numeric_limits<double>::infinity();
  if (log_tau.size() < 2)
    throw PreconditionError(
        "holder_exponent_estimate: too few lags with nonzero increments");
  return lsq_slope(log_tau, log_inc);
}

DifferenceSeries l2_difference_series(const Trajectory& a,
                                      const Trajectory& b) {
  if (a.snapshots.empty() || b.snapshots.empty())
    throw PreconditionError("l2_difference_series: empty trajectory");
  if (a.snapshots.size() != b.snapshots.size())
    throw PreconditionError("l2_difference_series: snapshot count mismatch");
  if (a.snapshots.front().grid.dim != b.snapshots.front().grid.dim)
    throw GridMismatchError("l2_difference_series: dimension mismatch");
  DifferenceSeries out;
  out.times.reserve(a.snapshots.size());
  out.values.reserve(a.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    const double ta = a.snapshot_times[i], tb = b.snapshot_times[i];
    if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta)))
      throw PreconditionError("l2_difference_series: snapshot times differ");
    const int n = std::max(a.snapshots[i].grid.n, b.snapshots[i].grid.n);
    VectorField fa = a.snapshots[i].grid.n == n ? a.snapshots[i]
                                                : resample(a.snapshots[i], n);
    const VectorField fb = b.snapshots[i].grid.n == n
                               ? b.snapshots[i]
                               : resample(b.snapshots[i], n);
    axpy(fa, -1.0, fb);
    const double v = l2_norm(fa);
    out.times.push_back(ta);
    out.values.push_back(v);
    out.max = std::max(out.max, v);
  }
  return out;
}

ConvergenceFit convergence_order(const std::vector<double>& parameters,
                                 const std::vector<double>& errors) {
  if (parameters.size() != errors.size())
    throw PreconditionError("convergence_order: size mismatch");
  if (parameters.size() < 3)
    throw PreconditionError("convergence_order: needs at least 3 samples");
  std::vector<double> lx, ly;
  lx.reserve(parameters.size());
  ly.reserve(errors.size());
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (!(parameters[i] > 0.0) || !(errors[i] > 0.0))
      throw PreconditionError(
          "convergence_order: parameters and errors must be positive");
    lx.push_back(std::log(parameters[i]));
    ly.push_back(std::log(errors[i]));
  }
  // Monotone means the error shrinks whenever the parameter does.
  std::vector<std::size_t> idx(parameters.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return parameters[i] > parameters[j];
  });
  bool monotone = true;
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (errors[idx[i]] > errors[idx[i - 1]]) monotone = false;
  return {lsq_slope(lx, ly), monotone};
}

}  // namespace sllg
