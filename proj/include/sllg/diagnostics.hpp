#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sllg/field.hpp"
#include "sllg/integrate.hpp"
#include "sllg/model.hpp"

namespace sllg {

// One row of scalar observables measured on a snapshot.
struct DiagnosticsRecord {
  double time = 0.0;
  double l2_norm = 0.0;
  double h1_seminorm = 0.0;
  double h2_norm = 0.0;  // canonical (1 + 4pi^2|k|^2)-weighted norm
  double energy = 0.0;
  double unit_deviation = 0.0;
  double tangency_residual = 0.0;
  std::optional<double> charge;  // topological invariant, when requested
};

// sup_x | |m(x)| - 1 |.
double unit_deviation(const VectorField& m);

// max over axes j of ||(m, d_j m)||_{L2} with spectral derivatives; zero to
// rounding error whenever |m| is constant on the grid.
double tangency_residual(const VectorField& m);

// ||u||_inf / (||u||_{L2}^a ||u||_{H2}^(1-a)) with a = 1 - d/4 (1/4 in three
// dimensions, 1/2 in two). Throws PreconditionError on the zero field.
double agmon_ratio(const VectorField& u);

// ||grad u||_{L4} / (||u||_{L2}^{1/4} ||u||_{H2}^{3/4}), the gradient
// interpolation ratio; L4 by grid quadrature. Throws on the zero field.
double grad_l4_ratio(const VectorField& u);

// Scalar observables for one state / every snapshot of a trajectory.
// `with_charge` evaluates the dimension-matching topological invariant
// (degree in 2D, Hopf invariant in 3D; never available in 1D).
DiagnosticsRecord measure(const VectorField& m, const ModelParams& p,
                          double t, bool with_charge = false);
std::vector<DiagnosticsRecord> measure_trajectory(const Trajectory& tr,
                                                  const ModelParams& p,
                                                  bool with_charge = false);

// Least-squares slope of log ||m(t+tau) - m(t)|| against log tau over a set
// of dyadic snapshot lags (default: 1, 2, 4, ... up to half the trajectory),
// with the per-lag norms averaged in log space over t. Returns +infinity for
// a constant trajectory (every exponent fits). Needs >= 16 snapshots.
double holder_exponent_estimate(
    const Trajectory& tr,
    const std::function<double(const VectorField&)>& norm = {},
    std::vector<std::size_t> lags = {});

// ||m_A(t) - m_B(t)||_{L2} per matched snapshot. Trajectories on different
// grids of the same dimension are compared on the finer grid by spectral
// embedding. Throws PreconditionError when snapshot times differ.
struct DifferenceSeries {
  std::vector<double> times;
  std::vector<double> values;
  double max = 0.0;
};
DifferenceSeries l2_difference_series(const Trajectory& a,
                                      const Trajectory& b);

// Log-log least-squares fit of errors against parameters (>= 3 samples,
// all positive). `monotone` flags whether the errors decrease with the
// parameter; the slope is reported either way.
struct ConvergenceFit {
  double order = 0.0;
  bool monotone = false;
};
ConvergenceFit convergence_order(const std::vector<double>& parameters,
                                 const std::vector<double>& errors);

}  // namespace sllg
