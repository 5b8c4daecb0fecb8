#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sllg/config.hpp"
#include "sllg/diagnostics.hpp"
#include "sllg/integrate.hpp"

namespace sllg {

// Process exit codes shared by every command (CI contract).
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;     // invalid configuration / CLI usage
constexpr int kExitNumerical = 3;  // blowup, bound violation, obstruction
constexpr int kExitCheck = 4;      // command ran but its verdict failed

// Everything a run needs, assembled from a validated config: grid, model
// parameters (noise fields built from the noise settings), projected-admissible
// initial state, scheme settings, and the seeded driving path.
struct RunSetup {
  TorusGrid grid{2, 16};
  ModelParams params;
  VectorField m0;
  SchemeConfig scheme;
  BrownianPath path;
};
RunSetup prepare_run(const RunConfig& c);

// Output directory for a run: $SLLG_OUTPUT_ROOT/<output_dir> when the
// environment variable is set, plain <output_dir> otherwise. Created
// (recursively) when missing.
std::string resolve_output_dir(const RunConfig& c);

// Diagnostics CSV, schema version header then one row per record:
//   # sllg-diagnostics v1
//   time,l2_norm,h1_seminorm,h2_norm,energy,unit_deviation,
//   tangency_residual,charge
// The charge cell is empty when the invariant was not evaluated.
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& rows);

// Subcommand drivers. Each writes its outputs (resolved config, CSV,
// snapshots, report.json) under resolve_output_dir(c) and returns an exit
// code; numerical failures are caught, the last good state is flushed, and
// kExitNumerical is returned. Configuration errors are NOT caught here --
// the CLI maps them to kExitConfig.

// Time-march one trajectory; write snapshots plus the diagnostics CSV.
int cmd_simulate(const RunConfig& c);

// Integrate the same driving path under every spectral cutoff in `cutoffs`
// (>= 2 required) and report the matrix of pairwise sup_t L2 differences.
// Verdict: each successive refinement shrinks the consecutive difference by
// at least a factor of 2.
int cmd_uniqueness(const RunConfig& c, const std::vector<long>& cutoffs);

// Dyadic time-step refinement on one bridge-refined path: `levels` runs with
// steps, 2*steps, 4*steps, ... Optionally a matching per-level cutoff list
// for simultaneous space-time refinement. Reports consecutive terminal L2
// differences, the fitted order, and the terminal unit-norm defect per
// level. Verdict: differences decrease monotonically.
int cmd_converge(const RunConfig& c, int levels,
                 const std::vector<long>& level_cutoffs = {});

// Heun vs corrected Euler on the same path per dt (>= 3 dyadic step counts
// derived from `levels`), averaged over `replicas` independent paths seeded
// seed, seed+1, ...; fits the slope of their mean terminal distance and
// reports the uncorrected scheme's mean bias at the coarsest dt. The
// monotone-norm abort guard is off for these runs: the coarse levels and the
// deliberately uncorrected probe are norm-defective by design, and the runs
// are only compared against each other. Verdict: fitted slope >= 0.5.
int cmd_scheme_check(const RunConfig& c, int levels, int replicas = 4);

// Track the dimension-matching topological invariant along the run; certify
// the initial state against a coarser replica of the same ansatz. Verdict:
// certification holds and max drift <= drift_tol.
int cmd_topology(const RunConfig& c, double drift_tol);

}  // namespace sllg
