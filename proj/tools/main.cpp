// Command-line driver for the stochastic Landau-Lifshitz-Gilbert simulator:
// reproducible runs, refinement studies, scheme cross-validation, and
// topological-invariant tracking. See README.md for the config schema and
// output formats.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sllg/config.hpp"
#include "sllg/errors.hpp"
#include "sllg/experiments.hpp"

namespace {

struct Overrides {
  std::optional<int> dimension, grid, sign, twists;
  std::optional<long> cutoff;
  std::optional<double> horizon, lambda, epsilon, noise_amplitude, l2_slack;
  std::optional<std::uint64_t> steps, seed, snapshot_stride, record_stride;
  std::optional<std::string> scheme, ansatz, output_dir, noise_preset;
  bool renormalize_on = false, renormalize_off = false;
  bool correction_on = false, correction_off = false;
};

void apply(const Overrides& o, sllg::RunConfig& c) {
  if (o.dimension) c.dimension = *o.dimension;
  if (o.grid) c.n = *o.grid;
  if (o.cutoff) c.cutoff_sq = *o.cutoff;
  if (o.horizon) c.horizon = *o.horizon;
  if (o.steps) c.steps = static_cast<std::size_t>(*o.steps);
  if (o.lambda) c.lambda = *o.lambda;
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (o.scheme) c.scheme = sllg::parse_scheme(*o.scheme);
  if (o.seed) c.seed = *o.seed;
  if (o.l2_slack) c.l2_slack = *o.l2_slack;
  if (o.renormalize_on) c.renormalize = true;
  if (o.renormalize_off) c.renormalize = false;
  if (o.correction_on) c.ito_correction = true;
  if (o.correction_off) c.ito_correction = false;
  if (o.noise_preset) c.noise.preset = *o.noise_preset;
  if (o.noise_amplitude) c.noise.amplitude = *o.noise_amplitude;
  if (o.ansatz) c.initial.kind = sllg::parse_ansatz(*o.ansatz);
  if (o.sign) c.initial.sign = *o.sign;
  if (o.twists) c.initial.twists = *o.twists;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.snapshot_stride)
    c.snapshot_stride = static_cast<std::size_t>(*o.snapshot_stride);
  if (o.record_stride)
    c.record_stride = static_cast<std::size_t>(*o.record_stride);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sllg: pseudospectral simulator for the stochastically driven,\n"
      "second-order-regularized Landau-Lifshitz-Gilbert equation on the\n"
      "periodic torus (dimensions 1-3)."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("-c,--config", config_path,
                 "INI run configuration (defaults used when omitted)")
      ->check(CLI::ExistingFile);

  Overrides o;
  app.add_option("--dimension", o.dimension, "spatial dimension (1-3)");
  app.add_option("--grid", o.grid, "grid points per axis (even, >= 4)");
  app.add_option("--cutoff", o.cutoff,
                 "squared spectral cutoff radius (-1 keeps every mode)");
  app.add_option("--horizon", o.horizon, "final time T");
  app.add_option("--steps", o.steps, "number of time steps");
  app.add_option("--lambda", o.lambda, "damping coefficient");
  app.add_option("--epsilon", o.epsilon, "second-order regularization weight");
  app.add_option("--scheme", o.scheme,
                 "stratonovich-heun | ito-euler-corrected | imex-heun");
  app.add_option("--seed", o.seed, "master seed for path and data");
  app.add_option("--l2-slack", o.l2_slack,
                 "relative slack for the monotone L2 guard");
  app.add_flag("--renormalize", o.renormalize_on,
               "project to unit length after every step");
  app.add_flag("--no-renormalize", o.renormalize_off,
               "disable per-step renormalization");
  app.add_flag("--no-ito-correction", o.correction_off,
               "drop the Ito drift correction (bias demonstration only)");
  app.add_option("--noise-preset", o.noise_preset,
                 "off | constant-z | custom");
  app.add_option("--noise-amplitude", o.noise_amplitude,
                 "scale applied to every noise channel");
  app.add_option("--ansatz", o.ansatz,
                 "constant | single-harmonic | perturbed-constant | "
                 "skyrmion-2d | twisted-skyrmion-string-3d");
  app.add_option("--sign", o.sign, "2D soliton charge sign (+1 or -1)");
  app.add_option("--twists", o.twists, "3D soliton twist count");
  app.add_option("--out", o.output_dir,
                 "output directory (prefixed by $SLLG_OUTPUT_ROOT)");
  app.add_option("--snapshot-stride", o.snapshot_stride,
                 "steps between stored states (0: first and last only)");
  app.add_option("--record-stride", o.record_stride,
                 "steps between diagnostics rows");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "march one trajectory; write snapshots + diagnostics CSV");

  std::vector<long> cutoffs;
  CLI::App* uniqueness = app.add_subcommand(
      "uniqueness",
      "integrate the same driving path under several spectral cutoffs and "
      "report the pairwise sup-in-time L2 differences");
  uniqueness
      ->add_option("--cutoffs", cutoffs,
                   "squared cutoff radii, comma separated (>= 2)")
      ->delimiter(',')
      ->required();

  int levels = 4;
  std::vector<long> level_cutoffs;
  CLI::App* converge = app.add_subcommand(
      "converge",
      "dyadic time-step refinement on one bridge-refined path; report "
      "consecutive terminal differences and the fitted order");
  converge->add_option("--levels", levels, "refinement levels (>= 3)");
  converge
      ->add_option("--cutoffs", level_cutoffs,
                   "optional per-level squared cutoffs (matches --levels)")
      ->delimiter(',');

  int sc_levels = 4;
  int sc_replicas = 4;
  CLI::App* scheme_check = app.add_subcommand(
      "scheme-check",
      "Heun vs corrected-Euler terminal distance per dyadic dt, fitted "
      "slope, and the uncorrected scheme's bias");
  scheme_check->add_option("--levels", sc_levels, "dt levels (>= 3)");
  scheme_check->add_option("--replicas", sc_replicas,
                           "independent driving paths to average over");

  double drift_tol = 0.0;  // 0: resolved per dimension below
  CLI::App* topology = app.add_subcommand(
      "topology",
      "certify the initial topological invariant against a coarser replica "
      "and track it along the run");
  topology->add_option("--drift-tol", drift_tol,
                       "max allowed invariant drift (default 1e-2 in 2D, "
                       "5e-2 in 3D)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sllg::kExitOk : sllg::kExitConfig;
  }

  try {
    sllg::RunConfig c;
    if (!config_path.empty()) c = sllg::load_config(config_path);
    apply(o, c);
    sllg::validate_config(c);

    if (simulate->parsed()) return sllg::cmd_simulate(c);
    if (uniqueness->parsed()) return sllg::cmd_uniqueness(c, cutoffs);
    if (converge->parsed())
      return sllg::cmd_converge(c, levels, level_cutoffs);
    if (scheme_check->parsed())
      return sllg::cmd_scheme_check(c, sc_levels, sc_replicas);
    if (topology->parsed()) {
      if (drift_tol == 0.0) drift_tol = c.dimension == 2 ? 1e-2 : 5e-2;
      return sllg::cmd_topology(c, drift_tol);
    }
    std::cerr << "no subcommand selected\n";
    return sllg::kExitConfig;
  } catch (const sllg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sllg::kExitConfig;
  } catch (const sllg::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return sllg::kExitConfig;
  } catch (const sllg::PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sllg::kExitConfig;
  } catch (const sllg::GridMismatchError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sllg::kExitConfig;
  } catch (const sllg::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return sllg::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sllg::kExitNumerical;
  }
}
