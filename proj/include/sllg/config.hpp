#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sllg/initial_data.hpp"
#include "sllg/integrate.hpp"

namespace sllg {

// Driving-noise description: a named preset or an explicit list of constant
// coefficient vectors h_k (one independent Brownian motion per entry), all
// scaled by `amplitude`.
//   off        - deterministic flow, no noise channels
//   constant-z - single channel along e3 (the default)
//   custom     - channels given by `directions`
struct NoiseSpec {
  std::string preset = "constant-z";
  double amplitude = 1.0;
  std::vector<std::array<double, 3>> directions;
};

// Complete, serializable description of one run. The INI schema (sections
// [run], [noise], [initial], [output]) maps one key per field; doubles are
// printed with max_digits10 so parse(serialize(c)) == c exactly.
struct RunConfig {
  // [run]
  int dimension = 2;
  int n = 16;                 // key: grid
  long cutoff_sq = -1;        // key: cutoff; squared radius, -1 keeps all
  double horizon = 0.1;
  std::size_t steps = 100;
  double lambda = 1.0;
  double epsilon = 0.1;
  Scheme scheme = Scheme::kStratonovichHeun;
  bool renormalize = false;
  bool ito_correction = true;
  double l2_slack = 1e-6;     // key: l2-slack
  std::uint64_t seed = 0;

  NoiseSpec noise;    // [noise]
  AnsatzSpec initial; // [initial]

  // [output]
  std::string output_dir = "out";  // key: directory
  std::size_t snapshot_stride = 0;
  std::size_t record_stride = 1;
};

// Parse / serialize the INI text form. Unknown sections or keys, malformed
// values, and violated invariants (dimension in {1,2,3}, even grid >= 4,
// steps >= 1, horizon >= 0, lambda > 0, epsilon > 0, ...) throw ConfigError.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& c);
void validate_config(const RunConfig& c);

// File wrappers; unreadable/unwritable paths throw IoError.
RunConfig load_config(const std::string& path);
void save_config(const std::string& path, const RunConfig& c);

// Constant noise fields on the run's grid per the settings (empty for "off").
std::vector<VectorField> build_noise_fields(const TorusGrid& g,
                                            const NoiseSpec& s);

}  // namespace sllg
