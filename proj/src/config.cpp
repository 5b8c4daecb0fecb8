#include "sllg/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sllg/errors.hpp"
#include "sllg/model.hpp"

namespace sllg {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': '" + v + "'");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("config: bad unsigned integer for '" + key + "': '" + v +
                      "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("config: bad boolean for '" + key + "': '" + v +
                    "' (expected true or false)");
}

std::vector<std::string> split_ws(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

template <typename T, std::size_t K>
std::array<T, K> parse_tuple(const std::string& key, const std::string& v,
                             T (*one)(const std::string&,
                                      const std::string&)) {
  const auto toks = split_ws(v);
  if (toks.size() != K)
    throw ConfigError("config: '" + key + "' needs " + std::to_string(K) +
                      " entries, got " + std::to_string(toks.size()));
  std::array<T, K> out{};
  for (std::size_t i = 0; i < K; ++i) out[i] = one(key, toks[i]);
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int parse_int(const std::string& key, const std::string& v) {
  return static_cast<int>(parse_long(key, v));
}

void apply_run(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "dimension")
    c.dimension = parse_int(key, v);
  else if (key == "grid")
    c.n = parse_int(key, v);
  else if (key == "cutoff")
    c.cutoff_sq = parse_long(key, v);
  else if (key == "horizon")
    c.horizon = parse_double(key, v);
  else if (key == "steps")
    c.steps = static_cast<std::size_t>(parse_u64(key, v));
  else if (key == "lambda")
    c.lambda = parse_double(key, v);
  else if (key == "epsilon")
    c.epsilon = parse_double(key, v);
  else if (key == "scheme")
    c.scheme = parse_scheme(v);
  else if (key == "renormalize")
    c.renormalize = parse_bool(key, v);
  else if (key == "ito-correction")
    c.ito_correction = parse_bool(key, v);
  else if (key == "l2-slack")
    c.l2_slack = parse_double(key, v);
  else if (key == "seed")
    c.seed = parse_u64(key, v);
  else
    throw ConfigError("config: unknown key '" + key + "' in [run]");
}

void apply_noise(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "preset")
    c.noise.preset = v;
  else if (key == "amplitude")
    c.noise.amplitude = parse_double(key, v);
  else if (key == "directions") {
    // '|' separates triples; ';' is unavailable because it opens a comment.
    c.noise.directions.clear();
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, '|')) {
      item = trim(item);
      if (item.empty()) continue;
      c.noise.directions.push_back(
          parse_tuple<double, 3>(key, item, parse_double));
    }
  } else {
    throw ConfigError("config: unknown key '" + key + "' in [noise]");
  }
}

void apply_initial(RunConfig& c, const std::string& key,
                   const std::string& v) {
  AnsatzSpec& a = c.initial;
  if (key == "ansatz") {
    try {
      a.kind = parse_ansatz(v);
    } catch (const PreconditionError& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  else if (key == "direction")
    a.direction = parse_tuple<double, 3>(key, v, parse_double);
  else if (key == "wavevector")
    a.wavevector = parse_tuple<int, 3>(key, v, parse_int);
  else if (key == "axis-pair")
    a.axis_pair = parse_tuple<int, 2>(key, v, parse_int);
  else if (key == "seed")
    a.seed = parse_u64(key, v);
  else if (key == "amplitude")
    a.amplitude = parse_double(key, v);
  else if (key == "band")
    a.band_sq = parse_long(key, v);
  else if (key == "center")
    a.center = parse_tuple<double, 3>(key, v, parse_double);
  else if (key == "radius")
    a.radius = parse_double(key, v);
  else if (key == "sign")
    a.sign = parse_int(key, v);
  else if (key == "twists")
    a.twists = parse_int(key, v);
  else
    throw ConfigError("config: unknown key '" + key + "' in [initial]");
}

void apply_output(RunConfig& c, const std::string& key,
                  const std::string& v) {
  if (key == "directory")
    c.output_dir = v;
  else if (key == "snapshot-stride")
    c.snapshot_stride = static_cast<std::size_t>(parse_u64(key, v));
  else if (key == "record-stride")
    c.record_stride = static_cast<std::size_t>(parse_u64(key, v));
  else
    throw ConfigError("config: unknown key '" + key + "' in [output]");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t cut = line.find_first_of(";#");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section at line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "noise" && section != "initial" &&
          section != "output")
        throw ConfigError("config: unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected 'key = value' at line " +
                        std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "run")
      apply_run(c, key, value);
    else if (section == "noise")
      apply_noise(c, key, value);
    else if (section == "initial")
      apply_initial(c, key, value);
    else if (section == "output")
      apply_output(c, key, value);
    else
      throw ConfigError("config: key '" + key + "' before any section");
  }
  validate_config(c);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "dimension = " << c.dimension << "\n";
  out << "grid = " << c.n << "\n";
  out << "cutoff = " << c.cutoff_sq << "\n";
  out << "horizon = " << fmt_double(c.horizon) << "\n";
  out << "steps = " << c.steps << "\n";
  out << "lambda = " << fmt_double(c.lambda) << "\n";
  out << "epsilon = " << fmt_double(c.epsilon) << "\n";
  out << "scheme = " << scheme_name(c.scheme) << "\n";
  out << "renormalize = " << (c.renormalize ? "true" : "false") << "\n";
  out << "ito-correction = " << (c.ito_correction ? "true" : "false") << "\n";
  out << "l2-slack = " << fmt_double(c.l2_slack) << "\n";
  out << "seed = " << c.seed << "\n";

  out << "\n[noise]\n";
  out << "preset = " << c.noise.preset << "\n";
  out << "amplitude = " << fmt_double(c.noise.amplitude) << "\n";
  if (!c.noise.directions.empty()) {
    out << "directions = ";
    for (std::size_t i = 0; i < c.noise.directions.size(); ++i) {
      const auto& d = c.noise.directions[i];
      if (i) out << " | ";
      out << fmt_double(d[0]) << " " << fmt_double(d[1]) << " "
          << fmt_double(d[2]);
    }
    out << "\n";
  }

  const AnsatzSpec& a = c.initial;
  out << "\n[initial]\n";
  out << "ansatz = " << ansatz_name(a.kind) << "\n";
  out << "direction = " << fmt_double(a.direction[0]) << " "
      << fmt_double(a.direction[1]) << " " << fmt_double(a.direction[2])
      << "\n";
  out << "wavevector = " << a.wavevector[0] << " " << a.wavevector[1] << " "
      << a.wavevector[2] << "\n";
  out << "axis-pair = " << a.axis_pair[0] << " " << a.axis_pair[1] << "\n";
  out << "seed = " << a.seed << "\n";
  out << "amplitude = " << fmt_double(a.amplitude) << "\n";
  out << "band = " << a.band_sq << "\n";
  out << "center = " << fmt_double(a.center[0]) << " " << fmt_double(a.center[1])
      << " " << fmt_double(a.center[2]) << "\n";
  out << "radius = " << fmt_double(a.radius) << "\n";
  out << "sign = " << a.sign << "\n";
  out << "twists = " << a.twists << "\n";

  out << "\n[output]\n";
  out << "directory = " << c.output_dir << "\n";
  out << "snapshot-stride = " << c.snapshot_stride << "\n";
  out << "record-stride = " << c.record_stride << "\n";
  return out.str();
}

void validate_config(const RunConfig& c) {
  if (c.dimension < 1 || c.dimension > 3)
    throw ConfigError("config: dimension must be 1, 2, or 3");
  if (c.n < 4 || c.n % 2 != 0)
    throw ConfigError("config: grid must be even and >= 4");
  if (c.cutoff_sq < -1)
    throw ConfigError("config: cutoff must be >= -1 (-1 keeps every mode)");
  if (!(c.horizon >= 0.0) || !std::isfinite(c.horizon))
    throw ConfigError("config: horizon must be finite and >= 0");
  if (c.steps < 1) throw ConfigError("config: steps must be >= 1");
  if (!(c.lambda > 0.0) || !std::isfinite(c.lambda))
    throw ConfigError("config: lambda must be positive");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon))
    throw ConfigError("config: epsilon must be positive");
  if (!(c.l2_slack >= 0.0))
    throw ConfigError("config: l2-slack must be >= 0");
  if (c.record_stride < 1)
    throw ConfigError("config: record-stride must be >= 1");
  if (c.noise.preset != "off" && c.noise.preset != "constant-z" &&
      c.noise.preset != "custom")
    throw ConfigError("config: noise preset must be off, constant-z, or "
                      "custom, got '" +
                      c.noise.preset + "'");
  if (!(c.noise.amplitude >= 0.0) || !std::isfinite(c.noise.amplitude))
    throw ConfigError("config: noise amplitude must be finite and >= 0");
  if (c.noise.preset == "custom" && c.noise.directions.empty())
    throw ConfigError("config: custom noise needs at least one direction");
  if (c.output_dir.empty())
    throw ConfigError("config: output directory must not be empty");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_config(const std::string& path, const RunConfig& c) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("config: cannot write '" + path + "'");
  out << serialize_config(c);
  if (!out) throw IoError("config: short write to '" + path + "'");
}

std::vector<VectorField> build_noise_fields(const TorusGrid& g,
                                            const NoiseSpec& s) {
  std::vector<VectorField> fields;
  if (s.preset == "off") return fields;
  if (s.preset == "constant-z") {
    fields.push_back(constant_field(g, 0.0, 0.0, s.amplitude));
    return fields;
  }
  for (const auto& d : s.directions)
    fields.push_back(constant_field(g, s.amplitude * d[0], s.amplitude * d[1],
                                    s.amplitude * d[2]));
  return fields;
}

}  // namespace sllg
