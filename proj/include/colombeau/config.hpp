#pragma once

#include <string>
#include <utility>
#include <vector>

#include "colombeau/assoc.hpp"
#include "colombeau/expr.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/quadrature.hpp"

namespace colombeau {

// Effective run parameters: built-in defaults, overlaid by an optional
// config file, overlaid by command-line flags (in that order).
struct RunConfig {
  std::string kernel = "model";    // model | logdamped | scaled-aq
  std::string mollifier = "base";  // base | skew
  int q = 0;                       // A_q moment-killing order

  double eps0 = 0.0625;
  double ratio = 0.5;
  int rungs = 11;

  double quad_tol = 1e-10;
  double moment_tol = 1e-9;
  double assoc_tol = 1e-4;
  double fit_tol = 0.15;
  double rate_margin = 0.05;
  double pair_tol = 1e-11;
  int max_depth = 40;

  int ppu = 512;
  double window_lo = -0.5, window_hi = 0.5;
  double k_lo = -1.0, k_hi = 1.0;
  double l_lo = -2.0, l_hi = 2.0;

  std::string probes;  // semicolon-separated probe expressions; empty = default family
  bool memoize = false;

  std::string json_path;  // also write the JSON document here
  std::string csv_path;   // write the ladder as CSV here
};

// One key=value assignment; throws ConfigError on unknown keys or
// unparsable values.
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat key=value file with '#' comments; throws ConfigError with the line
// number on malformed lines.
void load_config_file(RunConfig& cfg, const std::string& path);

// Name of the environment variable consulted for a default config path.
extern const char* kConfigEnvVar;

// Cross-field sanity; throws ConfigError.
void validate(const RunConfig& cfg);

Mollifier make_mollifier_choice(const RunConfig& cfg);
KernelSpec make_kernel(const RunConfig& cfg);
Ladder make_ladder(const RunConfig& cfg);
AssocOptions make_options(const RunConfig& cfg);
ProbeFamily make_probes(const RunConfig& cfg);

// The full effective configuration as ordered (key, value) text pairs, in
// a fixed order, for the report's config_echo.
std::vector<std::pair<std::string, std::string>> echo_pairs(const RunConfig& cfg);

}  // namespace colombeau
