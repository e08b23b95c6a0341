#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hemato/model.hpp"

namespace hemato {

/// Options that steer the analysis and simulation pipeline.
struct RunOptions {
  double grid_step = 0.005;
  int n_max = 1;
  std::vector<double> sim_taus{0.5, 1.4, 2.8, 2.9};
  double history_factor = 1.1;
  double max_step = 0.0;  ///< 0 selects tau/64
  double sim_t_end = 0.0;  ///< 0 selects a tau-dependent horizon
  double sim_transient = 0.0;  ///< 0 selects a third of the horizon
  int output_stride = 16;
};

struct Config {
  ModelParams params;
  RunOptions run;
  std::string text;  ///< raw file contents, for hashing
};

/// Parses an INI-style file:
///
///   [model]  delta, gamma, mu, k, (tau)
///   [hill]   beta0, G, a, K, r
///   [run]    optional RunOptions keys
///
/// Unknown sections or keys, duplicates, malformed numbers and missing
/// required keys raise ConfigError. The parsed parameters are validated and
/// any violation is reported as a ConfigError as well.
Config parse_config_text(std::string_view text, std::string_view origin = "<config>");
Config parse_config(const std::filesystem::path& path);

/// Contents of the shipped default configuration.
std::string default_config_text();

}  // namespace hemato
