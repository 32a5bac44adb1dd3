// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "config.hpp"

namespace mvsde::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kBlowUp = 3,
};

/// Command-line flags that take precedence over the configuration file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> threads;
};

void apply(RunConfig& config, const Overrides& overrides);

/// Thresholds, weights and (when tau is admissible) the decay rate; writes
/// `<prefix>_bounds.json`. Throws ConfigError when constants are missing or
/// the gain is too small.
int cmd_bounds(const RunConfig& config, std::ostream& out);

/// Monte Carlo run; writes `<prefix>_meansq.csv`, `<prefix>_paths.csv` (when
/// sample paths are requested) and `<prefix>_config.json`. Returns kBlowUp
/// after writing a partial, flagged CSV if any replication blows up.
int cmd_simulate(const RunConfig& config, std::ostream& out);

/// Runs the configured verifier suite; writes `<prefix>_check.json`.
int cmd_check(const RunConfig& config, std::ostream& out);

struct ExampleSummary {
  double tau_double_star = 0.0;
  double gamma = 0.0;
  double fitted_exponent = 0.0;
  double fitted_r_squared = 0.0;
  double uncontrolled_exponent = 0.0;
  double uncontrolled_initial_mean_sq = 0.0;
  double uncontrolled_terminal_mean_sq = 0.0;
  double controlled_terminal_mean_sq = 0.0;
};

/// Configurations of the built-in benchmark (see example_constants.hpp).
RunConfig example_uncontrolled_config();
RunConfig example_controlled_config();

/// Writes {uncontrolled,controlled}_{paths,meansq}.csv and summary.json.
ExampleSummary reproduce_example(const std::filesystem::path& out_dir, std::size_t threads);

int cmd_reproduce_example(const std::filesystem::path& out_dir, std::size_t threads,
                          std::ostream& out);

}  // namespace mvsde::cli
