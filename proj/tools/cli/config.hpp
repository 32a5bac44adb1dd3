// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "mvsde/model.hpp"
#include "mvsde/sim.hpp"

namespace mvsde::cli {

/// Invalid or incomplete run configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputSection {
  std::string directory = ".";
  std::string prefix = "run";
};

/// Which verifiers `check` runs, and their knobs.
struct CheckSection {
  bool audit = true;
  double audit_radius = 10.0;
  std::size_t audit_samples = 10000;
  std::uint64_t audit_seed = 1;
  bool delay_gap = true;
  bool dynkin = true;
  bool boundedness = false;
  double burn_in_fraction = 0.5;
  bool stability = false;  // fitted exponent <= -gamma
  double window_fraction = 0.5;
};

struct RunConfig {
  LinearMeanFieldModel::Coefficients model;
  bool has_constants = false;
  ConstantsBundle constants;
  double alpha = 0.0;
  SimConfig sim;
  Vector x0;
  std::size_t path_replications = 1;  // replications whose sample paths go to CSV
  std::size_t threads = 1;
  OutputSection output;
  CheckSection check;

  LinearMeanFieldModel build_model() const { return LinearMeanFieldModel(model); }
  ControlParams control() const { return make_control(alpha, sim); }
};

/// Parses and validates a configuration document. Unknown keys are rejected
/// by name; required keys are model.dim and the model matrices, control.alpha,
/// sim.dt and sim.horizon.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Effective configuration, re-ingestible by parse_config.
nlohmann::json to_json(const RunConfig& config);

}  // namespace mvsde::cli
