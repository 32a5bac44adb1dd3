// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "mvsde/series.hpp"
#include "mvsde/sim.hpp"

namespace mvsde::cli {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// `t,mean_sq,std_err,n_reps`; appends `# ABORTED t=<time>` when aborted_at is set.
void write_meansq_csv(std::ostream& out, const MeanSquareSeries& series,
                      std::optional<double> aborted_at = std::nullopt);

/// `t,rep,particle,value` for the stored sample paths of the first
/// `max_replications` records.
void write_paths_csv(std::ostream& out, std::span<const TrajectoryRecord> records,
                     std::size_t max_replications);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace mvsde::cli
