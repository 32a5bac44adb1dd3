// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace mvsde {

/// Monte Carlo estimate of t -> E|X(t)|^2: outer mean over common-noise
/// replications of the within-replication particle average.
struct MeanSquareSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> std_errors;  // replication-level sd / sqrt(M)
  std::size_t n_replications = 0;

  std::size_t size() const noexcept { return times.size(); }
};

/// Throws InputError unless lengths agree and times strictly increase.
void validate(const MeanSquareSeries& series);

/// Pointwise mean and standard error of the mean over rows.
/// `rows[r][i]` is replication r's value at grid index i.
struct PointwiseStats {
  std::vector<double> mean;
  std::vector<double> std_error;
};
PointwiseStats pointwise_stats(const std::vector<const std::vector<double>*>& rows);

}  // namespace mvsde
