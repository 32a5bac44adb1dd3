// SPDX-License-Identifier: Apache-2.0
#include "mvsde/series.hpp"

#include <cmath>

#include "mvsde/errors.hpp"

namespace mvsde {

void validate(const MeanSquareSeries& series) {
  if (series.values.size() != series.times.size() ||
      series.std_errors.size() != series.times.size()) {
    throw InputError("mean-square series: times, values and std_errors differ in length");
  }
  for (std::size_t i = 1; i < series.times.size(); ++i) {
    if (!(series.times[i] > series.times[i - 1])) {
      throw InputError("mean-square series: times must be strictly increasing");
    }
  }
}

PointwiseStats pointwise_stats(const std::vector<const std::vector<double>*>& rows) {
  if (rows.empty()) throw InputError("pointwise_stats: no rows");
  const std::size_t n = rows.front()->size();
  for (const auto* r : rows) {
    if (r->size() != n) throw InputError("pointwise_stats: rows differ in length");
  }
  const double m = static_cast<double>(rows.size());
  PointwiseStats out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (const auto* r : rows) {
    for (std::size_t i = 0; i < n; ++i) out.mean[i] += (*r)[i];
  }
  for (double& v : out.mean) v /= m;
  if (rows.size() < 2) return out;
  for (const auto* r : rows) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = (*r)[i] - out.mean[i];
      out.std_error[i] += dev * dev;
    }
  }
  for (double& v : out.std_error) v = std::sqrt(v / (m - 1.0) / m);
  return out;
}

}  // namespace mvsde
