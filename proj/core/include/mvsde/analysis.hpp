// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvsde/model.hpp"
#include "mvsde/series.hpp"
#include "mvsde/sim.hpp"

namespace mvsde {

struct DelayGapPoint {
  double time;
  double lhs;        // E|X(t) - X(t - tau)|^2
  double rhs;        // 3 E I2(t)
  double std_error;  // sqrt(se_lhs^2 + se_rhs^2)
  bool passed;       // lhs <= rhs + 3 std_error
};

struct DelayGapReport {
  std::vector<DelayGapPoint> points;
  double worst_margin = 0.0;  // min over t of rhs + 3 se - lhs
  bool passed = true;
};

/// Checks E|X(t) - X(t - tau)|^2 <= 3 E I2(t) at every recorded time, with
/// expectations over replications and particles. Needs >= 2 complete records
/// of equal length.
DelayGapReport delay_gap_check(std::span<const TrajectoryRecord> records);

struct DynkinReport {
  double lhs = 0.0;        // E U(T) - E U(0)
  double rhs = 0.0;        // int_0^T E LU ds (left rectangle)
  double discrepancy = 0.0;
  double relative_discrepancy = 0.0;  // |discrepancy| / |lhs| (0 when both vanish)
  double std_error = 0.0;  // replication-level standard error of the discrepancy
  std::size_t n_replications = 0;
  bool passed = true;      // |discrepancy| <= max(0.05 |lhs|, 4 std_error)
};

/// Dynkin identity E U(T) = E U(0) + int_0^T E LU ds for U = |x|^2 + E^1|x|^2,
/// evaluated on existing records.
DynkinReport dynkin_from_records(std::span<const TrajectoryRecord> records);

/// Simulates and evaluates the Dynkin identity. Propagates BlowUpError.
DynkinReport dynkin_check(const SimConfig& config, const CoefficientModel& model,
                          const ControlParams& control, const InitialCondition& initial,
                          const RunOptions& options = {});

struct LyapunovFit {
  double slope = 0.0;  // fitted exponent of log E|X(t)|^2, 1/time
  double intercept = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Points below this multiple of the initial value are dropped before fitting.
inline constexpr double kPositivityFloor = 1e-12;

/// OLS of log(values) on times over the trailing `window_fraction` of the
/// horizon. Throws InsufficientDataError with fewer than 10 usable points.
LyapunovFit lyapunov_fit(const MeanSquareSeries& series, double window_fraction = 0.5);

struct BoundednessReport {
  double max_full = 0.0;
  double max_post = 0.0;     // after burn-in
  double median_post = 0.0;
  double max_pre = 0.0;      // before burn-in
  bool plateau = false;      // max_post <= 1.25 median_post
  bool non_increasing = false;  // max_post <= 1.25 max_pre
  bool passed = false;
  std::size_t post_points = 0;
};

inline constexpr double kPlateauTolerance = 1.25;

/// Desk-scale surrogate for sup_t E|X(t)|^2 < infinity. Passes when the
/// post-burn-in window sits on a plateau or stays below the early levels.
/// Throws InsufficientDataError if fewer than 20 points follow the burn-in.
BoundednessReport boundedness_report(const MeanSquareSeries& series,
                                     double burn_in_fraction = 0.5);

}  // namespace mvsde
