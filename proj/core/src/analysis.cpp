// SPDX-License-Identifier: Apache-2.0
#include "mvsde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mvsde/errors.hpp"

namespace mvsde {
namespace {

void require_complete(std::span<const TrajectoryRecord> records, std::size_t min_count,
                      const char* who) {
  if (records.size() < min_count) {
    throw InputError(std::string(who) + ": needs at least " + std::to_string(min_count) +
                     " replications");
  }
  const std::size_t n = records.front().size();
  for (const auto& rec : records) {
    if (rec.aborted_at) throw BlowUpError(*rec.aborted_at, rec.replication);
    if (rec.size() != n || n == 0) {
      throw InputError(std::string(who) + ": records must be non-empty and of equal length");
    }
  }
}

struct MeanAndError {
  double mean;
  double std_error;
};

MeanAndError mean_and_error(std::span<const double> xs) {
  const double m = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= m;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (m - 1.0) / m)};
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

DelayGapReport delay_gap_check(std::span<const TrajectoryRecord> records) {
  require_complete(records, 2, "delay_gap_check");
  const std::size_t n = records.front().size();
  DelayGapReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  std::vector<double> lhs(records.size()), rhs(records.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < records.size(); ++r) {
      lhs[r] = records[r].delay_gap_sq[i];
      rhs[r] = 3.0 * records[r].i2_values[i];
    }
    const auto l = mean_and_error(lhs);
    const auto h = mean_and_error(rhs);
    const double se = std::hypot(l.std_error, h.std_error);
    const double margin = h.mean + 3.0 * se - l.mean;
    const bool ok = margin >= 0.0;
    report.points.push_back({records.front().times[i], l.mean, h.mean, se, ok});
    report.worst_margin = std::min(report.worst_margin, margin);
    report.passed = report.passed && ok;
  }
  return report;
}

DynkinReport dynkin_from_records(std::span<const TrajectoryRecord> records) {
  require_complete(records, 1, "dynkin_check");
  std::vector<double> lhs, rhs, disc;
  for (const auto& rec : records) {
    // E^{particles} U = |x|^2 averaged plus E^1|x|^2 = twice the particle mean square.
    const double du = 2.0 * (rec.particle_mean_sq.back() - rec.particle_mean_sq.front());
    const double integral = rec.generator_integral.back() - rec.generator_integral.front();
    lhs.push_back(du);
    rhs.push_back(integral);
    disc.push_back(du - integral);
  }
  DynkinReport report;
  report.n_replications = records.size();
  report.lhs = mean_and_error(lhs).mean;
  report.rhs = mean_and_error(rhs).mean;
  const auto d = mean_and_error(disc);
  report.discrepancy = d.mean;
  report.std_error = d.std_error;
  const double abs_disc = std::abs(d.mean);
  if (report.lhs != 0.0) {
    report.relative_discrepancy = abs_disc / std::abs(report.lhs);
  } else {
    report.relative_discrepancy = abs_disc == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  report.passed = abs_disc <= std::max(0.05 * std::abs(report.lhs), 4.0 * d.std_error);
  return report;
}

DynkinReport dynkin_check(const SimConfig& config, const CoefficientModel& model,
                          const ControlParams& control, const InitialCondition& initial,
                          const RunOptions& options) {
  const auto records = run_replications(config, model, control, initial, options);
  return dynkin_from_records(records);
}

LyapunovFit lyapunov_fit(const MeanSquareSeries& series, double window_fraction) {
  validate(series);
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw InputError("lyapunov_fit: window_fraction must lie in (0, 1]");
  }
  if (series.size() == 0) throw InsufficientDataError("lyapunov_fit: empty series");
  const double t0 = series.times.front();
  const double t_end = series.times.back();
  const double t_start = t_end - window_fraction * (t_end - t0);
  const double floor =
      series.values.front() > 0.0 ? kPositivityFloor * series.values.front() : 0.0;

  // Values are divided by the first usable one before taking logs; a
  // power-of-two rescaling of the series then leaves every ratio, and hence
  // the slope, bit-identical.
  std::vector<double> ts, vs;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = series.values[i];
    if (series.times[i] >= t_start && v > 0.0 && v >= floor) {
      ts.push_back(series.times[i]);
      vs.push_back(v);
    }
  }
  if (ts.size() < 10) {
    throw InsufficientDataError("lyapunov_fit: " + std::to_string(ts.size()) +
                                " usable points in the window, need 10");
  }
  std::vector<double> ys;
  for (double v : vs) ys.push_back(std::log(v / vs.front()));

  const double n = static_cast<double>(ts.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    my += ys[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - mt;
    const double dy = ys[i] - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  LyapunovFit fit;
  fit.slope = sty / stt;
  fit.intercept = my - fit.slope * mt + std::log(vs.front());
  fit.t_lo = ts.front();
  fit.t_hi = ts.back();
  fit.points = ts.size();
  double ss_res = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ys[i] - (my + fit.slope * (ts[i] - mt));
    ss_res += r * r;
  }
  // A flat series is fitted perfectly by slope 0.
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

BoundednessReport boundedness_report(const MeanSquareSeries& series, double burn_in_fraction) {
  validate(series);
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
    throw InputError("boundedness_report: burn_in_fraction must lie in [0, 1)");
  }
  if (series.size() == 0) throw InsufficientDataError("boundedness_report: empty series");
  const double t0 = series.times.front();
  const double t_burn = t0 + burn_in_fraction * (series.times.back() - t0);

  BoundednessReport report;
  std::vector<double> post;
  bool have_pre = false;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = series.values[i];
    report.max_full = std::max(report.max_full, v);
    if (series.times[i] >= t_burn) {
      post.push_back(v);
    } else {
      report.max_pre = have_pre ? std::max(report.max_pre, v) : v;
      have_pre = true;
    }
  }
  report.post_points = post.size();
  if (post.size() < 20) {
    throw InsufficientDataError("boundedness_report: " + std::to_string(post.size()) +
                                " points after burn-in, need 20");
  }
  report.max_post = *std::max_element(post.begin(), post.end());
  report.median_post = median(post);
  report.plateau = report.max_post <= kPlateauTolerance * report.median_post;
  report.non_increasing = have_pre && report.max_post <= kPlateauTolerance * report.max_pre;
  report.passed = report.plateau || report.non_increasing;
  return report;
}

}  // namespace mvsde
