// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mvsde/analysis.hpp"
#include "mvsde/errors.hpp"

namespace mvsde {
namespace {

MeanSquareSeries series_of(double t_end, std::size_t n, double (*f)(double)) {
  MeanSquareSeries s;
  s.n_replications = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(n);
    s.times.push_back(t);
    s.values.push_back(f(t));
    s.std_errors.push_back(0.0);
  }
  return s;
}

SimConfig config(std::size_t n, std::size_t m, double dt, double horizon, std::size_t k) {
  SimConfig c;
  c.n_particles = n;
  c.n_replications = m;
  c.dt = dt;
  c.horizon = horizon;
  c.delay_steps = k;
  c.seed = 777;
  return c;
}

TEST(LyapunovFit, ExactExponential) {
  const auto s = series_of(2.0, 200, [](double t) { return std::exp(-2.0 * t); });
  const auto fit = lyapunov_fit(s);
  EXPECT_NEAR(fit.slope, -2.0, 1e-10);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(fit.t_lo, 1.0);
  EXPECT_DOUBLE_EQ(fit.t_hi, 2.0);
  EXPECT_EQ(fit.points, 101u);
}

TEST(LyapunovFit, ScaleInvariance) {
  auto s = series_of(1.0, 50, [](double t) { return std::exp(0.7 * t + 0.3 * std::sin(9 * t)); });
  const auto base = lyapunov_fit(s);
  for (double& v : s.values) v *= 1024.0;  // power of two keeps log differences exact
  const auto scaled = lyapunov_fit(s);
  EXPECT_EQ(scaled.slope, base.slope);
  EXPECT_NEAR(scaled.intercept - base.intercept, std::log(1024.0), 1e-12);
  EXPECT_EQ(scaled.r_squared, base.r_squared);
}

TEST(LyapunovFit, ScaleInvarianceArbitraryFactor) {
  auto s = series_of(1.0, 50, [](double t) { return std::exp(-3.0 * t) * (1 + 0.1 * t * t); });
  const auto base = lyapunov_fit(s);
  for (double& v : s.values) v *= 3.7;
  EXPECT_NEAR(lyapunov_fit(s).slope, base.slope, 1e-12);
}

TEST(LyapunovFit, FloorDropsTinyValues) {
  auto s = series_of(1.0, 40, [](double t) { return std::exp(-t); });
  for (std::size_t i = 30; i < s.size(); ++i) s.values[i] = 1e-20;
  // Only 10 of the 21 window points survive the floor.
  const auto fit = lyapunov_fit(s);
  EXPECT_EQ(fit.points, 10u);
  EXPECT_NEAR(fit.slope, -1.0, 1e-10);
  for (std::size_t i = 29; i < s.size(); ++i) s.values[i] = 0.0;
  EXPECT_THROW(lyapunov_fit(s), InsufficientDataError);
}

TEST(LyapunovFit, FlatSeriesAndErrors) {
  const auto s = series_of(1.0, 30, [](double) { return 2.0; });
  const auto fit = lyapunov_fit(s);
  EXPECT_EQ(fit.slope, 0.0);
  EXPECT_EQ(fit.r_squared, 1.0);
  EXPECT_THROW(lyapunov_fit(s, 0.0), InputError);
  EXPECT_THROW(lyapunov_fit(series_of(1.0, 5, [](double) { return 1.0; })),
               InsufficientDataError);
}

TEST(Boundedness, PlateauPasses) {
  const auto s = series_of(10.0, 200, [](double t) { return 5.0 - 4.0 * std::exp(-t); });
  const auto r = boundedness_report(s);
  EXPECT_TRUE(r.plateau);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.post_points, 101u);
}

TEST(Boundedness, DecayPassesThroughNonIncreasingBranch) {
  const auto s = series_of(10.0, 200, [](double t) { return std::exp(-t); });
  const auto r = boundedness_report(s);
  EXPECT_FALSE(r.plateau);
  EXPECT_TRUE(r.non_increasing);
  EXPECT_TRUE(r.passed);
}

TEST(Boundedness, GrowthFails) {
  const auto s = series_of(10.0, 200, [](double t) { return std::exp(0.5 * t); });
  const auto r = boundedness_report(s);
  EXPECT_FALSE(r.passed);
  EXPECT_DOUBLE_EQ(r.max_full, std::exp(5.0));
  const auto lin = series_of(10.0, 200, [](double t) { return 1.0 + t; });
  EXPECT_FALSE(boundedness_report(lin).passed);
}

TEST(Boundedness, NeedsEnoughPoints) {
  EXPECT_THROW(boundedness_report(series_of(1.0, 30, [](double) { return 1.0; })),
               InsufficientDataError);
  EXPECT_THROW(boundedness_report(series_of(1.0, 100, [](double) { return 1.0; }), 1.0),
               InputError);
}

TEST(DelayGap, ZeroModelAndZeroDelay) {
  const auto zero = LinearMeanFieldModel::zero();
  auto c = config(3, 3, 0.01, 0.2, 4);
  auto recs = run_replications(c, zero, make_control(0.0, c), Vector{1.0});
  auto r = delay_gap_check(recs);
  EXPECT_TRUE(r.passed);
  for (const auto& p : r.points) {
    EXPECT_EQ(p.lhs, 0.0);
    EXPECT_EQ(p.rhs, 0.0);
  }
  const auto model = LinearMeanFieldModel::scalar(3, 1, 1, 1, 1, 1);
  auto c0 = config(5, 4, 0.01, 0.2, 0);
  recs = run_replications(c0, model, make_control(0.0, c0), Vector{1.0});
  r = delay_gap_check(recs);
  EXPECT_TRUE(r.passed);
  for (const auto& p : r.points) {
    EXPECT_EQ(p.lhs, 0.0);
    EXPECT_EQ(p.rhs, 0.0);
  }
}

TEST(DelayGap, ControlledExampleHolds) {
  const auto model = LinearMeanFieldModel::scalar(3, 1, 1, 1, 1, 1);
  auto c = config(20, 20, 5e-4, 0.2, 1);
  const auto recs = run_replications(c, model, make_control(22.0, c), Vector{1.0});
  const auto r = delay_gap_check(recs);
  EXPECT_TRUE(r.passed) << "worst margin " << r.worst_margin;
  EXPECT_EQ(r.points.size(), recs.front().size());
}

TEST(DelayGap, DetectsViolation) {
  std::vector<TrajectoryRecord> recs(2);
  for (auto& rec : recs) {
    rec.times = {0.0, 1.0};
    rec.delay_gap_sq = {0.0, 1.0};
    rec.i2_values = {0.0, 0.1};
    rec.particle_mean_sq = {1.0, 1.0};
  }
  const auto r = delay_gap_check(recs);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.worst_margin, 0.3 - 1.0, 1e-15);
  EXPECT_THROW(delay_gap_check(std::span(recs).first(1)), InputError);
}

TEST(Dynkin, LinearDecayOracle) {
  // f = -x: U(t) = 2 x0^2 e^{-2t}; discrepancy is O(dt).
  const auto model = LinearMeanFieldModel::scalar(-1, 0, 0, 0, 0, 0);
  auto c = config(1, 1, 1e-3, 1.0, 0);
  const auto r = dynkin_check(c, model, make_control(0.0, c), Vector{1.0});
  EXPECT_NEAR(r.lhs, 2.0 * (std::exp(-2.0) - 1.0), 2e-3);
  EXPECT_LT(r.relative_discrepancy, 2e-3);
  EXPECT_TRUE(r.passed);
}

TEST(Dynkin, ZeroModel) {
  const auto zero = LinearMeanFieldModel::zero();
  auto c = config(2, 2, 0.1, 1.0, 0);
  const auto r = dynkin_check(c, zero, make_control(0.0, c), Vector{1.0});
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_EQ(r.relative_discrepancy, 0.0);
  EXPECT_TRUE(r.passed);
}

TEST(Dynkin, CommonNoiseGeometric) {
  // g0 = x: E U(T) - E U(0) = 2((1 + dt)^n - 1) under Euler.
  const auto model = LinearMeanFieldModel::scalar(0, 0, 0, 0, 1, 0);
  auto c = config(1, 4000, 1e-2, 0.5, 0);
  const auto r = dynkin_check(c, model, make_control(0.0, c), Vector{1.0});
  EXPECT_NEAR(r.rhs, 2.0 * (std::pow(1.01, 50) - 1.0), 4.0 * 2.0 * 0.5 / std::sqrt(4000.0));
  EXPECT_TRUE(r.passed);
}

TEST(Dynkin, DetectsMismatch) {
  std::vector<TrajectoryRecord> recs(3);
  for (auto& rec : recs) {
    rec.times = {0.0, 1.0};
    rec.particle_mean_sq = {1.0, 2.0};
    rec.generator_integral = {0.0, 1.0};  // should be 2
  }
  const auto r = dynkin_from_records(recs);
  EXPECT_DOUBLE_EQ(r.discrepancy, 1.0);
  EXPECT_DOUBLE_EQ(r.relative_discrepancy, 0.5);
  EXPECT_FALSE(r.passed);
}

}  // namespace
}  // namespace mvsde
