// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mvsde/errors.hpp"
#include "mvsde/functionals.hpp"
#include "mvsde/rng.hpp"
#include "mvsde/sim.hpp"

namespace mvsde {
namespace {

const LinearMeanFieldModel kExample = LinearMeanFieldModel::scalar(3, 1, 1, 1, 1, 1);

TEST(Generator, ZeroModelVanishes) {
  const auto zero = LinearMeanFieldModel::zero();
  const EmpiricalMeasure mu = EmpiricalMeasure::scalar({1.0, -2.0});
  EXPECT_EQ(generator_lu(Vector{1.0}, Vector{3.0}, mu, Vector{-0.5}, zero, {0.0, 0.1}), 0.0);
  EXPECT_EQ(generator_lu_average(mu, mu, zero, {0.0, 0.0}), 0.0);
}

TEST(Generator, LinearDecayOwnAndBlock) {
  const auto model = LinearMeanFieldModel::scalar(-1, 0, 0, 0, 0, 0);
  const EmpiricalMeasure cloud = EmpiricalMeasure::scalar({1.0, 1.0, 1.0});
  const auto v = generator_lu_at(1, cloud, cloud, model, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(v.own, -2.0);
  EXPECT_DOUBLE_EQ(v.measure_block, -2.0);
  EXPECT_DOUBLE_EQ(v.total(), -4.0);
  EXPECT_DOUBLE_EQ(generator_lu_average(cloud, cloud, model, {0.0, 0.0}), -4.0);
}

TEST(Generator, ExampleModelHandArithmetic) {
  // 2(3 + 1 - 22) + (1 + 1)^2 + (1 + 1)^2 = -28
  const EmpiricalMeasure mu = EmpiricalMeasure::scalar({1.0});
  EXPECT_DOUBLE_EQ(generator_lu(Vector{1.0}, Vector{1.0}, mu, Vector{1.0}, kExample, {22.0, 5e-4}),
                   -28.0);
}

TEST(Generator, DimensionMismatch) {
  const EmpiricalMeasure mu = EmpiricalMeasure::scalar({1.0});
  EXPECT_THROW(generator_lu(Vector{1.0, 2.0}, Vector{1.0}, mu, Vector{1.0}, kExample, {}),
               InputError);
  EXPECT_THROW(generator_lu_at(3, mu, mu, kExample, {}), InputError);
}

TEST(Generator, AverageIsTwiceMeanOfOwnTerms) {
  CounterStream rng(4, 4);
  std::vector<double> xs(7), ds(7);
  for (std::size_t i = 0; i < 7; ++i) {
    xs[i] = rng.uniform(-2, 2);
    ds[i] = rng.uniform(-2, 2);
  }
  const EmpiricalMeasure cur = EmpiricalMeasure::scalar(xs), del = EmpiricalMeasure::scalar(ds);
  const ControlParams control{5.0, 0.01};
  const Vector m = mean(cur);
  double own = 0.0;
  for (std::size_t i = 0; i < 7; ++i) {
    own += generator_lu(Vector{xs[i]}, Vector{ds[i]}, cur, m, kExample, control);
  }
  EXPECT_NEAR(generator_lu_average(cur, del, kExample, control), 2.0 * own / 7.0, 1e-12);
  double totals = 0.0;
  for (std::size_t i = 0; i < 7; ++i) totals += generator_lu_at(i, cur, del, kExample, control).total();
  EXPECT_NEAR(totals / 7.0, 2.0 * own / 7.0, 1e-12);
}

TEST(I2, IntegrandValue) {
  const Vector f{1.0, -2.0}, g{0.5, 0.0}, g0{0.0, 3.0};
  EXPECT_DOUBLE_EQ(i2_integrand_value({f, g, g0}, 0.1), 0.1 * 5.0 + 0.25 + 9.0);
  EXPECT_DOUBLE_EQ(generator_own_value(Vector{1.0, 1.0}, {f, g, g0}), 2.0 * -1.0 + 0.25 + 9.0);
}

TEST(I2, ZeroModelAndZeroDelay) {
  const auto zero = LinearMeanFieldModel::zero();
  const std::vector<double> s{1.0, 2.0};
  const std::vector<GridPoint> window(5, GridPoint{s, s});
  EXPECT_EQ(i2_discrete(window, 1, zero, {0.0, 0.5}, 0.1, 5), 0.0);
  EXPECT_EQ(i2_discrete(window, 1, kExample, {1.0, 0.0}, 0.1, 0), 0.0);
}

TEST(I2, ConstantTrajectory) {
  // X = 1, f = 0, alpha = 1, tau = 0.1 with k = 10: dt * k * tau * 1 = tau^2.
  const auto zero = LinearMeanFieldModel::zero();
  const std::vector<double> one{1.0};
  const std::vector<GridPoint> window(12, GridPoint{one, one});
  EXPECT_NEAR(i2_discrete(window, 1, zero, {1.0, 0.1}, 0.01, 10), 0.01, 1e-15);
}

TEST(I2, ShortWindowIsRejected) {
  const std::vector<double> one{1.0};
  const std::vector<GridPoint> window(3, GridPoint{one, one});
  EXPECT_THROW(i2_discrete(window, 1, kExample, {1.0, 0.04}, 0.01, 4), InputError);
}

TEST(I2, DiscreteIBoundedByTauTimesI2) {
  CounterStream rng(10, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 40));
    const double dt = rng.uniform(1e-4, 1e-1);
    std::vector<double> h(k);
    for (double& v : h) v = rng.uniform(0, 10);
    double i2 = 0.0;
    for (double v : h) i2 += dt * v;
    const double tau = static_cast<double>(k) * dt;
    EXPECT_LE(i_discrete(h, dt), tau * i2 * (1 + 1e-14));
  }
  // Hand value: dt^2 (2 h0 + h1) with dt = 0.5.
  const std::vector<double> h{1.0, 4.0};
  EXPECT_DOUBLE_EQ(i_discrete(h, 0.5), 0.25 * 6.0);
}

// The simulator's streamed I2 equals a recomputation from stored states.
TEST(I2, SimulatorRecordMatchesRecomputation) {
  const std::size_t k = 3;
  SimConfig c;
  c.n_particles = 4;
  c.dt = 0.01;
  c.horizon = 0.1;
  c.delay_steps = k;
  c.seed = 3;
  const auto control = make_control(6.0, c);
  const auto rec = run_replication(c, kExample, control, Vector{1.0}, 0);

  auto e = init_ensemble(c, 1, Vector{1.0});
  const NoisePlan noise(c.seed);
  std::vector<std::vector<double>> states, delayed;
  auto push = [&] {
    states.emplace_back(e.current().begin(), e.current().end());
    delayed.emplace_back(e.delayed().begin(), e.delayed().end());
  };
  // Before t = 0 the trajectory sits at x0 with delayed value x0.
  for (std::size_t j = 0; j < k; ++j) push();
  push();
  for (std::size_t n = 0; n < c.n_steps(); ++n) {
    step(e, kExample, control, noise, c, 0);
    push();
  }
  for (std::size_t n = 0; n <= c.n_steps(); ++n) {
    std::vector<GridPoint> window;
    for (std::size_t j = n; j < n + k; ++j) window.push_back({states[j], delayed[j]});
    EXPECT_NEAR(rec.i2_values[n], i2_discrete(window, 1, kExample, control, c.dt, k),
                1e-12 * std::max(1.0, rec.i2_values[n]))
        << "n=" << n;
  }
}

}  // namespace
}  // namespace mvsde
