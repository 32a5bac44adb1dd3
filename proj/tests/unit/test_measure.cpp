// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>

#include "mvsde/errors.hpp"
#include "mvsde/measure.hpp"
#include "mvsde/rng.hpp"
#include "support/oracles.hpp"

namespace mvsde {
namespace {

using EM = EmpiricalMeasure;

TEST(Measure, Mean) {
  EXPECT_EQ(mean(EM::scalar({1, -1}))[0], 0.0);
  EXPECT_EQ(mean(EM::scalar({2.5}))[0], 2.5);
  EXPECT_EQ(mean(EM::scalar({0, 1, 2, 3}))[0], 1.5);
  EXPECT_EQ(mean(EM::from_atoms({{1, 2}, {3, 6}})), (Vector{2, 4}));
}

TEST(Measure, SecondMoment) {
  EXPECT_EQ(second_moment(EM::scalar({1, -1})), 1.0);
  EXPECT_EQ(second_moment(EM::scalar({0, 0, 0})), 0.0);
  EXPECT_EQ(second_moment(EM::scalar({3, 4})), 12.5);
  EXPECT_EQ(second_moment(EM::from_atoms({{3, 4}})), 25.0);
}

TEST(Measure, W2OneDimensional) {
  const auto a = EM::scalar({0.3, -1.0, 2.0});
  EXPECT_EQ(w2_1d(a, a), 0.0);
  EXPECT_DOUBLE_EQ(w2_1d(EM::scalar({0, 2}), EM::scalar({1, 3})), 1.0);
  EXPECT_DOUBLE_EQ(w2_1d(EM::scalar({-2.0}), EM::scalar({5.0})), 7.0);
}

TEST(Measure, W2RejectsUnsupportedInputs) {
  EXPECT_THROW(w2_1d(EM::from_atoms({{1, 2}}), EM::from_atoms({{1, 2}})), InputError);
  EXPECT_THROW(w2_1d(EM::scalar({1, 2}), EM::scalar({1})), InputError);
  EXPECT_THROW(EM::scalar({}), InputError);
  EXPECT_THROW(EM::from_atoms({{1.0}, {1.0, 2.0}}), InputError);
}

TEST(Measure, W2MatchesBruteForceCoupling) {
  CounterStream rng(101, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = rng.uniform(-3, 3);
    for (auto& x : b) x = rng.uniform(-3, 3);
    EXPECT_NEAR(w2_1d(EM::scalar(a), EM::scalar(b)), oracle::w2_brute_force(a, b), 1e-12);
  }
}

TEST(Measure, SecondMomentEqualsSquaredW2ToZero) {
  CounterStream rng(102, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(1 + trial % 17);
    for (auto& x : a) x = rng.normal() * 4.0;
    const double w = w2_1d(EM::scalar(a), EM::scalar(std::vector<double>(a.size(), 0.0)));
    EXPECT_NEAR(second_moment(EM::scalar(a)), w * w, 1e-12 * (1 + w * w));
  }
}

TEST(Measure, W2IsAMetricOnRandomTriples) {
  CounterStream rng(103, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 9;
    std::vector<double> a(n), b(n), c(n);
    for (auto* v : {&a, &b, &c}) {
      for (auto& x : *v) x = rng.uniform(-5, 5);
    }
    const double ab = w2_1d(EM::scalar(a), EM::scalar(b));
    const double ba = w2_1d(EM::scalar(b), EM::scalar(a));
    const double bc = w2_1d(EM::scalar(b), EM::scalar(c));
    const double ac = w2_1d(EM::scalar(a), EM::scalar(c));
    EXPECT_EQ(ab, ba);
    EXPECT_LE(ac, ab + bc + 1e-12);
    auto sa = a;
    std::reverse(sa.begin(), sa.end());
    EXPECT_EQ(w2_1d(EM::scalar(a), EM::scalar(sa)), 0.0);
    EXPECT_GT(ab, 0.0);
  }
}

TEST(Measure, PermutationInvariance) {
  std::vector<double> a{0.1, -4.0, 2.5, 3.25, -0.75};
  const double m = mean(EM::scalar(a))[0];
  const double s = second_moment(EM::scalar(a));
  std::sort(a.begin(), a.end());
  do {
    EXPECT_NEAR(mean(EM::scalar(a))[0], m, 1e-15);
    EXPECT_NEAR(second_moment(EM::scalar(a)), s, 1e-14);
  } while (std::next_permutation(a.begin(), a.end()));
}

}  // namespace
}  // namespace mvsde
