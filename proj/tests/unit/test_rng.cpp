// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mvsde/rng.hpp"

namespace mvsde {
namespace {

// Known-answer vectors published with the Random123 distribution
// (kat_vectors, philox4x32 with 10 rounds).
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::apply({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = Philox4x32::apply({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                     {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::apply({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                     {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(OpenUnit, NeverHitsEndpoints) {
  EXPECT_GT(to_open_unit(0), 0.0);
  EXPECT_LT(to_open_unit(~std::uint64_t{0}), 1.0);
  EXPECT_TRUE(std::isfinite(std::log(to_open_unit(0))));
}

TEST(NoisePlan, Deterministic) {
  NoisePlan a(99), b(99), c(100);
  EXPECT_EQ(a.idiosyncratic(3, 4, 5), b.idiosyncratic(3, 4, 5));
  EXPECT_EQ(a.common(3, 5), b.common(3, 5));
  EXPECT_NE(a.idiosyncratic(3, 4, 5), c.idiosyncratic(3, 4, 5));
}

TEST(NoisePlan, StreamsAreDistinct) {
  NoisePlan plan(7);
  std::set<double> seen;
  for (std::uint64_t r = 0; r < 3; ++r) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      seen.insert(plan.common(r, s));
      seen.insert(plan.initial(r, 0, s));
      for (std::uint64_t p = 0; p < 5; ++p) seen.insert(plan.idiosyncratic(r, p, s));
    }
  }
  EXPECT_EQ(seen.size(), 3u * 20u * 7u);
  EXPECT_NE(plan.common(0, 0), plan.idiosyncratic(0, 0, 0));
}

TEST(NoisePlan, UpperSeedBitsMatter) {
  NoisePlan lo(1), hi(1 + (std::uint64_t{1} << 40));
  EXPECT_NE(lo.common(0, 0), hi.common(0, 0));
}

struct Moments {
  double mean = 0, var = 0, skew = 0, kurt = 0;
};

template <class Draw>
Moments moments(Draw draw, int n) {
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = draw(i);
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  Moments m;
  m.mean = s1 / n;
  m.var = s2 / n - m.mean * m.mean;
  m.skew = s3 / n;
  m.kurt = s4 / n;
  return m;
}

// n = 2e5: standard errors are about 2.2e-3 (mean), 3.2e-3 (var),
// 5.5e-3 (third moment), 2.2e-2 (fourth moment). Bounds below are ~5 SE.
constexpr int kN = 200000;

void expect_standard_normal(const Moments& m) {
  EXPECT_NEAR(m.mean, 0.0, 0.012);
  EXPECT_NEAR(m.var, 1.0, 0.016);
  EXPECT_NEAR(m.skew, 0.0, 0.028);
  EXPECT_NEAR(m.kurt, 3.0, 0.11);
}

TEST(NoisePlan, IdiosyncraticMoments) {
  NoisePlan plan(20240611);
  expect_standard_normal(moments([&](int i) { return plan.idiosyncratic(1, i % 97, i / 97); }, kN));
}

TEST(NoisePlan, CommonMoments) {
  NoisePlan plan(5);
  expect_standard_normal(moments([&](int i) { return plan.common(i % 13, i / 13); }, kN));
}

TEST(NoisePlan, IdiosyncraticAndCommonUncorrelated) {
  NoisePlan plan(11);
  double s = 0;
  for (int i = 0; i < kN; ++i) s += plan.idiosyncratic(0, 0, i) * plan.common(0, i);
  EXPECT_NEAR(s / kN, 0.0, 0.012);
  double lag = 0;
  for (int i = 0; i < kN; ++i) lag += plan.common(0, i) * plan.common(0, i + 1);
  EXPECT_NEAR(lag / kN, 0.0, 0.012);
}

TEST(CounterStream, UniformRangeAndMean) {
  CounterStream s(3, 9);
  double sum = 0;
  for (int i = 0; i < kN; ++i) {
    const double u = s.uniform(-2.0, 4.0);
    ASSERT_GT(u, -2.0);
    ASSERT_LT(u, 4.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kN, 1.0, 0.02);
}

TEST(CounterStream, NormalMomentsAndReproducibility) {
  CounterStream s(8, 1);
  expect_standard_normal(moments([&](int) { return s.normal(); }, kN));
  CounterStream a(8, 2), b(8, 2), c(8, 3);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

}  // namespace
}  // namespace mvsde
