// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "ocrs/parallel.h"
#include "ocrs/rng.h"
#include "ocrs/stats.h"

namespace ocrs {
namespace {

TEST(RngStreamTest, SameKeySameSequence) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RngStreamTest, DistinctStreamsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 100; ++s) firsts.insert(RngStream(1, s)());
  EXPECT_EQ(firsts.size(), 100u);
  EXPECT_NE(RngStream(1, 0)(), RngStream(2, 0)());
}

TEST(RngStreamTest, UniformRangeAndMean) {
  RngStream rng(3, 0);
  MeanAccumulator acc;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    acc.Add(u);
  }
  EXPECT_NEAR(acc.mean(), 0.5, 3.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST(RngStreamTest, BernoulliEdges) {
  RngStream rng(4, 0);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(rng.Bernoulli(0.0));
    ASSERT_TRUE(rng.Bernoulli(1.0));
  }
}

TEST(RngStreamTest, UniformIntCoversRange) {
  RngStream rng(5, 0);
  std::vector<int> counts(7, 0);
  constexpr int kDraws = 70000;
  for (int i = 0; i < kDraws; ++i) ++counts[rng.UniformInt(7)];
  const double p = 1.0 / 7.0;
  const double sd = std::sqrt(kDraws * p * (1 - p));
  for (int c : counts) EXPECT_NEAR(c, kDraws * p, 4.0 * sd);
  EXPECT_THROW(rng.UniformInt(0), std::invalid_argument);
}

TEST(RngStreamTest, ForkIsDeterministicAndDistinct) {
  const RngStream parent(9, 2);
  RngStream a = parent.Fork(0), b = parent.Fork(0), c = parent.Fork(1);
  const std::uint64_t va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
}

TEST(StatsTest, NormalQuantile) {
  EXPECT_NEAR(NormalUpperQuantile(0.025), 1.959964, 1e-6);
  EXPECT_NEAR(NormalUpperQuantile(0.5), 0.0, 1e-12);
  EXPECT_THROW(NormalUpperQuantile(0.0), std::domain_error);
}

TEST(StatsTest, BonferroniZ) {
  EXPECT_DOUBLE_EQ(BonferroniZ(1), 3.0);
  EXPECT_GT(BonferroniZ(10), 3.0);
  EXPECT_GT(BonferroniZ(100), BonferroniZ(10));
  // Upper tail of 3 sigma is 1.3499e-3; a tenth of it sits at z = 3.6425.
  EXPECT_NEAR(BonferroniZ(10), 3.6425, 1e-3);
}

TEST(StatsTest, WilsonIntervalKnownValue) {
  // 50 of 100 at 95%: center 0.5, half width 0.0962.
  const Interval i = WilsonInterval(50, 100, 0.95);
  EXPECT_NEAR(i.low, 0.4038, 1e-3);
  EXPECT_NEAR(i.high, 0.5962, 1e-3);
  const Interval zero = WilsonInterval(0, 10);
  EXPECT_DOUBLE_EQ(zero.low, 0.0);
  EXPECT_GT(zero.high, 0.0);
  const Interval none = WilsonInterval(0, 0);
  EXPECT_DOUBLE_EQ(none.low, 0.0);
  EXPECT_DOUBLE_EQ(none.high, 1.0);
}

TEST(StatsTest, MeanAccumulatorMatchesTwoPass) {
  const std::vector<double> v = {1.0, 4.0, 2.5, -3.0, 7.25};
  MeanAccumulator acc;
  double sum = 0;
  for (double d : v) {
    acc.Add(d);
    sum += d;
  }
  const double mean = sum / v.size();
  double ss = 0;
  for (double d : v) ss += (d - mean) * (d - mean);
  EXPECT_NEAR(acc.mean(), mean, 1e-12);
  EXPECT_NEAR(acc.variance(), ss / (v.size() - 1), 1e-12);
  EXPECT_NEAR(acc.std_error(), std::sqrt(ss / (v.size() - 1) / v.size()),
              1e-12);
  EXPECT_EQ(acc.count(), 5);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  for (int threads : {1, 3}) {
    std::vector<int> hits(1000, 0);
    ParallelFor(1000, threads, [&](std::int64_t i) { ++hits[i]; });
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(ParallelForTest, PropagatesExceptions) {
  EXPECT_THROW(ParallelFor(100, 3,
                           [](std::int64_t i) {
                             if (i == 57) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

}  // namespace
}  // namespace ocrs
