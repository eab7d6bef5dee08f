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


#include "ocrs/stochastic.h"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "ocrs/matroid.h"
#include "testing/corpus.h"

namespace ocrs {
namespace {

using ::ocrs::testing::FromMask;
using ::ocrs::testing::ToMask;

double Sigma(double p, std::int64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

TEST(MarginalVectorTest, RejectsOutOfRange) {
  EXPECT_THROW(MarginalVector({0.5, 1.5}), std::domain_error);
  EXPECT_THROW(MarginalVector({-0.1}), std::domain_error);
  EXPECT_THROW(MarginalVector({std::nan("")}), std::domain_error);
  EXPECT_NO_THROW(MarginalVector({0.0, 1.0}));
}

TEST(SampleActiveSetTest, ZerosGiveEmpty) {
  RngStream rng(1, 0);
  const MarginalVector x = MarginalVector::Zeros(6);
  for (int i = 0; i < 100; ++i) ASSERT_TRUE(SampleActiveSet(x, rng).Empty());
}

TEST(SampleActiveSetTest, OnesGiveFullGround) {
  RngStream rng(1, 0);
  const MarginalVector x(std::vector<double>(6, 1.0));
  for (int i = 0; i < 100; ++i) {
    ASSERT_EQ(SampleActiveSet(x, rng), ElemSet::Full(6));
  }
}

TEST(SampleActiveSetTest, RespectsGround) {
  RngStream rng(2, 0);
  const MarginalVector x(std::vector<double>(6, 1.0));
  EXPECT_EQ(SampleActiveSet(x, ElemSet(6, {1, 4}), rng), ElemSet(6, {1, 4}));
}

TEST(SampleActiveSetTest, HalfFrequencies) {
  RngStream rng(3, 0);
  const MarginalVector x(std::vector<double>(5, 0.5));
  constexpr int kDraws = 100000;
  std::vector<int> counts(5, 0);
  for (int i = 0; i < kDraws; ++i) {
    for (ElementId e : SampleActiveSet(x, rng)) ++counts[e];
  }
  for (int c : counts) {
    EXPECT_NEAR(static_cast<double>(c) / kDraws, 0.5, 0.01);
  }
}

TEST(DrawSamplesTest, DeterministicAndCounted) {
  const MarginalVector x({0.2, 0.7, 0.5});
  RngStream a(11, 4), b(11, 4);
  const SampleBatch ba = DrawSamples(x, ElemSet::Full(3), 50, a);
  const SampleBatch bb = DrawSamples(x, ElemSet::Full(3), 50, b);
  EXPECT_EQ(ba.samples, bb.samples);
  EXPECT_EQ(ba.draw_count, 50);
  EXPECT_EQ(static_cast<int>(ba.samples.size()), 50);
}

TEST(ExactProbabilityTest, Examples) {
  const MarginalVector x({0.5, 0.5});
  const ElemSet ground = ElemSet::Full(2);
  EXPECT_DOUBLE_EQ(
      ExactEventProbability(x, ground, [](const ElemSet&) { return true; }),
      1.0);
  EXPECT_DOUBLE_EQ(ExactEventProbability(
                       x, ground, [](const ElemSet& r) { return !r.Empty(); }),
                   0.75);
  const MarginalVector y({0.13, 0.9, 0.41, 0.0, 1.0});
  for (ElementId e = 0; e < 5; ++e) {
    EXPECT_NEAR(ExactEventProbability(
                    y, ElemSet::Full(5),
                    [e](const ElemSet& r) { return r.Contains(e); }),
                y[e], 1e-15);
  }
}

TEST(ExactProbabilityTest, RefusesLargeGround) {
  const MarginalVector x(std::vector<double>(21, 0.5));
  EXPECT_THROW(ExactEventProbability(x, ElemSet::Full(21),
                                     [](const ElemSet&) { return true; }),
               SizeLimitError);
}

TEST(ExactProbabilityTest, TableMatchesEnumeration) {
  const MarginalVector x({0.3, 0.6, 0.25, 0.8});
  const RealizationTable table(x, ElemSet::Full(4));
  EXPECT_EQ(table.size(), 16u);
  double total = 0;
  for (const auto& [r, p] : table.outcomes()) {
    double expected = 1.0;
    for (ElementId e = 0; e < 4; ++e) {
      expected *= r.Contains(e) ? x[e] : 1.0 - x[e];
    }
    EXPECT_NEAR(p, expected, 1e-15);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_NEAR(table.Expectation([](const ElemSet& r) { return r.Size(); }),
              0.3 + 0.6 + 0.25 + 0.8, 1e-14);
}

TEST(EmpiricalProbabilityTest, Counting) {
  SampleBatch batch;
  for (int i = 0; i < 10; ++i) batch.samples.push_back(ElemSet(3, {i % 3}));
  batch.draw_count = 10;
  EXPECT_DOUBLE_EQ(
      EmpiricalProbability(batch, [](const ElemSet&) { return false; }), 0.0);
  // Element 0 appears at i = 0, 3, 6, 9; element 2 at i = 2, 5, 8.
  EXPECT_DOUBLE_EQ(EmpiricalProbability(
                       batch, [](const ElemSet& s) { return s.Contains(2); }),
                   0.3);
  EXPECT_THROW(EmpiricalProbability(SampleBatch{},
                                    [](const ElemSet&) { return true; }),
               std::domain_error);
}

// Span events estimated from 10^5 samples sit within 3 sigma of the exact
// probability, with at most one miss across repetitions.
TEST(EmpiricalProbabilityTest, SpanEventConvergesToExact) {
  const MatroidOracle m = CompleteGraphMatroid(4);
  const MarginalVector x({0.4, 0.3, 0.5, 0.2, 0.6, 0.35});
  const ElemSet a(6, {0});
  const ElementId target = 3;
  auto event = [&](const ElemSet& s) {
    return m.Span(a | s).Contains(target);
  };
  const double exact = ExactEventProbability(x, ElemSet::Full(6), event);
  constexpr int kQ = 100000;
  int misses = 0;
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    RngStream rng(77, rep);
    const double est =
        EmpiricalProbability(DrawSamples(x, ElemSet::Full(6), kQ, rng), event);
    if (std::abs(est - exact) > 3.0 * Sigma(exact, kQ)) ++misses;
  }
  EXPECT_LE(misses, 1);
}

TEST(ScaleTest, Examples) {
  const MarginalVector x({0.6, 0.8});
  EXPECT_EQ(Scale(x, 1.0), x);
  EXPECT_EQ(Scale(x, 0.0), MarginalVector::Zeros(2));
  const MarginalVector half = Scale(x, 0.5);
  EXPECT_DOUBLE_EQ(half[0], 0.3);
  EXPECT_DOUBLE_EQ(half[1], 0.4);
  EXPECT_THROW(Scale(x, 1.5), std::domain_error);
  EXPECT_THROW(Scale(x, -0.5), std::domain_error);
}

TEST(PolytopeTest, Examples) {
  EXPECT_TRUE(InScaledPolytope(UniformMatroid(3, 1), MarginalVector::Zeros(3),
                               0.0));
  const MatroidOracle u12 = UniformMatroid(2, 1);
  EXPECT_TRUE(InScaledPolytope(u12, MarginalVector({0.3, 0.3}), 0.6));
  EXPECT_FALSE(InScaledPolytope(u12, MarginalVector({0.3, 0.3}), 0.5));
  EXPECT_TRUE(InScaledPolytope(UniformMatroid(4, 2),
                               MarginalVector(std::vector<double>(4, 0.25)),
                               0.5));
}

TEST(PolytopeTest, LoopsMustHaveZeroMass) {
  const MatroidOracle m = GraphicMatroid(2, {{0, 0}, {0, 1}});
  EXPECT_FALSE(InScaledPolytope(m, MarginalVector({0.1, 0.5}), 1.0));
  EXPECT_TRUE(InScaledPolytope(m, MarginalVector({0.0, 0.5}), 1.0));
}

TEST(FilterActivesTest, Examples) {
  RngStream rng(5, 0);
  const ElemSet r(6, {0, 2, 5});
  EXPECT_EQ(FilterActives(r, 1.0, rng), r);
  EXPECT_TRUE(FilterActives(r, 0.0, rng).Empty());
  constexpr int kTrials = 100000;
  std::vector<int> kept(6, 0);
  for (int i = 0; i < kTrials; ++i) {
    const ElemSet k = FilterActives(r, 0.5, rng);
    ASSERT_TRUE(k.IsSubsetOf(r));
    for (ElementId e : k) ++kept[e];
  }
  for (ElementId e : r) {
    EXPECT_NEAR(static_cast<double>(kept[e]) / kTrials, 0.5, 0.01);
  }
}

// Sampling from x and then filtering at lambda has the same law as sampling
// from lambda * x: realization frequencies agree within 3 sigma.
TEST(FilterActivesTest, FilteredLawEqualsScaledLaw) {
  const MarginalVector x({0.9, 0.5, 0.3, 0.7});
  const double lambda = 0.6;
  const RealizationTable scaled(Scale(x, lambda), ElemSet::Full(4));
  std::map<std::uint32_t, double> exact;
  for (const auto& [r, p] : scaled.outcomes()) exact[ToMask(r)] = p;
  constexpr int kDraws = 1000000;
  std::vector<int> counts(16, 0);
  RngStream rng(99, 0);
  for (int i = 0; i < kDraws; ++i) {
    ++counts[ToMask(FilterActives(SampleActiveSet(x, rng), lambda, rng))];
  }
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    const double p = exact[mask];
    EXPECT_NEAR(static_cast<double>(counts[mask]) / kDraws, p,
                3.0 * Sigma(p, kDraws))
        << FromMask(4, mask).ToString();
  }
}

TEST(CompensatedSumTest, RecoversSmallTerms) {
  CompensatedSum s;
  s.Add(1.0);
  for (int i = 0; i < 1000000; ++i) s.Add(1e-16);
  EXPECT_NEAR(s.Total(), 1.0 + 1e-10, 1e-15);
}

}  // namespace
}  // namespace ocrs
