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

#include "ocrs/elem_set.h"

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace ocrs {
namespace {

TEST(ElemSetTest, EmptyAndFull) {
  ElemSet empty(5);
  EXPECT_TRUE(empty.Empty());
  EXPECT_EQ(empty.Size(), 0);
  ElemSet full = ElemSet::Full(5);
  EXPECT_EQ(full.Size(), 5);
  EXPECT_EQ(full.ToVector(), (std::vector<ElementId>{0, 1, 2, 3, 4}));
  EXPECT_EQ(ElemSet::Full(0).Size(), 0);
}

TEST(ElemSetTest, InsertEraseContains) {
  ElemSet s(10, {1, 7});
  EXPECT_TRUE(s.Contains(7));
  EXPECT_FALSE(s.Contains(3));
  s.Insert(3);
  s.Erase(7);
  EXPECT_EQ(s.ToString(), "{1,3}");
  EXPECT_THROW(s.Insert(10), std::out_of_range);
  EXPECT_THROW(s.Insert(-1), std::out_of_range);
}

TEST(ElemSetTest, MismatchedUniversesThrow) {
  ElemSet a(4, {0});
  ElemSet b(5, {0});
  EXPECT_THROW(a |= b, std::invalid_argument);
  EXPECT_THROW((void)a.IsSubsetOf(b), std::invalid_argument);
}

TEST(ElemSetTest, MaskRoundTrip) {
  ElemSet s = ElemSet::FromMask(8, 0b10110010);
  EXPECT_EQ(s.ToVector(), (std::vector<ElementId>{1, 4, 5, 7}));
  EXPECT_EQ(s.Mask(), 0b10110010u);
}

// Set algebra on a universe spanning several words agrees with std::set.
TEST(ElemSetTest, MultiWordAlgebraMatchesStdSet) {
  std::mt19937_64 gen(5);
  constexpr int kUniverse = 200;
  std::bernoulli_distribution coin(0.3);
  for (int round = 0; round < 50; ++round) {
    ElemSet a(kUniverse), b(kUniverse);
    std::set<int> sa, sb;
    for (int e = 0; e < kUniverse; ++e) {
      if (coin(gen)) { a.Insert(e); sa.insert(e); }
      if (coin(gen)) { b.Insert(e); sb.insert(e); }
    }
    std::set<int> uni, inter, diff;
    for (int e = 0; e < kUniverse; ++e) {
      const bool in_a = sa.count(e), in_b = sb.count(e);
      if (in_a || in_b) uni.insert(e);
      if (in_a && in_b) inter.insert(e);
      if (in_a && !in_b) diff.insert(e);
    }
    auto as_vec = [](const std::set<int>& s) {
      return std::vector<ElementId>(s.begin(), s.end());
    };
    EXPECT_EQ((a | b).ToVector(), as_vec(uni));
    EXPECT_EQ((a & b).ToVector(), as_vec(inter));
    EXPECT_EQ((a - b).ToVector(), as_vec(diff));
    EXPECT_EQ(a.Intersects(b), !inter.empty());
    EXPECT_TRUE((a & b).IsSubsetOf(a));
    EXPECT_EQ(a.Size(), static_cast<int>(sa.size()));
  }
}

TEST(ElemSetTest, IterationVisitsMembersInOrder) {
  ElemSet s(130, {0, 63, 64, 127, 129});
  std::vector<ElementId> seen;
  for (ElementId e : s) seen.push_back(e);
  EXPECT_EQ(seen, (std::vector<ElementId>{0, 63, 64, 127, 129}));
}

TEST(ElemSetTest, OrderingIsStrictAndConsistent) {
  ElemSet a(4, {0});
  ElemSet b(4, {1});
  ElemSet c(4, {0, 1});
  EXPECT_TRUE(a < b || b < a);
  EXPECT_FALSE(a < a);
  EXPECT_EQ(a, ElemSet(4, {0}));
  EXPECT_TRUE(LexicographicLess(a, c));
  EXPECT_TRUE(LexicographicLess(c, b));
}

}  // namespace
}  // namespace ocrs
