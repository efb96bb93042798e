/*
 * Copyright 2026 The morltune Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "morltune/pareto.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "morltune/errors.h"
#include "oracles.h"

namespace morltune {
namespace {

using testing::Point;

std::vector<ValueVector> ToVectors(const std::vector<Point>& pts) {
  std::vector<ValueVector> out;
  for (const auto& p : pts) out.emplace_back(p);
  return out;
}

std::vector<Point> ToPoints(const ParetoFront& front) {
  std::vector<Point> out;
  for (const auto& v : front) out.emplace_back(v.begin(), v.end());
  return out;
}

TEST(ValueVector, RejectsBadInput) {
  EXPECT_THROW(ValueVector({1.0}), std::invalid_argument);
  EXPECT_THROW(ValueVector({1.0, NAN}), std::invalid_argument);
  EXPECT_THROW(ValueVector({1.0, INFINITY}), std::invalid_argument);
  EXPECT_EQ(ValueVector({1.0, 2.0}).size(), 2);
}

TEST(Dominates, Examples) {
  EXPECT_TRUE(Dominates({2, 1}, {1, 1}));
  EXPECT_FALSE(Dominates({1, 0}, {0, 1}));
  EXPECT_FALSE(Dominates({0, 1}, {1, 0}));
  EXPECT_FALSE(Dominates({1, 1}, {1, 1}));
  EXPECT_THROW(Dominates({1, 1}, {1, 1, 1}), DimensionMismatchError);
}

TEST(Dominates, AntisymmetricAndTransitive) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> coord(0, 3);
  for (int trial = 0; trial < 5000; ++trial) {
    auto draw = [&] {
      return ValueVector({double(coord(gen)), double(coord(gen)),
                          double(coord(gen))});
    };
    const ValueVector a = draw(), b = draw(), c = draw();
    EXPECT_FALSE(Dominates(a, b) && Dominates(b, a));
    if (Dominates(a, b) && Dominates(b, c)) EXPECT_TRUE(Dominates(a, c));
  }
}

TEST(ParetoFilter, Examples) {
  const ParetoFront all = ParetoFilter(
      std::vector<ValueVector>{{1, 0}, {0, 1}, {0.5, 0.5}});
  EXPECT_EQ(all.size(), 3u);
  // Canonical ascending order.
  EXPECT_EQ(all[0], ValueVector({0, 1}));
  EXPECT_EQ(all[2], ValueVector({1, 0}));

  const ParetoFront one =
      ParetoFilter(std::vector<ValueVector>{{2, 2}, {1, 1}, {2, 2}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], ValueVector({2, 2}));

  EXPECT_TRUE(ParetoFilter(std::vector<ValueVector>{}, 2).empty());
  EXPECT_THROW(ParetoFilter(std::vector<ValueVector>{{1, 2}, {1, 2, 3}}),
               DimensionMismatchError);
}

TEST(ParetoFilter, MatchesAllPairsOracle) {
  std::mt19937_64 gen(2024);
  const auto pts = testing::RandomPoints(gen, 100, 3, 0.0, 10.0);
  const ParetoFront front = ParetoFilter(ToVectors(pts));
  EXPECT_EQ(ToPoints(front), testing::AllPairsNondominated(pts));
}

TEST(ParetoFilter, MatchesOracleWithTies) {
  // Small integer grid forces duplicates and weak dominance ties.
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> coord(0, 4);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Point> pts(60, Point(3));
    for (auto& p : pts) {
      for (auto& x : p) x = coord(gen);
    }
    EXPECT_EQ(ToPoints(ParetoFilter(ToVectors(pts))),
              testing::AllPairsNondominated(pts));
  }
}

TEST(ParetoFilter, Idempotent) {
  std::mt19937_64 gen(5);
  const auto front =
      ParetoFilter(ToVectors(testing::RandomPoints(gen, 200, 2, -1.0, 1.0)));
  EXPECT_EQ(ParetoFilter(front.points()), front);
}

TEST(ArchiveInsert, Examples) {
  ParetoFront base = ParetoFilter(std::vector<ValueVector>{{2, 2}});
  auto [grown, accepted] = ArchiveInsert(base, {3, 3});
  EXPECT_TRUE(accepted);
  ASSERT_EQ(grown.size(), 1u);
  EXPECT_EQ(grown[0], ValueVector({3, 3}));

  auto [same, rejected] = ArchiveInsert(base, {1, 1});
  EXPECT_FALSE(rejected);
  EXPECT_EQ(same, base);

  auto [dup, dup_accepted] = ArchiveInsert(base, {2, 2});
  EXPECT_FALSE(dup_accepted);
  EXPECT_EQ(dup.size(), 1u);

  EXPECT_THROW(ArchiveInsert(base, {1, 1, 1}), DimensionMismatchError);
}

TEST(ArchiveInsert, StreamEqualsBatchInAnyOrder) {
  std::mt19937_64 gen(11);
  auto pts = testing::RandomPoints(gen, 150, 3, 0.0, 5.0);
  const auto expected = testing::AllPairsNondominated(pts);
  for (int perm = 0; perm < 20; ++perm) {
    std::shuffle(pts.begin(), pts.end(), gen);
    ParetoFront front(3);
    for (const auto& p : pts) front.Insert(ValueVector(p));
    EXPECT_EQ(ToPoints(front), expected);
  }
}

TEST(ParetoFront, JsonRoundTrip) {
  const ParetoFront front =
      ParetoFilter(std::vector<ValueVector>{{0.1, 3}, {2, 1.0 / 3.0}});
  const auto json = ToJson(front);
  EXPECT_EQ(json.dump(), "[[0.1,3.0],[2.0,0.3333333333333333]]");
  EXPECT_EQ(ParetoFrontFromJson(json), front);
}

}  // namespace
}  // namespace morltune
