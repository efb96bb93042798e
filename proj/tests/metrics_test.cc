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

#include "morltune/metrics.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "morltune/errors.h"
#include "oracles.h"

namespace morltune {
namespace {

using testing::Point;

ParetoFront Front(const std::vector<Point>& pts, int m = 0) {
  std::vector<ValueVector> v;
  for (const auto& p : pts) v.emplace_back(p);
  return ParetoFilter(v, m);
}

TEST(WeightVector, Validates) {
  EXPECT_NO_THROW(WeightVector({0.25, 0.75}));
  EXPECT_THROW(WeightVector({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(WeightVector({-0.1, 1.1}), std::invalid_argument);
}

TEST(Hypervolume, Examples) {
  EXPECT_DOUBLE_EQ(Hypervolume(Front({{1, 1}}), {0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(Hypervolume(Front({{1, 3}, {2, 2}, {3, 1}}), {0, 0}), 6.0);
  EXPECT_EQ(Hypervolume(ParetoFront(2), {0, 0}), 0.0);
}

TEST(Hypervolume, PointsNotDominatingRefContributeNothing) {
  EXPECT_EQ(Hypervolume(Front({{-1, 5}}), {0, 0}), 0.0);
  EXPECT_EQ(Hypervolume(Front({{0, 5}}), {0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(Hypervolume(Front({{-1, 5}, {1, 1}}), {0, 0}), 1.0);
}

TEST(Hypervolume, Errors) {
  EXPECT_THROW(Hypervolume(Front({{1, 1}}), {0, 0, 0}), DimensionMismatchError);
  EXPECT_THROW(Hypervolume(Front({{1, 1, 1, 1, 1}}), {0, 0, 0, 0, 0}),
               UnsupportedError);
}

TEST(Hypervolume, FourObjectivesMatchInclusionExclusion) {
  std::mt19937_64 gen(41);
  for (int rep = 0; rep < 30; ++rep) {
    const auto pts = testing::RandomNondominated(gen, 8, 4);
    const Point ref(4, 0.0);
    EXPECT_NEAR(Hypervolume(Front(pts), ValueVector(ref)),
                testing::InclusionExclusionVolume(pts, ref), 1e-9);
  }
}

TEST(Hypervolume, MonotoneUnderArchiveInsert) {
  std::mt19937_64 gen(8);
  const auto pts = testing::RandomPoints(gen, 80, 3, 0.0, 4.0);
  const ValueVector ref{0, 0, 0};
  ParetoFront front(3);
  double hv = 0.0;
  for (const auto& p : pts) {
    const bool accepted = front.Insert(ValueVector(p));
    const double next = Hypervolume(front, ref);
    if (accepted) {
      EXPECT_GE(next, hv - 1e-12);
    } else {
      EXPECT_EQ(next, hv);
    }
    hv = next;
  }
}

TEST(HypervolumeMonteCarlo, UnitBox) {
  const auto est = HypervolumeMonteCarlo(Front({{1, 1}}), {0, 0}, 1000000, 1);
  EXPECT_NEAR(est.value, 1.0, 0.003);
  EXPECT_EQ(HypervolumeMonteCarlo(ParetoFront(2), {0, 0}, 100, 1).value, 0.0);
  EXPECT_EQ(HypervolumeMonteCarlo(Front({{-1, 1}}), {0, 0}, 100, 1).value, 0.0);
}

TEST(HypervolumeMonteCarlo, Deterministic) {
  const ParetoFront f = Front({{1, 3}, {2, 2}, {3, 1}});
  EXPECT_EQ(HypervolumeMonteCarlo(f, {0, 0}, 5000, 9).value,
            HypervolumeMonteCarlo(f, {0, 0}, 5000, 9).value);
}

TEST(Igd, Examples) {
  const ParetoFront z = Front({{1, 0}, {0, 1}});
  EXPECT_EQ(InvertedGenerationalDistance(z, z), 0.0);
  EXPECT_NEAR(InvertedGenerationalDistance(Front({{0, 0}}), z),
              std::sqrt(2.0) / 2.0, 1e-12);
  EXPECT_THROW(InvertedGenerationalDistance(ParetoFront(2), z),
               std::invalid_argument);
  EXPECT_THROW(InvertedGenerationalDistance(z, ParetoFront(2)),
               std::invalid_argument);
}

TEST(Igd, DirectFormula) {
  // Reference {(3,0),(0,3),(2,2)}, front {(1,1),(3,0)}:
  // squared minima 0, min(1+4, 9)=5, min(2, 1+4)=2 -> sqrt(7)/3.
  const ParetoFront z = Front({{3, 0}, {0, 3}, {2, 2}});
  EXPECT_NEAR(InvertedGenerationalDistance(Front({{1, 1}, {3, 0}}), z),
              std::sqrt(7.0) / 3.0, 1e-12);
}

TEST(Igd, DominatedPointNeverIncreases) {
  std::mt19937_64 gen(3);
  const auto z = Front(testing::RandomNondominated(gen, 12, 2));
  for (int rep = 0; rep < 50; ++rep) {
    ParetoFront front = Front(testing::RandomPoints(gen, 6, 2, 0.0, 10.0));
    const double before = InvertedGenerationalDistance(front, z);
    // Strictly below an existing point in every objective.
    const ValueVector dominated({front[0][0] - 0.5, front[0][1] - 0.25});
    EXPECT_FALSE(front.Insert(dominated));
    EXPECT_LE(InvertedGenerationalDistance(front, z), before);
  }
}

TEST(Sparsity, Examples) {
  EXPECT_EQ(Sparsity(ParetoFront(2)), 0.0);
  EXPECT_EQ(Sparsity(Front({{1, 2}})), 0.0);
  EXPECT_EQ(Sparsity(Front({{0, 2}, {1, 1}, {2, 0}})), 2.0);
}

TEST(Sparsity, TwoPointsAndScaling) {
  EXPECT_DOUBLE_EQ(Sparsity(Front({{0, 3}, {2, 1}})), 4.0 + 4.0);
  std::mt19937_64 gen(17);
  const auto pts = testing::RandomNondominated(gen, 9, 3);
  std::vector<Point> scaled = pts;
  for (auto& p : scaled) {
    for (auto& x : p) x *= 2.5;
  }
  EXPECT_NEAR(Sparsity(Front(scaled)), 6.25 * Sparsity(Front(pts)), 1e-9);
}

TEST(ExpectedUtility, TwoCorners) {
  EXPECT_NEAR(ExpectedUtility(Front({{1, 0}, {0, 1}}), 100000, 5), 0.75, 0.01);
}

TEST(ExpectedUtility, SingletonIsMeanOfVector) {
  const auto est = ExpectedUtilityEstimate(Front({{2, 4, 9}}), 200000, 1);
  EXPECT_NEAR(est.value, 5.0, 4 * est.standard_error + 1e-12);
}

TEST(ExpectedUtility, DominatedPointsDoNotMatter) {
  std::vector<ValueVector> pts = {{1, 0}, {0, 1}, {0.6, 0.6}};
  const double base = ExpectedUtility(ParetoFilter(pts), 5000, 2);
  // ParetoFront cannot hold dominated points; the kernel sees the same max.
  pts.push_back({0.1, 0.1});
  EXPECT_EQ(ExpectedUtility(ParetoFilter(pts), 5000, 2), base);
  EXPECT_THROW(ExpectedUtility(ParetoFront(2), 10, 1), std::invalid_argument);
}

TEST(MetricSnapshot, FullAndEmpty) {
  MetricConfig cfg;
  cfg.ref_point = ValueVector({0, 0});
  cfg.reference_front = Front({{1, 2}, {2, 1}});
  const auto snap = ComputeMetrics(*cfg.reference_front, cfg);
  EXPECT_EQ(snap.igd, 0.0);
  EXPECT_GT(snap.hv, 0.0);
  EXPECT_GT(snap.sparsity, 0.0);
  ASSERT_TRUE(snap.eu.has_value());
  EXPECT_GT(*snap.eu, 0.0);

  const auto empty = ComputeMetrics(ParetoFront(2), cfg);
  EXPECT_EQ(empty.hv, 0.0);
  EXPECT_EQ(empty.sparsity, 0.0);
  EXPECT_FALSE(empty.eu.has_value());
  EXPECT_FALSE(empty.igd.has_value());
  EXPECT_EQ(ToJson(empty).dump(),
            R"({"eu":null,"hv":0.0,"igd":null,"sparsity":0.0})");

  cfg.reference_front.reset();
  EXPECT_FALSE(ComputeMetrics(Front({{1, 1}}), cfg).igd.has_value());
}

TEST(MetricName, Parse) {
  EXPECT_EQ(ParseMetricName("hv"), MetricName::kHypervolume);
  EXPECT_EQ(ParseMetricName("eu"), MetricName::kExpectedUtility);
  EXPECT_THROW(ParseMetricName("r2"), ConfigError);
}

}  // namespace
}  // namespace morltune
