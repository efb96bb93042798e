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

#include "morltune/analysis.h"

#include <algorithm>
#include <numeric>

#include "gtest/gtest.h"
#include "morltune/errors.h"
#include "morltune/rng.h"

namespace morltune::analysis {
namespace {

using hpo::Config;
using hpo::ParamSpec;

hpo::HyperparameterSpace FourParams() {
  return hpo::HyperparameterSpace({ParamSpec::Float("a", 0.0, 1.0),
                                   ParamSpec::Float("b", 0.0, 1.0),
                                   ParamSpec::Integer("c", 1, 9),
                                   ParamSpec::Categorical("d", {"x", "y", "z"})},
                                  {});
}

// `n` completed trials with objective `f(config)`, sampled with `seed`.
template <typename F>
std::vector<hpo::Trial> MakeTrials(int n, uint64_t seed, F f) {
  const auto space = FourParams();
  Rng rng(seed);
  std::vector<hpo::Trial> trials;
  for (int i = 0; i < n; ++i) {
    hpo::Trial t;
    t.trial_id = i;
    t.config = space.Sample(rng);
    t.objective = f(t.config, rng);
    t.status = hpo::TrialStatus::kCompleted;
    trials.push_back(std::move(t));
  }
  return trials;
}

double OnlyA(const Config& c, Rng&) { return 3.0 * hpo::GetDouble(c, "a"); }

TEST(DatasetTest, KeepsCompletedTrialsAndOneHotEncodes) {
  auto trials = MakeTrials(6, 1, OnlyA);
  trials[1].status = hpo::TrialStatus::kFailed;
  trials[4].status = hpo::TrialStatus::kInvalid;
  const auto data = BuildDataset(FourParams(), trials);
  EXPECT_EQ(data.row_count(), 4);
  EXPECT_EQ(data.trial_ids, (std::vector<int64_t>{0, 2, 3, 5}));
  EXPECT_EQ(data.feature_names,
            (std::vector<std::string>{"a", "b", "c", "d=x", "d=y", "d=z"}));
  for (const auto& row : data.rows) {
    EXPECT_DOUBLE_EQ(row[3] + row[4] + row[5], 1.0);
  }
  EXPECT_THROW(BuildDataset(FourParams(), std::span(trials).first(1)), ConfigError);
}

TEST(CorrelationTest, PerfectAndUndefined) {
  const std::vector<double> x = {1, 2, 3, 4};
  EXPECT_NEAR(*Pearson(x, std::vector<double>{2, 4, 6, 8}), 1.0, 1e-12);
  EXPECT_NEAR(*Pearson(x, std::vector<double>{0, -1, -2, -3}), -1.0, 1e-12);
  EXPECT_FALSE(Pearson(x, std::vector<double>{5, 5, 5, 5}).has_value());
  const auto data = BuildDataset(FourParams(), MakeTrials(30, 2, OnlyA));
  EXPECT_NEAR(*Correlation(data, "a"), 1.0, 1e-12);
}

TEST(ImportanceTest, SumsToOneAndRanksTheDriver) {
  const auto data = BuildDataset(FourParams(), MakeTrials(120, 3, OnlyA));
  const auto report = RfImportance(data, 0);
  ASSERT_EQ(report.entries.size(), 4u);
  double total = 0.0;
  for (const auto& e : report.entries) total += e.importance;
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_EQ(report.entries[0].parameter, "a");
  EXPECT_GT(report.entries[0].importance, 0.8);
}

TEST(ImportanceTest, CategoricalDriver) {
  const auto data = BuildDataset(FourParams(), MakeTrials(120, 4, [](const Config& c, Rng&) {
    return std::get<std::string>(c.at("d")) == "y" ? 1.0 : 0.0;
  }));
  EXPECT_EQ(RfImportance(data, 1).entries[0].parameter, "d");
}

TEST(ImportanceTest, RowOrderDoesNotMatter) {
  auto trials = MakeTrials(60, 5, [](const Config& c, Rng& rng) {
    return hpo::GetDouble(c, "a") + 0.5 * hpo::GetDouble(c, "b") + 0.1 * rng.Normal();
  });
  const auto forward = FeatureImportances(BuildDataset(FourParams(), trials), 7);
  std::reverse(trials.begin(), trials.end());
  std::swap(trials[3], trials[40]);
  const auto shuffled = FeatureImportances(BuildDataset(FourParams(), trials), 7);
  EXPECT_EQ(forward, shuffled);
}

TEST(ImportanceTest, SameSeedSameResult) {
  const auto data = BuildDataset(FourParams(), MakeTrials(40, 6, OnlyA));
  EXPECT_EQ(FeatureImportances(data, 3), FeatureImportances(data, 3));
}

TEST(ImportanceTest, PureNoiseIsRoughlyUniform) {
  const auto data = BuildDataset(FourParams(), MakeTrials(200, 8, [](const Config&, Rng& rng) {
    return rng.Normal();
  }));
  for (const auto& e : RfImportance(data, 0).entries) {
    EXPECT_GT(e.importance, 0.05) << e.parameter;
    EXPECT_LT(e.importance, 0.6) << e.parameter;
  }
}

TEST(ImportanceTest, ConstantLabelsGiveUniform) {
  const auto data = BuildDataset(FourParams(), MakeTrials(20, 9, [](const Config&, Rng&) {
    return 1.0;
  }));
  for (const auto& e : RfImportance(data, 0).entries) {
    EXPECT_DOUBLE_EQ(e.importance, 0.25);
    EXPECT_FALSE(e.correlation.has_value());
  }
}

TEST(ImportanceTest, TooFewRows) {
  const auto data = BuildDataset(FourParams(), MakeTrials(ForestOptions::kMinRows - 1, 1, OnlyA));
  EXPECT_THROW(RfImportance(data, 0), ConfigError);
}

TEST(ReportTest, CsvAndTable) {
  const auto report = RfImportance(BuildDataset(FourParams(), MakeTrials(30, 2, OnlyA)), 0);
  const std::string csv = ToCsv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "parameter,importance,correlation");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  const std::string table = RenderTable(report, 2);
  EXPECT_NE(table.find('a'), std::string::npos);
}

}  // namespace
}  // namespace morltune::analysis
