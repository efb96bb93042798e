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

#include "morltune/hpo/search.h"

#include <atomic>
#include <chrono>
#include <thread>

#include "gtest/gtest.h"
#include "morltune/errors.h"

namespace morltune::hpo {
namespace {

MetricConfig DstMetrics(const Environment& env) {
  MetricConfig m;
  m.ref_point = ValueVector{0.0, -50.0};
  m.reference_front = TrueFront(env);
  return m;
}

Config QuickConfig() {
  solver::SolverHyperparams hp;
  hp.learning_rate = 0.5;
  hp.epsilon_decay_steps = 2000;
  hp.num_sample_w = 4;
  return FromHyperparams(hp);
}

TrialOutcome Completed(double objective) {
  TrialOutcome o;
  o.objective = objective;
  o.status = TrialStatus::kCompleted;
  return o;
}

TEST(EvaluateConfigTest, MeanOfSeedValues) {
  const auto env = MakeEnvironment("dst");
  ObjectiveSpec spec;
  spec.metric_config = DstMetrics(*env);
  const auto out = EvaluateConfig(*env, QuickConfig(), {1, 2}, 3000, spec);
  ASSERT_EQ(out.per_seed.size(), 2u);
  EXPECT_EQ(out.status, TrialStatus::kCompleted);
  EXPECT_DOUBLE_EQ(out.objective,
                   (out.per_seed[0].metric_value + out.per_seed[1].metric_value) / 2.0);
  for (const auto& r : out.per_seed) {
    ASSERT_TRUE(r.front.has_value());
    EXPECT_DOUBLE_EQ(r.metric_value, Hypervolume(*r.front, spec.metric_config.ref_point));
  }
}

TEST(EvaluateConfigTest, ParallelMatchesSequentialAndRepeats) {
  const auto env = MakeEnvironment("dst");
  ObjectiveSpec spec;
  spec.metric = MetricName::kIgd;
  spec.metric_config = DstMetrics(*env);
  const std::vector<uint64_t> seeds = {3, 4, 5, 6};
  const auto seq = EvaluateConfig(*env, QuickConfig(), seeds, 3000, spec, 1);
  const auto par = EvaluateConfig(*env, QuickConfig(), seeds, 3000, spec, 4);
  const auto again = EvaluateConfig(*env, QuickConfig(), seeds, 3000, spec, 3);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    EXPECT_EQ(par.per_seed[i].seed, seeds[i]);
    EXPECT_EQ(par.per_seed[i].front, seq.per_seed[i].front);
    EXPECT_EQ(again.per_seed[i].front, seq.per_seed[i].front);
    EXPECT_LE(seq.per_seed[i].metric_value, 0.0);  // IGD is negated
  }
  EXPECT_EQ(par.objective, seq.objective);
}

TEST(EvaluateConfigTest, OneFailedSeedFailsTheTrial) {
  // IGD without a reference front is undefined, so scoring fails after
  // training succeeded.
  const auto env = MakeEnvironment("dst");
  ObjectiveSpec spec;
  spec.metric = MetricName::kIgd;
  spec.metric_config.ref_point = ValueVector{0.0, -50.0};
  const auto out = EvaluateConfig(*env, QuickConfig(), {1, 2}, 500, spec);
  EXPECT_EQ(out.status, TrialStatus::kFailed);
  EXPECT_EQ(out.objective, kPenaltyObjective);
  for (const auto& r : out.per_seed) {
    EXPECT_TRUE(r.failed);
    EXPECT_TRUE(r.front.has_value());
  }
}

TEST(EvaluateConfigTest, InvalidHyperparamsFailWithPenalty) {
  const auto env = MakeEnvironment("dst");
  ObjectiveSpec spec;
  spec.metric_config = DstMetrics(*env);
  Config bad = QuickConfig();
  bad["initial_epsilon"] = 0.1;
  bad["final_epsilon"] = 0.5;
  const auto out = EvaluateConfig(*env, bad, {1}, 100, spec);
  EXPECT_EQ(out.status, TrialStatus::kFailed);
  EXPECT_EQ(out.objective, kPenaltyObjective);
  EXPECT_FALSE(out.per_seed[0].error.empty());
}

TEST(ParallelForTest, VisitsEveryIndexAndRethrows) {
  std::vector<int> hits(100, 0);
  ParallelFor(100, 8, [&](int i) { hits[i] += 1; });
  EXPECT_EQ(std::count(hits.begin(), hits.end(), 1), 100);
  EXPECT_THROW(ParallelFor(10, 4, [](int i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

Study RandomStudy(uint64_t seed = 0) {
  const auto space = SolverSearchSpace();
  return Study(space, MakeOptimizer("random", space, seed));
}

double Synthetic(const Config& c) { return -std::abs(GetDouble(c, "learning_rate") - 0.1); }

TEST(RunSearchTest, StopsAfterMaxTrials) {
  Study study = RandomStudy();
  int persisted = 0;
  SearchCallbacks cb;
  cb.persist = [&](const SearchMemory&) { ++persisted; };
  const auto out = RunSearch(
      study, [](const Config& c) { return Completed(Synthetic(c)); }, {.max_trials = 1}, {}, cb);
  EXPECT_EQ(out.trials_run, 1);
  EXPECT_EQ(study.memory().trials.size(), 1u);
  EXPECT_EQ(persisted, 1);
  EXPECT_THROW(RunSearch(study, [](const Config&) { return Completed(0); }, {}), ConfigError);
}

TEST(RunSearchTest, RandomSearchPrefixesAreConsistent) {
  // A longer run replays the shorter one, so the best objective can only
  // improve with more trials.
  double previous = -INFINITY;
  for (int64_t n : {5, 10, 20, 40}) {
    Study study = RandomStudy(4);
    RunSearch(study, [](const Config& c) { return Completed(Synthetic(c)); }, {.max_trials = n});
    const double best = study.BestTrial().objective;
    EXPECT_GE(best, previous);
    previous = best;
  }
}

TEST(RunSearchTest, BaselinesComeFirstAndInvalidOnesAreNotRun) {
  Study study = RandomStudy();
  Config invalid = QuickConfig();
  invalid["initial_epsilon"] = 0.1;
  invalid["final_epsilon"] = 0.5;
  int evaluated = 0;
  RunSearch(
      study,
      [&](const Config& c) {
        ++evaluated;
        return Completed(Synthetic(c));
      },
      {.max_trials = 4}, {QuickConfig(), invalid});
  const auto& trials = study.memory().trials;
  ASSERT_EQ(trials.size(), 4u);
  EXPECT_TRUE(trials[0].injected);
  EXPECT_EQ(trials[0].config, QuickConfig());
  EXPECT_EQ(trials[1].status, TrialStatus::kInvalid);
  EXPECT_EQ(trials[1].objective, kPenaltyObjective);
  EXPECT_FALSE(trials[2].injected);
  EXPECT_EQ(evaluated, 3);
}

TEST(RunSearchTest, InterruptStopsBetweenTrials) {
  Study study = RandomStudy();
  std::atomic<bool> interrupt{false};
  SearchCallbacks cb;
  cb.interrupt = &interrupt;
  const auto out = RunSearch(
      study,
      [&](const Config& c) {
        if (study.memory().trials.size() == 2) interrupt = true;
        return Completed(Synthetic(c));
      },
      {.max_trials = 100}, {}, cb);
  EXPECT_TRUE(out.interrupted);
  EXPECT_EQ(out.trials_run, 3);
}

TEST(RunSearchTest, WallclockLimit) {
  Study study = RandomStudy();
  const auto out = RunSearch(
      study,
      [](const Config& c) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
        return Completed(Synthetic(c));
      },
      {.max_wallclock_seconds = 0.1});
  EXPECT_GE(out.trials_run, 1);
  EXPECT_LT(out.trials_run, 20);
  EXPECT_GT(study.memory().trials[0].wallclock_seconds, 0.0);
}

TEST(RunSearchTest, PersistsBeforeRethrowing) {
  Study study = RandomStudy();
  std::size_t persisted_trials = 0;
  SearchCallbacks cb;
  cb.persist = [&](const SearchMemory& m) { persisted_trials = m.trials.size(); };
  EXPECT_THROW(RunSearch(
                   study,
                   [&](const Config& c) {
                     if (study.memory().trials.size() == 2) throw std::runtime_error("disk");
                     return Completed(Synthetic(c));
                   },
                   {.max_trials = 5}, {}, cb),
               std::runtime_error);
  EXPECT_EQ(persisted_trials, 2u);
}

TEST(SummarizeTest, ConfidenceInterval) {
  const auto one = Summarize({4.0});
  EXPECT_EQ(one.ci_low, 4.0);
  EXPECT_EQ(one.ci_high, 4.0);
  const auto two = Summarize({1.0, 3.0});
  EXPECT_DOUBLE_EQ(two.mean, 2.0);
  EXPECT_NEAR(two.ci_high - two.mean, 1.96 * std::sqrt(2.0) / std::sqrt(2.0), 1e-12);
}

TEST(RunValidationTest, RejectsOverlapBeforeTraining) {
  const auto env = MakeEnvironment("dst");
  // A budget this large would not finish if training started.
  EXPECT_THROW(RunValidation(*env, QuickConfig(), {1, 2}, {2, 3}, int64_t{1} << 40,
                             DstMetrics(*env), 1000),
               ConfigError);
}

TEST(RunValidationTest, CurvesAndDeterminism) {
  const auto env = MakeEnvironment("dst");
  const auto a = RunValidation(*env, QuickConfig(), {0, 1, 2}, {10}, 4000, DstMetrics(*env),
                               1000, 3);
  const auto b = RunValidation(*env, QuickConfig(), {0, 1, 2}, {10}, 4000, DstMetrics(*env),
                               1000, 1);
  EXPECT_EQ(a.steps, (std::vector<int64_t>{1000, 2000, 3000, 4000}));
  ASSERT_EQ(a.curves.size(), b.curves.size());
  EXPECT_EQ(a.curves.size(), 4u * 4u);
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    EXPECT_EQ(a.curves[i].per_seed, b.curves[i].per_seed);
    EXPECT_LE(a.curves[i].ci_low, a.curves[i].mean);
    EXPECT_LE(a.curves[i].mean, a.curves[i].ci_high);
  }
  EXPECT_EQ(a.Final().size(), 4u);
  for (std::size_t i = 0; i < a.per_seed.size(); ++i) {
    EXPECT_EQ(a.per_seed[i].final_front, b.per_seed[i].final_front);
  }
}

TEST(RunValidationTest, SingleSeedHasZeroWidth) {
  const auto env = MakeEnvironment("dst");
  const auto r = RunValidation(*env, QuickConfig(), {5}, {10}, 2000, DstMetrics(*env), 1000);
  for (const auto& p : r.curves) {
    EXPECT_EQ(p.ci_low, p.mean);
    EXPECT_EQ(p.ci_high, p.mean);
  }
}

}  // namespace
}  // namespace morltune::hpo
