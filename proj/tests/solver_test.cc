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

#include "morltune/solver.h"

#include <cmath>

#include "gtest/gtest.h"
#include "morltune/metrics.h"
#include "toy_problem.h"

namespace morltune::solver {
namespace {

using testing::ToyEnvironment;
using testing::ValueIterationOracle;

SolverHyperparams DefaultHp() {
  SolverHyperparams hp;
  hp.learning_rate = 0.1;
  hp.initial_epsilon = 1.0;
  hp.final_epsilon = 0.05;
  hp.epsilon_decay_steps = 10000;
  hp.num_sample_w = 5;
  return hp;
}

TEST(WeightGrid, TwoObjectives) {
  const auto grid = WeightGrid(3, 2);
  ASSERT_EQ(grid.size(), 3u);
  EXPECT_EQ(grid[0], WeightVector({1.0, 0.0}));
  EXPECT_EQ(grid[1], WeightVector({0.5, 0.5}));
  EXPECT_EQ(grid[2], WeightVector({0.0, 1.0}));
}

TEST(WeightGrid, ThreeObjectivesContainsCorners) {
  const auto grid = WeightGrid(4, 3);
  EXPECT_EQ(grid.size(), 10u);
  int corners = 0;
  for (const auto& w : grid) {
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) {
      sum += w[j];
      if (w[j] == 1.0) ++corners;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_EQ(corners, 3);
}

TEST(Hyperparams, Validation) {
  EXPECT_NO_THROW(ValidateHyperparams(DefaultHp()));
  auto bad = [](auto mutate) {
    SolverHyperparams hp = DefaultHp();
    mutate(hp);
    return hp;
  };
  EXPECT_THROW(ValidateHyperparams(bad([](auto& h) { h.learning_rate = 0; })),
               std::invalid_argument);
  EXPECT_THROW(ValidateHyperparams(bad([](auto& h) { h.learning_rate = 1.5; })),
               std::invalid_argument);
  EXPECT_THROW(ValidateHyperparams(bad([](auto& h) { h.final_epsilon = 0.001; })),
               std::invalid_argument);
  EXPECT_THROW(ValidateHyperparams(bad([](auto& h) {
                 h.initial_epsilon = 0.1;
                 h.final_epsilon = 0.2;
               })),
               std::invalid_argument);
  EXPECT_THROW(ValidateHyperparams(bad([](auto& h) { h.num_sample_w = 11; })),
               std::invalid_argument);
  EXPECT_THROW(ValidateHyperparams(bad([](auto& h) { h.epsilon_decay_steps = 0; })),
               std::invalid_argument);
  EXPECT_THROW(ValidateHyperparams(bad([](auto& h) { h.eval_episodes = 0; })),
               std::invalid_argument);
}

TEST(Solver, RecoversValueIterationFrontOnToyProblem) {
  const auto env = ToyEnvironment();
  const SolverResult result = Train(*env, DefaultHp(), 7, 50000, 0);
  const auto& last = result.snapshots.back();
  ASSERT_EQ(last.per_weight_values.size(), result.weights.size());

  ParetoFront oracle_front(2);
  for (std::size_t k = 0; k < result.weights.size(); ++k) {
    const QTable q = ValueIterationOracle(*env, result.weights[k]);
    const ValueVector expected =
        EvaluateGreedy(*env, q, result.weights[k], 1, env->discount());
    oracle_front.Insert(expected);
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(last.per_weight_values[k][j], expected[j], 1e-6) << "weight " << k;
    }
  }
  EXPECT_GE(oracle_front.size(), 2u);
  ASSERT_EQ(result.pareto_front.size(), oracle_front.size());
  for (std::size_t i = 0; i < oracle_front.size(); ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(result.pareto_front[i][j], oracle_front[i][j], 1e-6);
    }
  }
}

TEST(Solver, OptimalTablesAreAFixedPointWithoutExploration) {
  const auto env = ToyEnvironment();
  const auto weights = WeightGrid(5, 2);
  std::vector<QTable> tables;
  for (const auto& w : weights) tables.push_back(ValueIterationOracle(*env, w));
  const LearnerSchedule greedy{0.1, 0.0, 0.0, 1, 1};
  const SolverResult result = RunScalarizedQLearning(
      *env, weights, tables, greedy, 3, LearnerOptions{5000, 1000});
  for (std::size_t k = 0; k < weights.size(); ++k) {
    EXPECT_EQ(*result.final_tables[k], tables[k]);
  }
}

TEST(Solver, SameSeedIsBitIdentical) {
  const auto env = MakeEnvironment("dst");
  const SolverResult a = Train(*env, DefaultHp(), 11, 20000, 5000);
  const SolverResult b = Train(*env, DefaultHp(), 11, 20000, 5000);
  EXPECT_EQ(ToJson(a, true).dump(), ToJson(b, true).dump());
  for (std::size_t k = 0; k < a.final_tables.size(); ++k) {
    EXPECT_EQ(*a.final_tables[k], *b.final_tables[k]);
  }
  const SolverResult c = Train(*env, DefaultHp(), 12, 20000, 5000);
  EXPECT_NE(ToJson(a, true).dump(), ToJson(c, true).dump());
}

TEST(Solver, SnapshotScheduleAndCumulativeFronts) {
  const auto env = MakeEnvironment("dst");
  const SolverResult result = Train(*env, DefaultHp(), 5, 1000, 300);
  std::vector<int64_t> steps;
  for (const auto& s : result.snapshots) steps.push_back(s.step);
  EXPECT_EQ(steps, (std::vector<int64_t>{300, 600, 900, 1000}));
  const ValueVector ref = env->default_ref_point();
  double previous = 0.0;
  for (const auto& s : result.snapshots) {
    const double hv = Hypervolume(s.front, ref);
    EXPECT_GE(hv, previous);
    previous = hv;
  }
  EXPECT_EQ(result.snapshots.back().front, result.pareto_front);
}

TEST(Solver, ParetoSetPoliciesReproduceTheirValues) {
  const auto env = MakeEnvironment("dst");
  SolverHyperparams hp = DefaultHp();
  hp.eval_episodes = 2;
  const SolverResult result = Train(*env, hp, 9, 30000, 2500);
  ASSERT_FALSE(result.pareto_set.empty());
  for (const auto& member : result.pareto_set) {
    const ValueVector v = EvaluateGreedy(*env, *member.policy.q, member.policy.weight,
                                         hp.eval_episodes, env->discount());
    EXPECT_EQ(v, member.value);
    EXPECT_TRUE(result.pareto_front.Covers(v));
  }
  for (const auto& p : result.pareto_front) {
    bool found = false;
    for (const auto& member : result.pareto_set) found |= member.value == p;
    EXPECT_TRUE(found);
  }
}

TEST(EvaluateGreedy, DeepSeaTreasureClosedForms) {
  const auto env = MakeEnvironment("dst");
  const auto& spec = env->spec();
  QTable q(spec.state_count, spec.action_count, 2, 0.0);
  q.at(0, kDown)[0] = 1.0;
  EXPECT_EQ(EvaluateGreedy(*env, q, WeightVector({1.0, 0.0}), 1, env->discount()),
            ValueVector({0.7, -1.0}));

  // All-zero table: always "up", which bumps into the top edge forever.
  const QTable zeros(spec.state_count, spec.action_count, 2, 0.0);
  double steps = 0.0, scale = 1.0;
  for (int t = 0; t < spec.max_episode_steps; ++t) {
    steps += scale;
    scale *= env->discount();
  }
  const ValueVector v =
      EvaluateGreedy(*env, zeros, WeightVector({0.5, 0.5}), 3, env->discount());
  EXPECT_EQ(v[0], 0.0);
  EXPECT_NEAR(v[1], -steps, 1e-12);
}

}  // namespace
}  // namespace morltune::solver
