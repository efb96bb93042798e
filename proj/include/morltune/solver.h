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

// Tabular multi-policy scalarized Q-learning.
//
// One vector-valued Q-table is learned per weight of a uniform simplex grid.
// Episodes cycle round-robin over the weights; each episode acts
// epsilon-greedily on w . Q_w and updates Q_w componentwise toward
// r + gamma * Q_w(s', argmax_a w . Q_w(s', a)). At every snapshot the greedy
// policy of each weight is rolled out and the resulting value vectors are
// merged into an archive, which is the returned Pareto front.

#ifndef MORLTUNE_SOLVER_H_
#define MORLTUNE_SOLVER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "json.hpp"
#include "morltune/envs.h"
#include "morltune/metrics.h"
#include "morltune/pareto.h"

namespace morltune::solver {

struct SolverHyperparams {
  double learning_rate = 0.1;
  double initial_epsilon = 1.0;
  double final_epsilon = 0.05;
  int64_t epsilon_decay_steps = 10000;
  int num_sample_w = 5;
  double optimistic_init = 0.0;
  int eval_episodes = 1;

  bool operator==(const SolverHyperparams&) const = default;
};

// Throws std::invalid_argument describing the first violated constraint:
// learning_rate in (0, 1], epsilons in [0.01, 1], initial >= final,
// epsilon_decay_steps >= 1, num_sample_w in [2, 10], eval_episodes >= 1,
// optimistic_init finite.
void ValidateHyperparams(const SolverHyperparams& hp);

// All compositions of (num_sample_w - 1) into m parts, normalized. Always
// contains the m unit vectors. Ordered lexicographically descending, so the
// first vector is (1, 0, ..., 0).
std::vector<WeightVector> WeightGrid(int num_sample_w, int m);

// Dense vector-valued Q-table.
class QTable {
 public:
  QTable(int state_count, int action_count, int objective_count,
         double initial_value);

  int state_count() const { return state_count_; }
  int action_count() const { return action_count_; }
  int objective_count() const { return objective_count_; }

  std::span<double> at(int state, int action) {
    return {data_.data() + Offset(state, action),
            static_cast<std::size_t>(objective_count_)};
  }
  std::span<const double> at(int state, int action) const {
    return {data_.data() + Offset(state, action),
            static_cast<std::size_t>(objective_count_)};
  }

  // argmax_a w . Q(state, a); ties go to the lowest action index.
  int GreedyAction(int state, const WeightVector& w) const;
  std::vector<int> GreedyActions(const WeightVector& w) const;

  const std::vector<double>& data() const { return data_; }
  bool operator==(const QTable&) const = default;

 private:
  std::size_t Offset(int state, int action) const {
    return (static_cast<std::size_t>(state) * action_count_ + action) *
           objective_count_;
  }

  int state_count_;
  int action_count_;
  int objective_count_;
  std::vector<double> data_;
};

// Greedy policy of a Q-table under a fixed weight.
struct PolicyTable {
  int weight_index = 0;
  WeightVector weight;
  std::shared_ptr<const QTable> q;
};

// Mean discounted vector return of the w-greedy policy over `episodes`
// rollouts (episode e resets with seed e). Uses `discount` rather than the
// environment's own value so callers can evaluate under another horizon.
ValueVector EvaluateGreedy(const Environment& env, const QTable& q,
                           const WeightVector& w, int episodes,
                           double discount);

struct ParetoSetMember {
  // Snapshot step at which the policy was evaluated.
  int64_t step = 0;
  ValueVector value;
  PolicyTable policy;
};

struct Snapshot {
  int64_t step = 0;
  // Value of each weight's greedy policy at this step.
  std::vector<ValueVector> per_weight_values;
  // Archive of all evaluations up to and including this step.
  ParetoFront front;
};

struct SolverResult {
  std::vector<WeightVector> weights;
  ParetoFront pareto_front;
  // Policies realizing the front points. Distinct policies with the same
  // value are all kept.
  std::vector<ParetoSetMember> pareto_set;
  std::vector<Snapshot> snapshots;
  // Q-tables after the last step, one per weight.
  std::vector<std::shared_ptr<const QTable>> final_tables;
};

// Exploration and step-size schedule of the learner, without the
// hyperparameter domain checks of ValidateHyperparams.
struct LearnerSchedule {
  double learning_rate = 0.1;
  double initial_epsilon = 1.0;
  double final_epsilon = 0.05;
  int64_t epsilon_decay_steps = 1;
  int eval_episodes = 1;

  // Linear decay over the first epsilon_decay_steps steps, then constant.
  double EpsilonAt(int64_t step) const;
};

struct LearnerOptions {
  int64_t budget_steps = 1;
  // 0: evaluate only after the last step.
  int64_t snapshot_every = 0;
};

// Runs the learner from explicit starting tables (one per weight). Throws
// std::invalid_argument when the tables do not match the environment.
SolverResult RunScalarizedQLearning(const Environment& env,
                                    std::vector<WeightVector> weights,
                                    std::vector<QTable> initial_tables,
                                    const LearnerSchedule& schedule,
                                    uint64_t seed,
                                    const LearnerOptions& options);

// The tunable algorithm: validates `hp`, builds the weight grid and
// optimistic tables and runs the learner. Deterministic given
// (env, hp, seed, budget_steps, snapshot_every).
SolverResult Train(const Environment& env, const SolverHyperparams& hp,
                   uint64_t seed, int64_t budget_steps,
                   int64_t snapshot_every);

nlohmann::json ToJson(const SolverHyperparams& hp);
// Front, per-weight values of the last snapshot and the snapshot series.
// Q-tables are included (keyed by weight index) when include_policies is set.
nlohmann::json ToJson(const SolverResult& result, bool include_policies);

}  // namespace morltune::solver

#endif  // MORLTUNE_SOLVER_H_
