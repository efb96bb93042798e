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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace morltune::solver {
namespace {

constexpr double kMinEpsilon = 0.01;
constexpr double kMaxEpsilon = 1.0;
constexpr int kMinSampleW = 2;
constexpr int kMaxSampleW = 10;

void Require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

void Compositions(int remaining, int parts, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int first = remaining; first >= 0; --first) {
    current.push_back(first);
    Compositions(remaining - first, parts - 1, current, out);
    current.pop_back();
  }
}

// Archive of evaluated policies: front plus the policies realizing it.
class PolicyArchive {
 public:
  explicit PolicyArchive(int objective_count) : front_(objective_count) {}

  void Offer(int64_t step, int weight_index, const WeightVector& w,
             const QTable& table, const ValueVector& value) {
    if (front_.Insert(value)) {
      std::erase_if(members_, [this](const ParetoSetMember& m) {
        return !Contains(m.value);
      });
      Add(step, weight_index, w, table, value);
      return;
    }
    if (!Contains(value)) return;
    // Same value as a stored point: keep it only if it is a new policy.
    const std::vector<int> actions = table.GreedyActions(w);
    for (const auto& m : members_) {
      if (m.value == value &&
          m.policy.q->GreedyActions(m.policy.weight) == actions) {
        return;
      }
    }
    Add(step, weight_index, w, table, value);
  }

  const ParetoFront& front() const { return front_; }
  std::vector<ParetoSetMember> TakeMembers() { return std::move(members_); }

 private:
  bool Contains(const ValueVector& v) const {
    return std::binary_search(front_.begin(), front_.end(), v);
  }

  void Add(int64_t step, int weight_index, const WeightVector& w,
           const QTable& table, const ValueVector& value) {
    members_.push_back(ParetoSetMember{
        step, value,
        PolicyTable{weight_index, w, std::make_shared<const QTable>(table)}});
  }

  ParetoFront front_;
  std::vector<ParetoSetMember> members_;
};

}  // namespace

void ValidateHyperparams(const SolverHyperparams& hp) {
  Require(hp.learning_rate > 0.0 && hp.learning_rate <= 1.0,
          "learning_rate must lie in (0, 1]");
  Require(hp.initial_epsilon >= kMinEpsilon && hp.initial_epsilon <= kMaxEpsilon,
          "initial_epsilon must lie in [0.01, 1]");
  Require(hp.final_epsilon >= kMinEpsilon && hp.final_epsilon <= kMaxEpsilon,
          "final_epsilon must lie in [0.01, 1]");
  Require(hp.initial_epsilon >= hp.final_epsilon,
          "initial_epsilon must be >= final_epsilon");
  Require(hp.epsilon_decay_steps >= 1, "epsilon_decay_steps must be >= 1");
  Require(hp.num_sample_w >= kMinSampleW && hp.num_sample_w <= kMaxSampleW,
          "num_sample_w must lie in [2, 10]");
  Require(hp.eval_episodes >= 1, "eval_episodes must be >= 1");
  Require(std::isfinite(hp.optimistic_init), "optimistic_init must be finite");
}

std::vector<WeightVector> WeightGrid(int num_sample_w, int m) {
  Require(num_sample_w >= 2, "num_sample_w must be >= 2");
  Require(m >= 2, "weight grid needs at least 2 objectives");
  const int total = num_sample_w - 1;
  std::vector<std::vector<int>> parts;
  std::vector<int> current;
  Compositions(total, m, current, parts);
  std::vector<WeightVector> out;
  out.reserve(parts.size());
  for (const auto& p : parts) {
    std::vector<double> w(m);
    for (int j = 0; j < m; ++j) w[j] = static_cast<double>(p[j]) / total;
    out.emplace_back(std::move(w));
  }
  return out;
}

QTable::QTable(int state_count, int action_count, int objective_count,
               double initial_value)
    : state_count_(state_count),
      action_count_(action_count),
      objective_count_(objective_count),
      data_(static_cast<std::size_t>(state_count) * action_count *
                objective_count,
            initial_value) {}

int QTable::GreedyAction(int state, const WeightVector& w) const {
  int best_action = 0;
  double best = w.Scalarize(at(state, 0));
  for (int a = 1; a < action_count_; ++a) {
    const double v = w.Scalarize(at(state, a));
    if (v > best) {
      best = v;
      best_action = a;
    }
  }
  return best_action;
}

std::vector<int> QTable::GreedyActions(const WeightVector& w) const {
  std::vector<int> out(state_count_);
  for (int s = 0; s < state_count_; ++s) out[s] = GreedyAction(s, w);
  return out;
}

ValueVector EvaluateGreedy(const Environment& env, const QTable& q,
                           const WeightVector& w, int episodes,
                           double discount) {
  Require(episodes >= 1, "episodes must be >= 1");
  const int m = env.objective_count();
  const int horizon = env.spec().max_episode_steps;
  std::vector<double> total(m, 0.0);
  for (int e = 0; e < episodes; ++e) {
    int state = env.Reset(static_cast<uint64_t>(e)).id;
    double scale = 1.0;
    for (int t = 0; t < horizon; ++t) {
      const int a = q.GreedyAction(state, w);
      const auto r = env.Reward(state, a);
      for (int j = 0; j < m; ++j) total[j] += scale * r[j];
      scale *= discount;
      state = env.NextState(state, a);
      if (env.IsTerminal(state)) break;
    }
  }
  for (auto& x : total) x /= episodes;
  return ValueVector(std::move(total));
}

double LearnerSchedule::EpsilonAt(int64_t step) const {
  if (step >= epsilon_decay_steps) return final_epsilon;
  const double frac =
      static_cast<double>(step) / static_cast<double>(epsilon_decay_steps);
  return initial_epsilon + frac * (final_epsilon - initial_epsilon);
}

SolverResult RunScalarizedQLearning(const Environment& env,
                                    std::vector<WeightVector> weights,
                                    std::vector<QTable> tables,
                                    const LearnerSchedule& schedule,
                                    uint64_t seed,
                                    const LearnerOptions& options) {
  const MomdpSpec& spec = env.spec();
  const int m = spec.objective_count;
  Require(options.budget_steps >= 1, "budget_steps must be >= 1");
  Require(options.snapshot_every >= 0, "snapshot_every must be >= 0");
  Require(!weights.empty() && weights.size() == tables.size(),
          "need one Q-table per weight");
  for (const auto& w : weights) {
    Require(w.size() == m, "weight dimension does not match the environment");
  }
  for (const auto& t : tables) {
    Require(t.state_count() == spec.state_count &&
                t.action_count() == spec.action_count &&
                t.objective_count() == m,
            "Q-table shape does not match the environment");
  }

  const double gamma = spec.discount;
  const double lr = schedule.learning_rate;
  const int weight_count = static_cast<int>(weights.size());
  Rng rng(seed);

  SolverResult result;
  PolicyArchive archive(m);
  int64_t step = 0;

  auto take_snapshot = [&] {
    Snapshot snap;
    snap.step = step;
    for (int k = 0; k < weight_count; ++k) {
      ValueVector v = EvaluateGreedy(env, tables[k], weights[k],
                                     schedule.eval_episodes, gamma);
      archive.Offer(step, k, weights[k], tables[k], v);
      snap.per_weight_values.push_back(std::move(v));
    }
    snap.front = archive.front();
    result.snapshots.push_back(std::move(snap));
  };

  std::vector<double> target(m);
  for (int64_t episode = 0; step < options.budget_steps; ++episode) {
    const int k = static_cast<int>(episode % weight_count);
    const WeightVector& w = weights[k];
    QTable& q = tables[k];
    int state = env.Reset(rng.NextU64()).id;
    for (int t = 0; t < spec.max_episode_steps; ++t) {
      const double eps = schedule.EpsilonAt(step);
      const int action =
          rng.Uniform() < eps
              ? static_cast<int>(rng.UniformInt(spec.action_count))
              : q.GreedyAction(state, w);
      const int next = env.NextState(state, action);
      const auto r = env.Reward(state, action);
      const bool terminal = env.IsTerminal(next);
      if (terminal) {
        for (int j = 0; j < m; ++j) target[j] = r[j];
      } else {
        const auto bootstrap = q.at(next, q.GreedyAction(next, w));
        for (int j = 0; j < m; ++j) target[j] = r[j] + gamma * bootstrap[j];
      }
      auto entry = q.at(state, action);
      for (int j = 0; j < m; ++j) entry[j] += lr * (target[j] - entry[j]);

      ++step;
      if (options.snapshot_every > 0 && step % options.snapshot_every == 0) {
        take_snapshot();
      }
      if (terminal || step >= options.budget_steps) break;
      state = next;
    }
  }
  if (result.snapshots.empty() || result.snapshots.back().step != step) {
    take_snapshot();
  }

  result.pareto_front = archive.front();
  result.pareto_set = archive.TakeMembers();
  for (auto& t : tables) {
    result.final_tables.push_back(std::make_shared<const QTable>(std::move(t)));
  }
  result.weights = std::move(weights);
  return result;
}

SolverResult Train(const Environment& env, const SolverHyperparams& hp,
                   uint64_t seed, int64_t budget_steps,
                   int64_t snapshot_every) {
  ValidateHyperparams(hp);
  const MomdpSpec& spec = env.spec();
  std::vector<WeightVector> weights =
      WeightGrid(hp.num_sample_w, spec.objective_count);
  std::vector<QTable> tables(
      weights.size(), QTable(spec.state_count, spec.action_count,
                             spec.objective_count, hp.optimistic_init));
  const LearnerSchedule schedule{hp.learning_rate, hp.initial_epsilon,
                                 hp.final_epsilon, hp.epsilon_decay_steps,
                                 hp.eval_episodes};
  return RunScalarizedQLearning(env, std::move(weights), std::move(tables),
                                schedule, seed,
                                LearnerOptions{budget_steps, snapshot_every});
}

nlohmann::json ToJson(const SolverHyperparams& hp) {
  return {{"learning_rate", hp.learning_rate},
          {"initial_epsilon", hp.initial_epsilon},
          {"final_epsilon", hp.final_epsilon},
          {"epsilon_decay_steps", hp.epsilon_decay_steps},
          {"num_sample_w", hp.num_sample_w},
          {"optimistic_init", hp.optimistic_init},
          {"eval_episodes", hp.eval_episodes}};
}

nlohmann::json ToJson(const SolverResult& result, bool include_policies) {
  nlohmann::json j;
  j["weights"] = nlohmann::json::array();
  for (const auto& w : result.weights) {
    j["weights"].push_back(std::vector<double>(w.values().begin(), w.values().end()));
  }
  j["front"] = ToJson(result.pareto_front);
  j["per_weight_values"] = nlohmann::json::array();
  if (!result.snapshots.empty()) {
    for (const auto& v : result.snapshots.back().per_weight_values) {
      j["per_weight_values"].push_back(ToJson(v));
    }
  }
  j["pareto_set"] = nlohmann::json::array();
  for (const auto& member : result.pareto_set) {
    j["pareto_set"].push_back({{"weight_index", member.policy.weight_index},
                               {"step", member.step},
                               {"value", ToJson(member.value)}});
  }
  j["snapshots"] = nlohmann::json::array();
  for (const auto& s : result.snapshots) {
    j["snapshots"].push_back({{"step", s.step}, {"front", ToJson(s.front)}});
  }
  if (include_policies) {
    nlohmann::json policies = nlohmann::json::object();
    for (std::size_t k = 0; k < result.final_tables.size(); ++k) {
      const QTable& q = *result.final_tables[k];
      policies[std::to_string(k)] = {
          {"weight", std::vector<double>(result.weights[k].values().begin(),
                                         result.weights[k].values().end())},
          {"state_count", q.state_count()},
          {"action_count", q.action_count()},
          {"objective_count", q.objective_count()},
          {"q", q.data()}};
    }
    j["policies"] = std::move(policies);
  }
  return j;
}

}  // namespace morltune::solver
