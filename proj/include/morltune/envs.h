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

// Seedable multi-objective MDPs with deterministic dynamics.
//
// Every environment is compiled into dense transition and reward tables, so
// the solver, the exact front oracle and the step API all read the same
// data. Instances are immutable once built; share them freely.

#ifndef MORLTUNE_ENVS_H_
#define MORLTUNE_ENVS_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morltune/kv_text.h"
#include "morltune/pareto.h"

namespace morltune {

struct MomdpSpec {
  std::string name;
  int state_count = 0;
  int action_count = 0;
  int objective_count = 0;
  double discount = 0.0;
  int max_episode_steps = 0;
  // Probability of each state being the initial one.
  std::vector<double> initial_state_distribution;
};

struct EnvState {
  int id = 0;
  int step = 0;

  bool operator==(const EnvState&) const = default;
};

struct StepOutcome {
  EnvState next_state;
  ValueVector reward;
  bool terminal = false;
  // Set only when the step limit is reached.
  bool truncated = false;
};

// Optional per-environment overrides of the spec defaults.
struct EnvOverrides {
  std::optional<double> discount;
  std::optional<int> max_episode_steps;
};

class Environment {
 public:
  // next_state[s * A + a], rewards[(s * A + a) * m + j], terminal[s].
  // Throws ConfigError when the tables are inconsistent with `spec`.
  Environment(MomdpSpec spec, std::vector<int> next_state,
              std::vector<double> rewards, std::vector<uint8_t> terminal,
              ValueVector default_ref_point,
              std::vector<std::string> objective_names);

  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  const MomdpSpec& spec() const { return spec_; }
  int objective_count() const { return spec_.objective_count; }
  double discount() const { return spec_.discount; }
  const ValueVector& default_ref_point() const { return default_ref_point_; }
  const std::vector<std::string>& objective_names() const {
    return objective_names_;
  }

  // Initial state drawn from the spec's distribution with a generator
  // derived from `seed`.
  EnvState Reset(uint64_t seed) const;
  // Throws std::logic_error when `state` is terminal or the episode already
  // hit the step limit, std::out_of_range on a bad action.
  StepOutcome Step(const EnvState& state, int action) const;

  // Table access for solvers; no checks.
  int NextState(int state, int action) const {
    return next_state_[state * spec_.action_count + action];
  }
  std::span<const double> Reward(int state, int action) const {
    const int m = spec_.objective_count;
    return {rewards_.data() + (state * spec_.action_count + action) * m,
            static_cast<std::size_t>(m)};
  }
  bool IsTerminal(int state) const { return terminal_[state] != 0; }

  // Unique start state when the initial distribution is a point mass.
  std::optional<int> DeterministicStart() const;

  // Copy with a different discount / step limit.
  std::shared_ptr<const Environment> WithOverrides(
      const EnvOverrides& overrides) const;

 private:
  friend const ParetoFront& TrueFront(const Environment& env);

  MomdpSpec spec_;
  std::vector<int> next_state_;
  std::vector<double> rewards_;
  std::vector<uint8_t> terminal_;
  ValueVector default_ref_point_;
  std::vector<std::string> objective_names_;

  mutable std::once_flag true_front_once_;
  mutable std::optional<ParetoFront> true_front_;
};

// Largest state_count * action_count the exact front oracle accepts.
inline constexpr int64_t kMaxTrueFrontTableSize = 1'000'000;

// Exact Pareto front of the value vectors reachable from the start state
// within the step limit, by multi-objective value iteration with Pareto-set
// backups over the remaining horizon. This enumerates every deterministic
// episode outcome. Computed once per environment and cached.
//
// Throws UnsupportedError for tables above kMaxTrueFrontTableSize or a
// start distribution that is not a point mass.
const ParetoFront& TrueFront(const Environment& env);

// Parsed environment description file.
struct GridEnvSpec {
  std::string name;
  std::string kind;  // "deep-sea-treasure" or "gem-minecart"
  double discount = 0.98;
  int max_episode_steps = 100;
  std::vector<std::string> layout;
  std::vector<double> treasure_values;
  int deliveries_per_episode = 2;
  std::optional<ValueVector> ref_point;
};

GridEnvSpec ParseGridEnvSpec(const KeyValueText& text);

// Grid moves shared by both grid worlds.
enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };
inline constexpr int kGridActionCount = 4;

std::shared_ptr<const Environment> BuildDeepSeaTreasure(const GridEnvSpec& spec);
std::shared_ptr<const Environment> BuildGemMinecart(const GridEnvSpec& spec);
std::shared_ptr<const Environment> BuildGridEnvironment(const GridEnvSpec& spec);

// Names of the shipped environments: "dst", "gem-minecart".
std::vector<std::string> BuiltinEnvironmentNames();
// Text of a shipped environment file. Throws ConfigError for unknown names.
std::string_view BuiltinEnvironmentText(std::string_view name);
std::shared_ptr<const Environment> MakeEnvironment(
    std::string_view name, const EnvOverrides& overrides = {});
std::shared_ptr<const Environment> LoadEnvironment(
    const std::filesystem::path& path, const EnvOverrides& overrides = {});

// Index of the state for GemMinecart cell (row, col) with the given cargo
// (0 empty, 1 ore A, 2 ore B) and completed delivery count.
int GemMinecartState(int rows, int cols, int row, int col, int cargo,
                     int delivered);

}  // namespace morltune

#endif  // MORLTUNE_ENVS_H_
