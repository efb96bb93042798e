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

#include "morltune/envs.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "morltune/errors.h"
#include "morltune/rng.h"

namespace morltune {
namespace {

#include "builtin_envs.inc"

constexpr int kRowDelta[kGridActionCount] = {-1, 1, 0, 0};
constexpr int kColDelta[kGridActionCount] = {0, 0, -1, 1};

struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<std::string> cells;

  char at(int r, int c) const { return cells[r][c]; }
  int index(int r, int c) const { return r * cols + c; }
};

Grid ParseLayout(const GridEnvSpec& spec) {
  Grid g;
  g.cells = spec.layout;
  g.rows = static_cast<int>(g.cells.size());
  if (g.rows == 0) throw ConfigError(spec.name + ": empty layout");
  g.cols = static_cast<int>(g.cells.front().size());
  for (const auto& row : g.cells) {
    if (static_cast<int>(row.size()) != g.cols) {
      throw ConfigError(spec.name + ": layout rows differ in length");
    }
  }
  return g;
}

// Target cell of a grid move; blocked moves stay put.
std::pair<int, int> Move(const Grid& g, int r, int c, int action,
                         char blocked) {
  const int nr = r + kRowDelta[action];
  const int nc = c + kColDelta[action];
  if (nr < 0 || nr >= g.rows || nc < 0 || nc >= g.cols) return {r, c};
  if (g.at(nr, nc) == blocked) return {r, c};
  return {nr, nc};
}

std::pair<int, int> FindUnique(const Grid& g, char symbol,
                               const std::string& env) {
  std::optional<std::pair<int, int>> found;
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      if (g.at(r, c) != symbol) continue;
      if (found) {
        throw ConfigError(env + ": layout has more than one '" +
                          std::string(1, symbol) + "'");
      }
      found = {r, c};
    }
  }
  if (!found) {
    throw ConfigError(env + ": layout has no '" + std::string(1, symbol) + "'");
  }
  return *found;
}

ValueVector RefPointOrDefault(const GridEnvSpec& spec, ValueVector fallback) {
  if (!spec.ref_point) return fallback;
  if (spec.ref_point->size() != fallback.size()) {
    throw ConfigError(spec.name + ": ref_point has " +
                      std::to_string(spec.ref_point->size()) +
                      " entries, environment has " +
                      std::to_string(fallback.size()) + " objectives");
  }
  return *spec.ref_point;
}

using Point = std::vector<double>;

// Nondominated subset with exact duplicates removed.
void KeepNondominated(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), std::greater<>());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Point> kept;
  for (auto& p : pts) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (Dominates(std::span<const double>(k), std::span<const double>(p))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(p));
  }
  pts = std::move(kept);
}

ParetoFront ComputeTrueFront(const Environment& env) {
  const MomdpSpec& spec = env.spec();
  const int64_t table =
      static_cast<int64_t>(spec.state_count) * spec.action_count;
  if (table > kMaxTrueFrontTableSize) {
    throw UnsupportedError(spec.name + ": " + std::to_string(table) +
                           " state-action pairs exceed the exact front limit");
  }
  const std::optional<int> start = env.DeterministicStart();
  if (!start) {
    throw UnsupportedError(spec.name +
                           ": exact front needs a point-mass start state");
  }
  const int m = spec.objective_count;
  const double gamma = spec.discount;

  // values[s]: nondominated returns achievable from s with k steps left.
  std::vector<std::vector<Point>> values(spec.state_count,
                                         std::vector<Point>{Point(m, 0.0)});
  std::vector<std::vector<Point>> next(spec.state_count);
  for (int k = 1; k <= spec.max_episode_steps; ++k) {
    for (int s = 0; s < spec.state_count; ++s) {
      auto& out = next[s];
      out.clear();
      if (env.IsTerminal(s)) {
        out.push_back(Point(m, 0.0));
        continue;
      }
      for (int a = 0; a < spec.action_count; ++a) {
        const int s2 = env.NextState(s, a);
        const auto r = env.Reward(s, a);
        if (env.IsTerminal(s2)) {
          out.emplace_back(r.begin(), r.end());
          continue;
        }
        for (const auto& v : values[s2]) {
          Point p(m);
          for (int j = 0; j < m; ++j) p[j] = r[j] + gamma * v[j];
          out.push_back(std::move(p));
        }
      }
      KeepNondominated(out);
    }
    values.swap(next);
  }
  std::vector<ValueVector> points;
  for (auto& p : values[*start]) points.emplace_back(std::move(p));
  return ParetoFilter(points, m);
}

}  // namespace

Environment::Environment(MomdpSpec spec, std::vector<int> next_state,
                         std::vector<double> rewards,
                         std::vector<uint8_t> terminal,
                         ValueVector default_ref_point,
                         std::vector<std::string> objective_names)
    : spec_(std::move(spec)),
      next_state_(std::move(next_state)),
      rewards_(std::move(rewards)),
      terminal_(std::move(terminal)),
      default_ref_point_(std::move(default_ref_point)),
      objective_names_(std::move(objective_names)) {
  const std::string& n = spec_.name;
  if (spec_.state_count <= 0 || spec_.action_count <= 0) {
    throw ConfigError(n + ": state and action counts must be positive");
  }
  if (spec_.objective_count < 2) {
    throw ConfigError(n + ": needs at least 2 objectives");
  }
  if (!(spec_.discount >= 0.0 && spec_.discount < 1.0)) {
    throw ConfigError(n + ": discount must lie in [0, 1)");
  }
  if (spec_.max_episode_steps <= 0) {
    throw ConfigError(n + ": max_episode_steps must be positive");
  }
  const auto sa = static_cast<std::size_t>(spec_.state_count) *
                  static_cast<std::size_t>(spec_.action_count);
  if (next_state_.size() != sa ||
      rewards_.size() != sa * static_cast<std::size_t>(spec_.objective_count) ||
      terminal_.size() != static_cast<std::size_t>(spec_.state_count)) {
    throw ConfigError(n + ": table sizes do not match the spec");
  }
  for (const int s : next_state_) {
    if (s < 0 || s >= spec_.state_count) {
      throw ConfigError(n + ": transition to an unknown state");
    }
  }
  for (const double r : rewards_) {
    if (!std::isfinite(r)) throw ConfigError(n + ": rewards must be finite");
  }
  const auto& mu = spec_.initial_state_distribution;
  if (mu.size() != static_cast<std::size_t>(spec_.state_count)) {
    throw ConfigError(n + ": initial distribution has the wrong size");
  }
  double total = 0.0;
  for (const double p : mu) {
    if (!(p >= 0.0)) throw ConfigError(n + ": negative initial probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError(n + ": initial distribution must sum to 1");
  }
  if (default_ref_point_.size() != spec_.objective_count ||
      objective_names_.size() !=
          static_cast<std::size_t>(spec_.objective_count)) {
    throw ConfigError(n + ": reference point / objective names have the "
                          "wrong dimension");
  }
}

EnvState Environment::Reset(uint64_t seed) const {
  const auto& mu = spec_.initial_state_distribution;
  Rng rng(seed);
  const double u = rng.Uniform();
  double cumulative = 0.0;
  int last_positive = 0;
  for (int s = 0; s < spec_.state_count; ++s) {
    if (mu[s] <= 0.0) continue;
    last_positive = s;
    cumulative += mu[s];
    if (u < cumulative) return EnvState{s, 0};
  }
  return EnvState{last_positive, 0};
}

StepOutcome Environment::Step(const EnvState& state, int action) const {
  if (state.id < 0 || state.id >= spec_.state_count) {
    throw std::out_of_range(spec_.name + ": unknown state");
  }
  if (action < 0 || action >= spec_.action_count) {
    throw std::out_of_range(spec_.name + ": action " + std::to_string(action) +
                            " out of range");
  }
  if (IsTerminal(state.id)) {
    throw std::logic_error(spec_.name + ": cannot step a terminal state");
  }
  if (state.step >= spec_.max_episode_steps) {
    throw std::logic_error(spec_.name + ": episode already truncated");
  }
  StepOutcome out;
  const int next = NextState(state.id, action);
  const auto r = Reward(state.id, action);
  out.next_state = EnvState{next, state.step + 1};
  out.reward = ValueVector(std::vector<double>(r.begin(), r.end()));
  out.terminal = IsTerminal(next);
  out.truncated = !out.terminal && out.next_state.step >= spec_.max_episode_steps;
  return out;
}

std::optional<int> Environment::DeterministicStart() const {
  const auto& mu = spec_.initial_state_distribution;
  for (int s = 0; s < spec_.state_count; ++s) {
    if (mu[s] == 1.0) return s;
  }
  return std::nullopt;
}

std::shared_ptr<const Environment> Environment::WithOverrides(
    const EnvOverrides& overrides) const {
  MomdpSpec spec = spec_;
  if (overrides.discount) spec.discount = *overrides.discount;
  if (overrides.max_episode_steps) {
    spec.max_episode_steps = *overrides.max_episode_steps;
  }
  return std::make_shared<const Environment>(
      std::move(spec), next_state_, rewards_, terminal_, default_ref_point_,
      objective_names_);
}

const ParetoFront& TrueFront(const Environment& env) {
  std::call_once(env.true_front_once_,
                 [&env] { env.true_front_ = ComputeTrueFront(env); });
  return *env.true_front_;
}

GridEnvSpec ParseGridEnvSpec(const KeyValueText& text) {
  GridEnvSpec spec;
  spec.name = text.Require("name");
  spec.kind = text.Require("kind");
  if (auto v = text.Get("discount")) spec.discount = ParseDouble(*v, "discount");
  if (auto v = text.Get("max_episode_steps")) {
    spec.max_episode_steps =
        static_cast<int>(ParseInt(*v, "max_episode_steps"));
  }
  spec.layout = SplitLines(text.Require("layout"));
  if (auto v = text.Get("treasure_values")) {
    spec.treasure_values = ParseDoubleList(*v, "treasure_values");
  }
  if (auto v = text.Get("deliveries_per_episode")) {
    spec.deliveries_per_episode =
        static_cast<int>(ParseInt(*v, "deliveries_per_episode"));
  }
  if (auto v = text.Get("ref_point")) {
    try {
      spec.ref_point = ValueVector(ParseDoubleList(*v, "ref_point"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(text.source() + ": ref_point: " + e.what());
    }
  }
  return spec;
}

std::shared_ptr<const Environment> BuildDeepSeaTreasure(
    const GridEnvSpec& spec) {
  const Grid g = ParseLayout(spec);
  const auto [start_r, start_c] = FindUnique(g, 'S', spec.name);

  // Treasure cells in column-major order receive the listed values.
  std::vector<double> treasure(g.rows * g.cols, 0.0);
  std::vector<uint8_t> terminal(g.rows * g.cols, 0);
  std::size_t next_value = 0;
  for (int c = 0; c < g.cols; ++c) {
    for (int r = 0; r < g.rows; ++r) {
      const char ch = g.at(r, c);
      if (ch == 'T') {
        if (next_value >= spec.treasure_values.size()) {
          throw ConfigError(spec.name + ": more treasure cells than values");
        }
        treasure[g.index(r, c)] = spec.treasure_values[next_value++];
        terminal[g.index(r, c)] = 1;
      } else if (ch != '.' && ch != '#' && ch != 'S') {
        throw ConfigError(spec.name + ": unknown layout character '" +
                          std::string(1, ch) + "'");
      }
    }
  }
  if (next_value != spec.treasure_values.size()) {
    throw ConfigError(spec.name + ": more treasure values than cells");
  }

  MomdpSpec momdp;
  momdp.name = spec.name;
  momdp.state_count = g.rows * g.cols;
  momdp.action_count = kGridActionCount;
  momdp.objective_count = 2;
  momdp.discount = spec.discount;
  momdp.max_episode_steps = spec.max_episode_steps;
  momdp.initial_state_distribution.assign(momdp.state_count, 0.0);
  momdp.initial_state_distribution[g.index(start_r, start_c)] = 1.0;

  std::vector<int> next(momdp.state_count * kGridActionCount);
  std::vector<double> rewards(next.size() * 2, 0.0);
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      const int s = g.index(r, c);
      for (int a = 0; a < kGridActionCount; ++a) {
        const auto [nr, nc] = Move(g, r, c, a, '#');
        const int s2 = g.index(nr, nc);
        const int sa = s * kGridActionCount + a;
        next[sa] = s2;
        rewards[sa * 2] = treasure[s2];
        rewards[sa * 2 + 1] = -1.0;
      }
    }
  }
  return std::make_shared<const Environment>(
      std::move(momdp), std::move(next), std::move(rewards),
      std::move(terminal), RefPointOrDefault(spec, ValueVector{0.0, -50.0}),
      std::vector<std::string>{"treasure", "time"});
}

int GemMinecartState(int rows, int cols, int row, int col, int cargo,
                     int delivered) {
  return (delivered * 3 + cargo) * (rows * cols) + row * cols + col;
}

std::shared_ptr<const Environment> BuildGemMinecart(const GridEnvSpec& spec) {
  const Grid g = ParseLayout(spec);
  const auto [depot_r, depot_c] = FindUnique(g, 'D', spec.name);
  FindUnique(g, 'A', spec.name);
  FindUnique(g, 'B', spec.name);
  for (const auto& row : g.cells) {
    for (const char ch : row) {
      if (std::string_view("DAB.#").find(ch) == std::string_view::npos) {
        throw ConfigError(spec.name + ": unknown layout character '" +
                          std::string(1, ch) + "'");
      }
    }
  }
  const int quota = spec.deliveries_per_episode;
  if (quota < 1) {
    throw ConfigError(spec.name + ": deliveries_per_episode must be >= 1");
  }
  const int cells = g.rows * g.cols;
  const int terminal_state = quota * 3 * cells;

  MomdpSpec momdp;
  momdp.name = spec.name;
  momdp.state_count = terminal_state + 1;
  momdp.action_count = kGridActionCount;
  momdp.objective_count = 3;
  momdp.discount = spec.discount;
  momdp.max_episode_steps = spec.max_episode_steps;
  momdp.initial_state_distribution.assign(momdp.state_count, 0.0);
  momdp.initial_state_distribution[GemMinecartState(g.rows, g.cols, depot_r,
                                                    depot_c, 0, 0)] = 1.0;

  std::vector<int> next(momdp.state_count * kGridActionCount, terminal_state);
  std::vector<double> rewards(next.size() * 3, 0.0);
  std::vector<uint8_t> terminal(momdp.state_count, 0);
  terminal[terminal_state] = 1;
  for (int delivered = 0; delivered < quota; ++delivered) {
    for (int cargo = 0; cargo < 3; ++cargo) {
      for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
          const int s = GemMinecartState(g.rows, g.cols, r, c, cargo, delivered);
          for (int a = 0; a < kGridActionCount; ++a) {
            const auto [nr, nc] = Move(g, r, c, a, '#');
            const char there = g.at(nr, nc);
            const int sa = s * kGridActionCount + a;
            double* rew = &rewards[sa * 3];
            rew[2] = -1.0;
            int cargo2 = cargo;
            int delivered2 = delivered;
            if (cargo == 0 && (there == 'A' || there == 'B')) {
              cargo2 = there == 'A' ? 1 : 2;
            } else if (cargo != 0 && there == 'D') {
              rew[cargo - 1] = 1.0;
              cargo2 = 0;
              ++delivered2;
            }
            next[sa] = delivered2 == quota
                           ? terminal_state
                           : GemMinecartState(g.rows, g.cols, nr, nc, cargo2,
                                              delivered2);
          }
        }
      }
    }
  }
  return std::make_shared<const Environment>(
      std::move(momdp), std::move(next), std::move(rewards),
      std::move(terminal),
      RefPointOrDefault(spec, ValueVector{-1.0, -1.0, -200.0}),
      std::vector<std::string>{"ore_a", "ore_b", "fuel"});
}

std::shared_ptr<const Environment> BuildGridEnvironment(
    const GridEnvSpec& spec) {
  if (spec.kind == "deep-sea-treasure") return BuildDeepSeaTreasure(spec);
  if (spec.kind == "gem-minecart") return BuildGemMinecart(spec);
  throw ConfigError(spec.name + ": unknown environment kind '" + spec.kind +
                    "'");
}

std::vector<std::string> BuiltinEnvironmentNames() {
  return {"dst", "gem-minecart"};
}

std::string_view BuiltinEnvironmentText(std::string_view name) {
  if (name == "dst") return kDstEnvText;
  if (name == "gem-minecart") return kGemMinecartEnvText;
  throw ConfigError("unknown environment '" + std::string(name) +
                    "' (expected dst or gem-minecart)");
}

std::shared_ptr<const Environment> MakeEnvironment(
    std::string_view name, const EnvOverrides& overrides) {
  const KeyValueText text = KeyValueText::Parse(
      BuiltinEnvironmentText(name), "builtin:" + std::string(name));
  auto env = BuildGridEnvironment(ParseGridEnvSpec(text));
  if (overrides.discount || overrides.max_episode_steps) {
    return env->WithOverrides(overrides);
  }
  return env;
}

std::shared_ptr<const Environment> LoadEnvironment(
    const std::filesystem::path& path, const EnvOverrides& overrides) {
  auto env = BuildGridEnvironment(ParseGridEnvSpec(KeyValueText::Load(path)));
  if (overrides.discount || overrides.max_episode_steps) {
    return env->WithOverrides(overrides);
  }
  return env;
}

}  // namespace morltune
