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

// Trials, the search memory and the suggest / report / best bookkeeping.

#ifndef MORLTUNE_HPO_STUDY_H_
#define MORLTUNE_HPO_STUDY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "morltune/hpo/optimizers.h"
#include "morltune/hpo/space.h"
#include "morltune/pareto.h"

namespace morltune::hpo {

// Objective recorded for failed and invalid trials; below any metric value.
inline constexpr double kPenaltyObjective = -1e9;

enum class Aggregation { kMean, kMedian, kMin };
std::string ToString(Aggregation agg);
Aggregation ParseAggregation(const std::string& text);
// Throws std::invalid_argument on an empty input.
double Aggregate(Aggregation agg, std::vector<double> values);

struct SeedResult {
  uint64_t seed = 0;
  std::optional<ParetoFront> front;
  // Signed so that larger is better; kPenaltyObjective on failure.
  double metric_value = kPenaltyObjective;
  bool failed = false;
  std::string error;
};

struct TrialOutcome {
  std::vector<SeedResult> per_seed;
  double objective = kPenaltyObjective;
  TrialStatus status = TrialStatus::kFailed;
  double wallclock_seconds = 0.0;
};

struct Trial {
  int64_t trial_id = 0;
  Config config;
  bool injected = false;
  std::vector<SeedResult> per_seed;
  double objective = kPenaltyObjective;
  TrialStatus status = TrialStatus::kFailed;
  double wallclock_seconds = 0.0;
};

struct RunMetadata {
  std::string env_name;
  std::string optimizer;
  uint64_t optimizer_seed = 0;
  std::string metric = "hv";
  std::optional<ValueVector> ref_point;
  int64_t eu_samples = 10000;
  uint64_t eu_seed = 0;
  Aggregation aggregation = Aggregation::kMean;
  std::vector<uint64_t> search_seeds;
  std::vector<uint64_t> validation_seeds;
  int64_t b_search = 0;
  int64_t b_validation = 0;
  int64_t snapshot_every = 0;
};

struct SearchMemory {
  HyperparameterSpace space;
  RunMetadata metadata;
  std::vector<Trial> trials;

  int64_t CompletedCount() const;
};

nlohmann::json ToJson(const RunMetadata& metadata);
RunMetadata RunMetadataFromJson(const nlohmann::json& j);
// Fronts are included unless `include_fronts` is false.
nlohmann::json ToJson(const SearchMemory& memory, bool include_fronts = true);
SearchMemory SearchMemoryFromJson(const nlohmann::json& j);

// Throws ConfigError unless both sets are nonempty and disjoint.
void CheckSeedDisjoint(const std::vector<uint64_t>& search_seeds,
                       const std::vector<uint64_t>& validation_seeds);

class Study {
 public:
  static constexpr int kMaxSuggestRetries = 10000;

  struct Suggestion {
    int64_t trial_id;
    Config config;
  };

  Study(HyperparameterSpace space, std::unique_ptr<Optimizer> optimizer,
        RunMetadata metadata = {});

  // A valid config from the optimizer; ConfigError after too many invalid
  // proposals.
  Suggestion Suggest();
  // Registers an explicit config (e.g. a baseline) as the next trial. It is
  // not required to be valid.
  Suggestion Inject(Config config);
  // Records the outcome of a pending trial. Throws std::logic_error for
  // unknown or already reported ids.
  void Report(int64_t trial_id, TrialOutcome outcome);

  // Best completed trial: maximal objective, earliest on ties. Throws
  // std::logic_error when nothing has completed.
  const Trial& BestTrial() const;
  Config Best() const { return BestTrial().config; }

  const SearchMemory& memory() const { return memory_; }
  const HyperparameterSpace& space() const { return memory_.space; }
  const Optimizer& optimizer() const { return *optimizer_; }

 private:
  std::unique_ptr<Optimizer> optimizer_;
  SearchMemory memory_;
  std::map<int64_t, Trial> pending_;
  int64_t next_id_ = 0;
};

}  // namespace morltune::hpo

#endif  // MORLTUNE_HPO_STUDY_H_
