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

#include "morltune/hpo/study.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "morltune/errors.h"

namespace morltune::hpo {

std::string ToString(Aggregation agg) {
  switch (agg) {
    case Aggregation::kMean: return "mean";
    case Aggregation::kMedian: return "median";
    case Aggregation::kMin: return "min";
  }
  return "unknown";
}

Aggregation ParseAggregation(const std::string& text) {
  if (text == "mean") return Aggregation::kMean;
  if (text == "median") return Aggregation::kMedian;
  if (text == "min") return Aggregation::kMin;
  throw ConfigError("unknown aggregation '" + text + "' (expected mean, median or min)");
}

double Aggregate(Aggregation agg, std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("cannot aggregate zero values");
  switch (agg) {
    case Aggregation::kMean:
      return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    case Aggregation::kMin:
      return *std::min_element(values.begin(), values.end());
    case Aggregation::kMedian: {
      std::sort(values.begin(), values.end());
      const std::size_t n = values.size();
      return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    }
  }
  return values.front();
}

int64_t SearchMemory::CompletedCount() const {
  return std::count_if(trials.begin(), trials.end(), [](const Trial& t) {
    return t.status == TrialStatus::kCompleted;
  });
}

nlohmann::json ToJson(const RunMetadata& m) {
  nlohmann::json j = {{"env", m.env_name},
                      {"optimizer", m.optimizer},
                      {"optimizer_seed", m.optimizer_seed},
                      {"metric", m.metric},
                      {"eu_samples", m.eu_samples},
                      {"eu_seed", m.eu_seed},
                      {"aggregation", ToString(m.aggregation)},
                      {"search_seeds", m.search_seeds},
                      {"validation_seeds", m.validation_seeds},
                      {"b_search", m.b_search},
                      {"b_validation", m.b_validation},
                      {"snapshot_every", m.snapshot_every}};
  j["ref_point"] = m.ref_point ? ToJson(*m.ref_point) : nlohmann::json(nullptr);
  return j;
}

RunMetadata RunMetadataFromJson(const nlohmann::json& j) {
  RunMetadata m;
  m.env_name = j.at("env").get<std::string>();
  m.optimizer = j.at("optimizer").get<std::string>();
  m.optimizer_seed = j.at("optimizer_seed").get<uint64_t>();
  m.metric = j.at("metric").get<std::string>();
  m.eu_samples = j.at("eu_samples").get<int64_t>();
  m.eu_seed = j.at("eu_seed").get<uint64_t>();
  m.aggregation = ParseAggregation(j.at("aggregation").get<std::string>());
  m.search_seeds = j.at("search_seeds").get<std::vector<uint64_t>>();
  m.validation_seeds = j.at("validation_seeds").get<std::vector<uint64_t>>();
  m.b_search = j.at("b_search").get<int64_t>();
  m.b_validation = j.at("b_validation").get<int64_t>();
  m.snapshot_every = j.at("snapshot_every").get<int64_t>();
  if (!j.at("ref_point").is_null()) m.ref_point = ValueVectorFromJson(j.at("ref_point"));
  return m;
}

nlohmann::json ToJson(const SearchMemory& memory, bool include_fronts) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : memory.trials) {
    nlohmann::json seeds = nlohmann::json::array();
    for (const auto& s : t.per_seed) {
      nlohmann::json e = {{"seed", s.seed},
                          {"metric_value", s.metric_value},
                          {"failed", s.failed},
                          {"error", s.error}};
      if (include_fronts) e["front"] = s.front ? ToJson(*s.front) : nlohmann::json(nullptr);
      seeds.push_back(std::move(e));
    }
    trials.push_back({{"trial_id", t.trial_id},
                      {"config", ToJson(t.config)},
                      {"injected", t.injected},
                      {"status", ToString(t.status)},
                      {"objective", t.objective},
                      {"wallclock_seconds", t.wallclock_seconds},
                      {"per_seed", std::move(seeds)}});
  }
  return {{"space", ToJson(memory.space)},
          {"metadata", ToJson(memory.metadata)},
          {"trials", std::move(trials)}};
}

SearchMemory SearchMemoryFromJson(const nlohmann::json& j) {
  try {
    SearchMemory memory;
    memory.space = SpaceFromJson(j.at("space"));
    memory.metadata = RunMetadataFromJson(j.at("metadata"));
    for (const auto& e : j.at("trials")) {
      Trial t;
      t.trial_id = e.at("trial_id").get<int64_t>();
      t.config = ConfigFromJson(memory.space, e.at("config"));
      t.injected = e.at("injected").get<bool>();
      t.status = ParseTrialStatus(e.at("status").get<std::string>());
      t.objective = e.at("objective").get<double>();
      t.wallclock_seconds = e.at("wallclock_seconds").get<double>();
      for (const auto& s : e.at("per_seed")) {
        SeedResult r;
        r.seed = s.at("seed").get<uint64_t>();
        r.metric_value = s.at("metric_value").get<double>();
        r.failed = s.at("failed").get<bool>();
        r.error = s.at("error").get<std::string>();
        if (s.contains("front") && !s.at("front").is_null()) {
          r.front = ParetoFrontFromJson(s.at("front"));
        }
        t.per_seed.push_back(std::move(r));
      }
      if (t.trial_id != static_cast<int64_t>(memory.trials.size())) {
        throw ConfigError("trial ids in search memory are not contiguous");
      }
      memory.trials.push_back(std::move(t));
    }
    return memory;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed search memory: ") + e.what());
  }
}

void CheckSeedDisjoint(const std::vector<uint64_t>& search_seeds,
                       const std::vector<uint64_t>& validation_seeds) {
  if (search_seeds.empty()) throw ConfigError("search seed set is empty");
  if (validation_seeds.empty()) throw ConfigError("validation seed set is empty");
  const std::set<uint64_t> search(search_seeds.begin(), search_seeds.end());
  for (uint64_t s : validation_seeds) {
    if (search.contains(s)) {
      throw ConfigError("seed " + std::to_string(s) +
                        " is in both the search and validation sets");
    }
  }
}

Study::Study(HyperparameterSpace space, std::unique_ptr<Optimizer> optimizer,
             RunMetadata metadata)
    : optimizer_(std::move(optimizer)) {
  if (!optimizer_) throw std::invalid_argument("study needs an optimizer");
  memory_.space = std::move(space);
  memory_.metadata = std::move(metadata);
  if (memory_.metadata.optimizer.empty()) memory_.metadata.optimizer = optimizer_->name();
}

Study::Suggestion Study::Suggest() {
  for (int attempt = 0; attempt < kMaxSuggestRetries; ++attempt) {
    Config c = optimizer_->Propose();
    if (memory_.space.Validate(c)) {
      const int64_t id = next_id_++;
      Trial t;
      t.trial_id = id;
      t.config = c;
      pending_[id] = std::move(t);
      return {id, std::move(c)};
    }
  }
  throw ConfigError("no valid configuration after " + std::to_string(kMaxSuggestRetries) +
                    " proposals; the search space is over-constrained");
}

Study::Suggestion Study::Inject(Config config) {
  const int64_t id = next_id_++;
  Trial t;
  t.trial_id = id;
  t.config = config;
  t.injected = true;
  pending_[id] = std::move(t);
  return {id, std::move(config)};
}

void Study::Report(int64_t trial_id, TrialOutcome outcome) {
  const auto it = pending_.find(trial_id);
  if (it == pending_.end()) {
    throw std::logic_error(trial_id < next_id_
                               ? "trial " + std::to_string(trial_id) + " was already reported"
                               : "trial " + std::to_string(trial_id) + " was never suggested");
  }
  Trial t = std::move(it->second);
  pending_.erase(it);
  t.per_seed = std::move(outcome.per_seed);
  t.status = outcome.status;
  t.objective = outcome.status == TrialStatus::kInvalid ? kPenaltyObjective : outcome.objective;
  t.wallclock_seconds = outcome.wallclock_seconds;
  // Invalid configs may lie outside the domain the optimizer models.
  if (t.status != TrialStatus::kInvalid) optimizer_->Observe(t.config, t.objective, t.status);
  const auto pos = std::upper_bound(
      memory_.trials.begin(), memory_.trials.end(), t.trial_id,
      [](int64_t id, const Trial& other) { return id < other.trial_id; });
  memory_.trials.insert(pos, std::move(t));
}

const Trial& Study::BestTrial() const {
  const Trial* best = nullptr;
  for (const auto& t : memory_.trials) {
    if (t.status != TrialStatus::kCompleted) continue;
    if (best == nullptr || t.objective > best->objective) best = &t;
  }
  if (best == nullptr) throw std::logic_error("no completed trials");
  return *best;
}

}  // namespace morltune::hpo
