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

// Run configuration and the end-to-end commands behind the command line
// tool: tune (search, validation, analysis), validation of a fixed config,
// sensitivity analysis of a finished run and paired comparison of two runs.

#ifndef MORLTUNE_RUNNER_H_
#define MORLTUNE_RUNNER_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morltune/analysis.h"
#include "morltune/envs.h"
#include "morltune/hpo/search.h"
#include "morltune/kv_text.h"

namespace morltune::runner {

namespace fs = std::filesystem;

struct RunConfig {
  // Builtin environment name or path to an environment file.
  std::string env = "dst";
  std::string optimizer = "random";
  std::string metric = "hv";
  // Defaults to the environment's reference point.
  std::optional<ValueVector> ref_point;
  int64_t eu_samples = MetricConfig::kDefaultEuSamples;
  uint64_t eu_seed = 0;
  hpo::Aggregation aggregation = hpo::Aggregation::kMean;

  std::optional<int64_t> max_trials;
  std::optional<double> max_wallclock_seconds;

  std::vector<uint64_t> search_seeds = {10, 11, 12};
  std::vector<uint64_t> validation_seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int64_t b_search = 30000;
  int64_t b_validation = 100000;
  int64_t snapshot_every = 10000;
  uint64_t optimizer_seed = 0;

  std::string output_dir = "runs";
  std::string run_id = "run";
  int max_parallel_jobs = 0;  // 0: one per core
  uint64_t forest_seed = 0;
  int top_k = 4;

  // Raw "baseline.<param>" values; injected as trial 0 when present.
  std::map<std::string, std::string> baseline;
  // Raw "space.<param>" redefinitions, e.g. "float-log 0.001 1" or
  // "categorical a b c".
  std::map<std::string, std::string> space;

  // Output root: $MORLTUNE_OUT when set, else output_dir.
  fs::path RunDirectory() const;
  int ParallelJobs() const;
};

// Every key is optional; unknown keys and inconsistent values raise
// ConfigError. Seed disjointness is checked here, before anything runs.
RunConfig ParseRunConfig(const KeyValueText& text);
// Loads `path` (may be empty for all defaults) and applies "key=value"
// overrides on top.
RunConfig LoadRunConfig(const std::string& path, const std::vector<std::string>& overrides);
nlohmann::json ToJson(const RunConfig& config);

std::shared_ptr<const Environment> LoadRunEnvironment(const RunConfig& config);
hpo::HyperparameterSpace BuildSpace(const RunConfig& config);
// Reference point from the config (checked against the environment) and
// the environment's exact front as the IGD reference when it is available.
MetricConfig BuildMetricConfig(const RunConfig& config, const Environment& env);
// One "name = value" line per hyperparameter.
hpo::Config ParseHyperparams(const std::map<std::string, std::string>& values,
                             const hpo::HyperparameterSpace& space);
hpo::Config LoadHyperparams(const std::string& path, const hpo::HyperparameterSpace& space);

struct TuneResult {
  fs::path run_dir;
  bool interrupted = false;
  hpo::SearchMemory memory;
  std::optional<hpo::Trial> best;
  std::optional<hpo::ValidationReport> validation;
  std::optional<analysis::ImportanceReport> importance;
};

// Search, validation of the best config and sensitivity analysis. Progress
// goes to `log` when given. An interrupt stops between trials; the memory
// is flushed and the result is marked interrupted.
TuneResult Tune(const RunConfig& config, const std::atomic<bool>* interrupt = nullptr,
                std::ostream* log = nullptr);

struct ValidateResult {
  fs::path run_dir;
  hpo::ValidationReport report;
};

ValidateResult ValidateConfig(const RunConfig& config, const hpo::Config& hyperparams,
                              std::ostream* log = nullptr);

// Reads memory.json from `run_dir`, writes analysis.csv there. The forest
// seed defaults to the one recorded in run.json.
analysis::ImportanceReport Analyze(const fs::path& run_dir,
                                   std::optional<uint64_t> forest_seed = std::nullopt);

struct CompareRow {
  std::string metric;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double mean_difference = 0.0;  // mean over seeds of (a - b)
  int a_greater = 0;
  int paired_seeds = 0;
};

// Paired per-seed comparison of the final validation metrics. Throws
// ConfigError on missing data or mismatched environments, metrics or seeds.
std::vector<CompareRow> Compare(const fs::path& run_a, const fs::path& run_b);
std::string CompareCsv(const std::vector<CompareRow>& rows);
std::string RenderCompare(const std::vector<CompareRow>& rows);

// Summary lines "metric mean [ci_low, ci_high]" of the last validation step.
std::string RenderFinalMetrics(const hpo::ValidationReport& report);

}  // namespace morltune::runner

#endif  // MORLTUNE_RUNNER_H_
