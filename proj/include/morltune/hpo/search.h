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

// The search loop and the held-out validation phase.

#ifndef MORLTUNE_HPO_SEARCH_H_
#define MORLTUNE_HPO_SEARCH_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "morltune/envs.h"
#include "morltune/hpo/study.h"
#include "morltune/metrics.h"

namespace morltune::hpo {

struct ObjectiveSpec {
  MetricName metric = MetricName::kHypervolume;
  MetricConfig metric_config;
  Aggregation aggregation = Aggregation::kMean;
};

// Metric value oriented so that larger is better: IGD and sparsity flip sign.
double OrientedMetric(MetricName metric, double value);

// Runs fn(0) ... fn(n - 1) on up to `jobs` threads. The first exception (by
// index) is rethrown after all jobs finish.
void ParallelFor(int n, int jobs, const std::function<void(int)>& fn);
int DefaultParallelJobs();

// Trains `config` once per seed and scores each resulting front. A seed
// whose training or scoring fails gets kPenaltyObjective as its value, and
// the whole trial is then failed with the penalty as its objective.
TrialOutcome EvaluateConfig(const Environment& env, const Config& config,
                            const std::vector<uint64_t>& seeds, int64_t budget_steps,
                            const ObjectiveSpec& objective, int max_parallel_jobs = 1);

using TrialEvaluator = std::function<TrialOutcome(const Config&)>;

struct StoppingCriterion {
  std::optional<int64_t> max_trials;
  std::optional<double> max_wallclock_seconds;
};

struct SearchCallbacks {
  // Called after every report, and once more before an error propagates.
  std::function<void(const SearchMemory&)> persist;
  // Checked between trials.
  const std::atomic<bool>* interrupt = nullptr;
};

struct SearchOutcome {
  int64_t trials_run = 0;
  bool interrupted = false;
};

// Injects `baselines` first (invalid ones are recorded as invalid without
// evaluation), then loops suggest -> evaluate -> report until a stopping
// criterion is met. Baselines count towards max_trials.
SearchOutcome RunSearch(Study& study, const TrialEvaluator& evaluate,
                        const StoppingCriterion& stop,
                        const std::vector<Config>& baselines = {},
                        const SearchCallbacks& callbacks = {});

struct SeedCurve {
  uint64_t seed = 0;
  std::vector<int64_t> steps;
  std::vector<MetricSnapshot> snapshots;
  ParetoFront final_front;
};

struct CurvePoint {
  int64_t step = 0;
  MetricName metric = MetricName::kHypervolume;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> per_seed;
};

struct ValidationReport {
  Config config;
  std::vector<uint64_t> seeds;
  std::vector<int64_t> steps;
  std::vector<SeedCurve> per_seed;
  // For each step, one point per metric defined on every seed, in
  // AllMetrics() order.
  std::vector<CurvePoint> curves;

  // The curve points of the last step.
  std::vector<CurvePoint> Final() const;
};

// Mean and normal-approximation 95% interval; zero width for one value.
CurvePoint Summarize(std::vector<double> values);

// Rejects overlapping seed sets before any training, then trains `config`
// on every validation seed with periodic snapshots.
ValidationReport RunValidation(const Environment& env, const Config& config,
                               const std::vector<uint64_t>& validation_seeds,
                               const std::vector<uint64_t>& search_seeds,
                               int64_t budget_steps, const MetricConfig& metric_config,
                               int64_t snapshot_every, int max_parallel_jobs = 1);

}  // namespace morltune::hpo

#endif  // MORLTUNE_HPO_SEARCH_H_
