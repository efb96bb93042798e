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

#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "morltune/errors.h"
#include "morltune/solver.h"

namespace morltune::hpo {

double OrientedMetric(MetricName metric, double value) {
  switch (metric) {
    case MetricName::kIgd:
    case MetricName::kSparsity:
      return -value;
    default:
      return value;
  }
}

int DefaultParallelJobs() {
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(int n, int jobs, const std::function<void(int)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](int i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  jobs = std::clamp(jobs, 1, std::max(n, 1));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (int i = next++; i < n; i = next++) run(i);
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

TrialOutcome EvaluateConfig(const Environment& env, const Config& config,
                            const std::vector<uint64_t>& seeds, int64_t budget_steps,
                            const ObjectiveSpec& objective, int max_parallel_jobs) {
  if (seeds.empty()) throw std::invalid_argument("evaluate_config needs at least one seed");
  const solver::SolverHyperparams hp = ToHyperparams(config);
  TrialOutcome out;
  out.per_seed.resize(seeds.size());
  ParallelFor(static_cast<int>(seeds.size()), max_parallel_jobs, [&](int i) {
    SeedResult& r = out.per_seed[i];
    r.seed = seeds[i];
    try {
      const solver::SolverResult result = solver::Train(env, hp, seeds[i], budget_steps, 0);
      r.front = result.pareto_front;
      const auto value = ComputeMetric(objective.metric, *r.front, objective.metric_config);
      if (!value) {
        r.failed = true;
        r.error = ToString(objective.metric) + " is undefined for this front";
      } else {
        r.metric_value = OrientedMetric(objective.metric, *value);
      }
    } catch (const std::exception& e) {
      r.failed = true;
      r.error = e.what();
    }
    if (r.failed) r.metric_value = kPenaltyObjective;
  });
  std::vector<double> values;
  bool any_failed = false;
  for (const auto& r : out.per_seed) {
    values.push_back(r.metric_value);
    any_failed |= r.failed;
  }
  // One failed seed fails the trial; its per-seed values stay on record.
  out.objective = any_failed ? kPenaltyObjective : Aggregate(objective.aggregation, values);
  out.status = any_failed ? TrialStatus::kFailed : TrialStatus::kCompleted;
  return out;
}

SearchOutcome RunSearch(Study& study, const TrialEvaluator& evaluate,
                        const StoppingCriterion& stop, const std::vector<Config>& baselines,
                        const SearchCallbacks& callbacks) {
  if (!stop.max_trials && !stop.max_wallclock_seconds) {
    throw ConfigError("a stopping criterion (max_trials or max_wallclock_seconds) is required");
  }
  if (stop.max_trials && *stop.max_trials < 1) throw ConfigError("max_trials must be >= 1");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  SearchOutcome outcome;
  auto should_stop = [&] {
    if (callbacks.interrupt != nullptr && callbacks.interrupt->load()) {
      outcome.interrupted = true;
      return true;
    }
    if (stop.max_trials && outcome.trials_run >= *stop.max_trials) return true;
    return stop.max_wallclock_seconds && elapsed() >= *stop.max_wallclock_seconds;
  };
  auto run_trial = [&](const Study::Suggestion& s, bool check_validity) {
    const auto trial_start = Clock::now();
    TrialOutcome result;
    if (check_validity && !study.space().Validate(s.config)) {
      result.status = TrialStatus::kInvalid;
    } else {
      result = evaluate(s.config);
    }
    result.wallclock_seconds =
        std::chrono::duration<double>(Clock::now() - trial_start).count();
    study.Report(s.trial_id, std::move(result));
    ++outcome.trials_run;
    if (callbacks.persist) callbacks.persist(study.memory());
  };

  try {
    for (const auto& baseline : baselines) {
      if (should_stop()) return outcome;
      run_trial(study.Inject(baseline), /*check_validity=*/true);
    }
    while (!should_stop()) run_trial(study.Suggest(), /*check_validity=*/false);
  } catch (...) {
    if (callbacks.persist) callbacks.persist(study.memory());
    throw;
  }
  return outcome;
}

CurvePoint Summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize zero values");
  CurvePoint p;
  const double n = static_cast<double>(values.size());
  p.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double half = 0.0;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - p.mean) * (v - p.mean);
    half = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  p.ci_low = p.mean - half;
  p.ci_high = p.mean + half;
  p.per_seed = std::move(values);
  return p;
}

std::vector<CurvePoint> ValidationReport::Final() const {
  std::vector<CurvePoint> out;
  if (steps.empty()) return out;
  for (const auto& p : curves) {
    if (p.step == steps.back()) out.push_back(p);
  }
  return out;
}

ValidationReport RunValidation(const Environment& env, const Config& config,
                               const std::vector<uint64_t>& validation_seeds,
                               const std::vector<uint64_t>& search_seeds,
                               int64_t budget_steps, const MetricConfig& metric_config,
                               int64_t snapshot_every, int max_parallel_jobs) {
  CheckSeedDisjoint(search_seeds, validation_seeds);
  const solver::SolverHyperparams hp = ToHyperparams(config);
  solver::ValidateHyperparams(hp);

  ValidationReport report;
  report.config = config;
  report.seeds = validation_seeds;
  report.per_seed.resize(validation_seeds.size());
  ParallelFor(static_cast<int>(validation_seeds.size()), max_parallel_jobs, [&](int i) {
    const auto result =
        solver::Train(env, hp, validation_seeds[i], budget_steps, snapshot_every);
    SeedCurve& curve = report.per_seed[i];
    curve.seed = validation_seeds[i];
    for (const auto& snap : result.snapshots) {
      curve.steps.push_back(snap.step);
      curve.snapshots.push_back(ComputeMetrics(snap.front, metric_config));
    }
    curve.final_front = result.pareto_front;
  });

  report.steps = report.per_seed.front().steps;
  for (const auto& c : report.per_seed) {
    if (c.steps != report.steps) throw std::logic_error("snapshot steps differ across seeds");
  }
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    for (MetricName metric : AllMetrics()) {
      std::vector<double> values;
      for (const auto& c : report.per_seed) {
        if (const auto v = Get(c.snapshots[k], metric)) values.push_back(*v);
      }
      if (values.size() != report.per_seed.size()) continue;
      CurvePoint p = Summarize(std::move(values));
      p.step = report.steps[k];
      p.metric = metric;
      report.curves.push_back(std::move(p));
    }
  }
  return report;
}

}  // namespace morltune::hpo
