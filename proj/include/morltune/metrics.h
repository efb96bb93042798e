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

// Scalar quality indicators of a Pareto front: hypervolume, IGD, sparsity
// and expected utility.

#ifndef MORLTUNE_METRICS_H_
#define MORLTUNE_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "morltune/pareto.h"
#include "morltune/rng.h"

namespace morltune {

// A point of the probability simplex: nonnegative weights summing to one.
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit WeightVector(std::vector<double> weights);
  WeightVector(std::initializer_list<double> weights)
      : WeightVector(std::vector<double>(weights)) {}

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  std::span<const double> values() const { return weights_; }

  // sum_i w_i * v_i.
  double Scalarize(std::span<const double> v) const;

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> weights_;
};

// Lebesgue measure of the union of boxes [ref, v] over the points v that
// strictly dominate `ref`; other points contribute nothing. Exact recursive
// slicing for 2 <= m <= 4, UnsupportedError beyond.
double Hypervolume(const ParetoFront& front, const ValueVector& ref);

struct MonteCarloEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

// Uniform sampling of the box [ref, componentwise max of the front]; the
// covered fraction times the box volume. Zero for an empty front or a
// degenerate box.
MonteCarloEstimate HypervolumeMonteCarlo(const ParetoFront& front,
                                         const ValueVector& ref,
                                         int64_t samples, uint64_t seed);

// (1/|Z|) * sqrt(sum_{z in Z} min_{v in F} |z - v|^2). Throws
// std::invalid_argument when either set is empty.
double InvertedGenerationalDistance(const ParetoFront& front,
                                    const ParetoFront& reference);

// Sum over objectives of squared gaps between sorted consecutive values,
// divided by |F| - 1. Zero for fronts with fewer than two points.
double Sparsity(const ParetoFront& front);

// Monte-Carlo mean over Dirichlet(1, ..., 1) weights of the best weighted
// sum in the front. Throws std::invalid_argument for an empty front.
MonteCarloEstimate ExpectedUtilityEstimate(const ParetoFront& front,
                                           int64_t samples, uint64_t seed);
inline double ExpectedUtility(const ParetoFront& front, int64_t samples,
                              uint64_t seed) {
  return ExpectedUtilityEstimate(front, samples, seed).value;
}

// Uniform draw from the m-simplex via normalized exponentials.
std::vector<double> SampleSimplex(int m, Rng& rng);

// Per-environment settings for the four metrics.
struct MetricConfig {
  static constexpr int64_t kDefaultEuSamples = 10000;

  ValueVector ref_point;
  std::optional<ParetoFront> reference_front;
  int64_t eu_samples = kDefaultEuSamples;
  uint64_t eu_seed = 0;
};

struct MetricSnapshot {
  double hv = 0.0;
  std::optional<double> igd;
  double sparsity = 0.0;
  std::optional<double> eu;

  bool operator==(const MetricSnapshot&) const = default;
};

enum class MetricName { kHypervolume, kIgd, kSparsity, kExpectedUtility };

std::string ToString(MetricName metric);
// Accepts "hv", "igd", "sparsity", "eu".
MetricName ParseMetricName(const std::string& name);
const std::vector<MetricName>& AllMetrics();

// All four metrics. IGD is empty without a reference front; an empty front
// gives hv = 0, sparsity = 0 and no eu / igd.
MetricSnapshot ComputeMetrics(const ParetoFront& front,
                              const MetricConfig& config);
// Just one metric, or nullopt when it is undefined for this front.
std::optional<double> ComputeMetric(MetricName metric, const ParetoFront& front,
                                    const MetricConfig& config);
std::optional<double> Get(const MetricSnapshot& snapshot, MetricName metric);

// Flat object {"hv", "igd", "sparsity", "eu"} with nulls for missing values.
nlohmann::json ToJson(const MetricSnapshot& snapshot);

}  // namespace morltune

#endif  // MORLTUNE_METRICS_H_
