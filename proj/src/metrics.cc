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

#include "morltune/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "morltune/errors.h"
#include "morltune/kernels/kernels.h"

namespace morltune {
namespace {

using Point = std::vector<double>;

constexpr int kMaxExactDimensions = 4;
constexpr int64_t kSampleBatch = 4096;

void CheckDims(int a, int b) {
  if (a != b) {
    throw DimensionMismatchError("front has " + std::to_string(a) +
                                 " objectives but the other operand has " +
                                 std::to_string(b));
  }
}

// Points strictly dominating `ref`, shifted so that ref is the origin.
std::vector<Point> ShiftedPositivePoints(const ParetoFront& front,
                                         const ValueVector& ref) {
  std::vector<Point> out;
  for (const auto& v : front) {
    Point q(v.size());
    bool positive = true;
    for (int j = 0; j < v.size(); ++j) {
      q[j] = v[j] - ref[j];
      if (!(q[j] > 0.0)) positive = false;
    }
    if (positive) out.push_back(std::move(q));
  }
  return out;
}

double BoxVolume(const Point& p) {
  double vol = 1.0;
  for (const double x : p) vol *= x;
  return vol;
}

// Staircase area of positive 2-D points relative to the origin.
double Sweep2d(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a[0] > b[0]; });
  double area = 0.0;
  double covered_y = 0.0;
  for (const auto& p : pts) {
    if (p[1] > covered_y) {
      area += p[0] * (p[1] - covered_y);
      covered_y = p[1];
    }
  }
  return area;
}

bool WeaklyDominates(const Point& a, const Point& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
  }
  return true;
}

std::vector<Point> Nondominated(std::vector<Point> pts) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t k = 0; k < pts.size() && !dominated; ++k) {
      if (k == i) continue;
      // Equal points: keep only the first occurrence.
      if (WeaklyDominates(pts[k], pts[i]) && (pts[k] != pts[i] || k < i)) {
        dominated = true;
      }
    }
    if (!dominated) out.push_back(pts[i]);
  }
  return out;
}

// WFG: the volume is the sum of exclusive contributions, each computed as
// the point's box minus the volume of the remaining points clipped to it.
double Wfg(std::vector<Point> pts) {
  if (pts.empty()) return 0.0;
  const std::size_t m = pts.front().size();
  if (m == 2) return Sweep2d(std::move(pts));
  if (pts.size() == 1) return BoxVolume(pts.front());
  std::sort(pts.begin(), pts.end(), [m](const Point& a, const Point& b) {
    return a[m - 1] > b[m - 1];
  });
  double total = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::vector<Point> limited;
    limited.reserve(pts.size() - k - 1);
    for (std::size_t i = k + 1; i < pts.size(); ++i) {
      Point q(m);
      for (std::size_t j = 0; j < m; ++j) q[j] = std::min(pts[k][j], pts[i][j]);
      limited.push_back(std::move(q));
    }
    total += BoxVolume(pts[k]) - Wfg(Nondominated(std::move(limited)));
  }
  return total;
}

kernels::PointMatrix ToMatrix(const std::vector<Point>& pts, std::size_t dims) {
  kernels::PointMatrix out(dims, pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < dims; ++j) out.at(i, j) = pts[i][j];
  }
  return out;
}

kernels::PointMatrix ToMatrix(const ParetoFront& front) {
  kernels::PointMatrix out(front.objective_count(), front.size());
  for (std::size_t i = 0; i < front.size(); ++i) {
    for (int j = 0; j < front.objective_count(); ++j) out.at(i, j) = front[i][j];
  }
  return out;
}

}  // namespace

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  double sum = 0.0;
  for (const double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("weights must sum to 1");
  }
}

double WeightVector::Scalarize(std::span<const double> v) const {
  CheckDims(static_cast<int>(v.size()), size());
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += weights_[j] * v[j];
  return s;
}

double Hypervolume(const ParetoFront& front, const ValueVector& ref) {
  if (front.empty()) return 0.0;
  CheckDims(front.objective_count(), ref.size());
  if (ref.size() > kMaxExactDimensions) {
    throw UnsupportedError("exact hypervolume supports at most " +
                           std::to_string(kMaxExactDimensions) +
                           " objectives");
  }
  return Wfg(ShiftedPositivePoints(front, ref));
}

MonteCarloEstimate HypervolumeMonteCarlo(const ParetoFront& front,
                                         const ValueVector& ref,
                                         int64_t samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (front.empty()) return {};
  CheckDims(front.objective_count(), ref.size());
  const std::vector<Point> pts = ShiftedPositivePoints(front, ref);
  if (pts.empty()) return {};
  const std::size_t m = ref.size();
  Point upper(m, 0.0);
  for (const auto& p : pts) {
    for (std::size_t j = 0; j < m; ++j) upper[j] = std::max(upper[j], p[j]);
  }
  const double volume = BoxVolume(upper);

  const kernels::PointMatrix front_matrix = ToMatrix(pts, m);
  Rng rng(seed);
  int64_t covered = 0;
  for (int64_t done = 0; done < samples; done += kSampleBatch) {
    const auto batch =
        static_cast<std::size_t>(std::min(kSampleBatch, samples - done));
    kernels::PointMatrix batch_samples(m, batch);
    for (std::size_t i = 0; i < batch; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        batch_samples.at(i, j) = rng.Uniform() * upper[j];
      }
    }
    covered += static_cast<int64_t>(
        kernels::CountCovered(front_matrix, batch_samples));
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(covered) / n;
  return {p * volume, volume * std::sqrt(p * (1.0 - p) / n)};
}

double InvertedGenerationalDistance(const ParetoFront& front,
                                    const ParetoFront& reference) {
  if (reference.empty()) {
    throw std::invalid_argument("IGD needs a nonempty reference front");
  }
  if (front.empty()) {
    throw std::invalid_argument("IGD is undefined for an empty front");
  }
  CheckDims(front.objective_count(), reference.objective_count());
  const kernels::PointMatrix found = ToMatrix(front);
  const kernels::PointMatrix queries = ToMatrix(reference);
  std::vector<double> d2(reference.size());
  kernels::MinSquaredDistance(found, queries, d2);
  const double sum = std::accumulate(d2.begin(), d2.end(), 0.0);
  return std::sqrt(sum) / static_cast<double>(reference.size());
}

double Sparsity(const ParetoFront& front) {
  const std::size_t n = front.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  std::vector<double> column(n);
  for (int j = 0; j < front.objective_count(); ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = front[i][j];
    std::sort(column.begin(), column.end());
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double gap = column[i] - column[i + 1];
      total += gap * gap;
    }
  }
  return total / static_cast<double>(n - 1);
}

std::vector<double> SampleSimplex(int m, Rng& rng) {
  std::vector<double> w(m);
  double sum = 0.0;
  for (auto& x : w) {
    x = rng.Exponential();
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

MonteCarloEstimate ExpectedUtilityEstimate(const ParetoFront& front,
                                           int64_t samples, uint64_t seed) {
  if (front.empty()) {
    throw std::invalid_argument("expected utility is undefined for an empty front");
  }
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const int m = front.objective_count();
  const kernels::PointMatrix points = ToMatrix(front);
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> best;
  for (int64_t done = 0; done < samples; done += kSampleBatch) {
    const auto batch =
        static_cast<std::size_t>(std::min(kSampleBatch, samples - done));
    kernels::PointMatrix weights(m, batch);
    for (std::size_t i = 0; i < batch; ++i) {
      const std::vector<double> w = SampleSimplex(m, rng);
      for (int j = 0; j < m; ++j) weights.at(i, j) = w[j];
    }
    best.resize(batch);
    kernels::MaxDot(points, weights, best);
    for (const double u : best) {
      sum += u;
      sum_sq += u * u;
    }
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1))
                           : 0.0;
  return {mean, std::sqrt(var / n)};
}

std::string ToString(MetricName metric) {
  switch (metric) {
    case MetricName::kHypervolume:
      return "hv";
    case MetricName::kIgd:
      return "igd";
    case MetricName::kSparsity:
      return "sparsity";
    case MetricName::kExpectedUtility:
      return "eu";
  }
  return "unknown";
}

MetricName ParseMetricName(const std::string& name) {
  for (const MetricName m : AllMetrics()) {
    if (ToString(m) == name) return m;
  }
  throw ConfigError("unknown metric '" + name +
                    "' (expected hv, igd, sparsity or eu)");
}

const std::vector<MetricName>& AllMetrics() {
  static const std::vector<MetricName> kAll = {
      MetricName::kHypervolume, MetricName::kIgd, MetricName::kSparsity,
      MetricName::kExpectedUtility};
  return kAll;
}

std::optional<double> ComputeMetric(MetricName metric, const ParetoFront& front,
                                    const MetricConfig& config) {
  switch (metric) {
    case MetricName::kHypervolume:
      return Hypervolume(front, config.ref_point);
    case MetricName::kSparsity:
      return Sparsity(front);
    case MetricName::kIgd:
      if (front.empty() || !config.reference_front) return std::nullopt;
      return InvertedGenerationalDistance(front, *config.reference_front);
    case MetricName::kExpectedUtility:
      if (front.empty()) return std::nullopt;
      return ExpectedUtility(front, config.eu_samples, config.eu_seed);
  }
  return std::nullopt;
}

MetricSnapshot ComputeMetrics(const ParetoFront& front,
                              const MetricConfig& config) {
  MetricSnapshot out;
  out.hv = *ComputeMetric(MetricName::kHypervolume, front, config);
  out.igd = ComputeMetric(MetricName::kIgd, front, config);
  out.sparsity = *ComputeMetric(MetricName::kSparsity, front, config);
  out.eu = ComputeMetric(MetricName::kExpectedUtility, front, config);
  return out;
}

std::optional<double> Get(const MetricSnapshot& snapshot, MetricName metric) {
  switch (metric) {
    case MetricName::kHypervolume:
      return snapshot.hv;
    case MetricName::kIgd:
      return snapshot.igd;
    case MetricName::kSparsity:
      return snapshot.sparsity;
    case MetricName::kExpectedUtility:
      return snapshot.eu;
  }
  return std::nullopt;
}

nlohmann::json ToJson(const MetricSnapshot& snapshot) {
  nlohmann::json j;
  for (const MetricName m : AllMetrics()) {
    const auto v = Get(snapshot, m);
    j[ToString(m)] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  }
  return j;
}

}  // namespace morltune
