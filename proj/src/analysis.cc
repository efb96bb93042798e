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

#include "morltune/analysis.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "morltune/errors.h"
#include "morltune/rng.h"

namespace morltune::analysis {
namespace {

uint64_t RowHash(std::span<const double> row, double label) {
  uint64_t h = MixSeed({std::bit_cast<uint64_t>(label)});
  for (double x : row) h = MixSeed({h, std::bit_cast<uint64_t>(x)});
  return h;
}

struct Split {
  int feature = -1;
  double gain = 0.0;
  double threshold = 0.0;
};

class ForestBuilder {
 public:
  ForestBuilder(const std::vector<std::vector<double>>& rows, const std::vector<double>& labels,
                const ForestOptions& options, std::vector<double>& importance)
      : rows_(rows), labels_(labels), options_(options), importance_(importance) {}

  void Grow(std::vector<int> sample, int depth, Rng& rng) {
    const int n = static_cast<int>(sample.size());
    if (depth >= options_.max_depth || n < 2 * options_.min_leaf) return;
    const Split split = BestSplit(sample, rng);
    if (split.feature < 0) return;
    importance_[split.feature] += split.gain;
    std::vector<int> left, right;
    for (int i : sample) (rows_[i][split.feature] <= split.threshold ? left : right).push_back(i);
    Grow(std::move(left), depth + 1, rng);
    Grow(std::move(right), depth + 1, rng);
  }

 private:
  Split BestSplit(const std::vector<int>& sample, Rng& rng) const {
    const int p = static_cast<int>(rows_.front().size());
    const int tries = (p + 2) / 3;
    std::vector<int> features(p);
    std::iota(features.begin(), features.end(), 0);
    for (int k = 0; k < tries; ++k) {
      std::swap(features[k], features[k + rng.UniformInt(p - k)]);
    }

    const int n = static_cast<int>(sample.size());
    double total = 0.0, total_sq = 0.0;
    for (int i : sample) {
      total += labels_[i];
      total_sq += labels_[i] * labels_[i];
    }
    const double parent_sse = total_sq - total * total / n;

    Split best;
    std::vector<int> order(sample);
    for (int k = 0; k < tries; ++k) {
      const int f = features[k];
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return rows_[a][f] < rows_[b][f]; });
      double left = 0.0, left_sq = 0.0;
      for (int i = 1; i < n; ++i) {
        const double y = labels_[order[i - 1]];
        left += y;
        left_sq += y * y;
        if (i < options_.min_leaf || n - i < options_.min_leaf) continue;
        const double lo = rows_[order[i - 1]][f], hi = rows_[order[i]][f];
        if (!(lo < hi)) continue;
        const double right = total - left, right_sq = total_sq - left_sq;
        const double sse = (left_sq - left * left / i) + (right_sq - right * right / (n - i));
        const double gain = parent_sse - sse;
        if (gain > best.gain) best = {f, gain, 0.5 * (lo + hi)};
      }
    }
    return best;
  }

  const std::vector<std::vector<double>>& rows_;
  const std::vector<double>& labels_;
  const ForestOptions& options_;
  std::vector<double>& importance_;
};

std::string FormatNumber(double v) { return hpo::FormatValue(v); }

}  // namespace

AnalysisDataset BuildDataset(const hpo::SearchMemory& memory) {
  return BuildDataset(memory.space, memory.trials);
}

AnalysisDataset BuildDataset(const hpo::HyperparameterSpace& space,
                             std::span<const hpo::Trial> trials) {
  AnalysisDataset data;
  const auto& params = space.params();
  for (int j = 0; j < space.size(); ++j) {
    const auto& p = params[j];
    data.parameters.push_back(p.name);
    if (p.kind == hpo::ParamKind::kCategorical) {
      for (const auto& choice : p.choices) {
        data.feature_names.push_back(p.name + "=" + choice);
        data.feature_parameter.push_back(j);
      }
    } else {
      data.feature_names.push_back(p.name);
      data.feature_parameter.push_back(j);
    }
  }
  data.parameter_columns.resize(params.size());
  for (const auto& t : trials) {
    if (t.status != hpo::TrialStatus::kCompleted) continue;
    const std::vector<double> u = space.Normalize(t.config);
    std::vector<double> row;
    for (std::size_t j = 0; j < params.size(); ++j) {
      data.parameter_columns[j].push_back(u[j]);
      const auto& p = params[j];
      if (p.kind == hpo::ParamKind::kCategorical) {
        const auto& chosen = std::get<std::string>(t.config.at(p.name));
        for (const auto& choice : p.choices) row.push_back(choice == chosen ? 1.0 : 0.0);
      } else {
        row.push_back(u[j]);
      }
    }
    data.rows.push_back(std::move(row));
    data.labels.push_back(t.objective);
    data.trial_ids.push_back(t.trial_id);
  }
  if (data.row_count() < 2) {
    throw ConfigError("sensitivity analysis needs at least 2 completed trials, found " +
                      std::to_string(data.row_count()));
  }
  return data;
}

std::optional<double> Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> Correlation(const AnalysisDataset& data, const std::string& parameter) {
  const auto it = std::find(data.parameters.begin(), data.parameters.end(), parameter);
  if (it == data.parameters.end()) throw ConfigError("unknown parameter '" + parameter + "'");
  return Pearson(data.parameter_columns[it - data.parameters.begin()], data.labels);
}

std::vector<double> FeatureImportances(const AnalysisDataset& data, uint64_t forest_seed,
                                       const ForestOptions& options) {
  const int n = data.row_count();
  const std::size_t p = data.feature_names.size();
  if (n < 1 || p == 0) return {};
  if (options.trees < 1 || options.max_depth < 1 || options.min_leaf < 1) {
    throw ConfigError("invalid forest options");
  }

  // Content-derived row order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<uint64_t> hashes(n);
  for (int i = 0; i < n; ++i) hashes[i] = RowHash(data.rows[i], data.labels[i]);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (hashes[a] != hashes[b]) return hashes[a] < hashes[b];
    if (data.rows[a] != data.rows[b]) return data.rows[a] < data.rows[b];
    return data.labels[a] < data.labels[b];
  });
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  for (int i : order) {
    rows.push_back(data.rows[i]);
    labels.push_back(data.labels[i]);
  }

  std::vector<double> importance(p, 0.0);
  ForestBuilder builder(rows, labels, options, importance);
  for (int t = 0; t < options.trees; ++t) {
    Rng rng(MixSeed({forest_seed, static_cast<uint64_t>(t)}));
    std::vector<int> sample(n);
    for (auto& s : sample) s = static_cast<int>(rng.UniformInt(n));
    builder.Grow(std::move(sample), 0, rng);
  }
  const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
  if (total > 0.0) {
    for (auto& v : importance) v /= total;
    return importance;
  }
  // No split ever helped: spread the mass evenly over parameters, then over
  // each parameter's one-hot columns.
  std::vector<int> columns(data.parameters.size(), 0);
  for (int f : data.feature_parameter) ++columns[f];
  for (std::size_t f = 0; f < p; ++f) {
    importance[f] = 1.0 / (static_cast<double>(data.parameters.size()) *
                           columns[data.feature_parameter[f]]);
  }
  return importance;
}

ImportanceReport RfImportance(const AnalysisDataset& data, uint64_t forest_seed,
                              const ForestOptions& options) {
  if (data.row_count() < ForestOptions::kMinRows) {
    throw ConfigError("importance analysis needs at least " +
                      std::to_string(ForestOptions::kMinRows) + " completed trials, found " +
                      std::to_string(data.row_count()));
  }
  const std::vector<double> features = FeatureImportances(data, forest_seed, options);
  ImportanceReport report;
  for (std::size_t j = 0; j < data.parameters.size(); ++j) {
    ImportanceEntry e{data.parameters[j], 0.0, Pearson(data.parameter_columns[j], data.labels)};
    for (std::size_t f = 0; f < features.size(); ++f) {
      if (data.feature_parameter[f] == static_cast<int>(j)) e.importance += features[f];
    }
    report.entries.push_back(std::move(e));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const auto& a, const auto& b) { return a.importance > b.importance; });
  return report;
}

std::string ToCsv(const ImportanceReport& report) {
  std::string out = "parameter,importance,correlation\n";
  for (const auto& e : report.entries) {
    out += e.parameter + "," + FormatNumber(e.importance) + "," +
           (e.correlation ? FormatNumber(*e.correlation) : "") + "\n";
  }
  return out;
}

std::string RenderTable(const ImportanceReport& report, int top_k) {
  const std::size_t rows = std::min<std::size_t>(std::max(top_k, 0), report.entries.size());
  std::size_t width = std::string("parameter").size();
  for (std::size_t i = 0; i < rows; ++i) width = std::max(width, report.entries[i].parameter.size());
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s  %10s  %11s\n", static_cast<int>(width), "parameter",
                "importance", "correlation");
  out << line;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& e = report.entries[i];
    char corr[32] = "n/a";
    if (e.correlation) std::snprintf(corr, sizeof(corr), "%.3f", *e.correlation);
    std::snprintf(line, sizeof(line), "%-*s  %10.3f  %11s\n", static_cast<int>(width),
                  e.parameter.c_str(), e.importance, corr);
    out << line;
  }
  return out.str();
}

}  // namespace morltune::analysis
