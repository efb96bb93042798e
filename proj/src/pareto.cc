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

#include "morltune/pareto.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "morltune/errors.h"

namespace morltune {
namespace {

void CheckSameSize(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionMismatchError("value vectors of dimension " +
                                 std::to_string(a) + " and " +
                                 std::to_string(b) + " are not comparable");
  }
}

}  // namespace

ValueVector::ValueVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("a value vector needs at least 2 objectives");
  }
  for (const double x : values_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("value vector entries must be finite");
    }
  }
}

ValueVector ValueVector::Zeros(int objective_count) {
  return ValueVector(std::vector<double>(objective_count, 0.0));
}

bool Dominates(std::span<const double> a, std::span<const double> b) {
  CheckSameSize(a.size(), b.size());
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly_better = true;
  }
  return strictly_better;
}

bool Dominates(const ValueVector& a, const ValueVector& b) {
  return Dominates(a.values(), b.values());
}

bool ParetoFront::Covers(const ValueVector& v) const {
  for (const auto& p : points_) {
    if (p == v || Dominates(p, v)) return true;
  }
  return false;
}

bool ParetoFront::Insert(const ValueVector& v) {
  if (objective_count_ == 0) {
    objective_count_ = v.size();
  }
  CheckSameSize(objective_count_, v.size());
  if (Covers(v)) return false;
  std::erase_if(points_,
                [&v](const ValueVector& p) { return Dominates(v, p); });
  points_.insert(std::lower_bound(points_.begin(), points_.end(), v), v);
  return true;
}

ParetoFront ParetoFilter(std::span<const ValueVector> points,
                         int objective_count) {
  if (objective_count == 0 && !points.empty()) {
    objective_count = points.front().size();
  }
  for (const auto& p : points) CheckSameSize(objective_count, p.size());

  // A point can only be dominated by a lexicographically larger one, so a
  // descending scan only has to compare against already kept points.
  std::vector<const ValueVector*> order;
  order.reserve(points.size());
  for (const auto& p : points) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const ValueVector* a, const ValueVector* b) { return *b < *a; });

  ParetoFront front(objective_count);
  for (const ValueVector* p : order) {
    bool keep = true;
    for (const auto& kept : front.points_) {
      if (kept == *p || Dominates(kept, *p)) {
        keep = false;
        break;
      }
    }
    if (keep) front.points_.push_back(*p);
  }
  std::reverse(front.points_.begin(), front.points_.end());
  return front;
}

std::pair<ParetoFront, bool> ArchiveInsert(ParetoFront front,
                                           const ValueVector& v) {
  const bool accepted = front.Insert(v);
  return {std::move(front), accepted};
}

nlohmann::json ToJson(const ValueVector& v) {
  return nlohmann::json(std::vector<double>(v.begin(), v.end()));
}

nlohmann::json ToJson(const ParetoFront& front) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : front) out.push_back(ToJson(p));
  return out;
}

ValueVector ValueVectorFromJson(const nlohmann::json& j) {
  return ValueVector(j.get<std::vector<double>>());
}

ParetoFront ParetoFrontFromJson(const nlohmann::json& j, int objective_count) {
  std::vector<ValueVector> points;
  for (const auto& p : j) points.push_back(ValueVectorFromJson(p));
  return ParetoFilter(points, objective_count);
}

}  // namespace morltune
