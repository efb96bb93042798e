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

// Value vectors, Pareto dominance and nondominated sets.
//
// All objectives are maximized. Cost-like objectives (time, fuel) are
// encoded as negative rewards by the environments.

#ifndef MORLTUNE_PARETO_H_
#define MORLTUNE_PARETO_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

namespace morltune {

// Expected discounted return per objective. Holds at least two finite
// entries; the constructor rejects anything else.
class ValueVector {
 public:
  ValueVector() = default;
  explicit ValueVector(std::vector<double> values);
  ValueVector(std::initializer_list<double> values)
      : ValueVector(std::vector<double>(values)) {}

  // Zero vector of the given dimension.
  static ValueVector Zeros(int objective_count);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool operator==(const ValueVector& other) const = default;
  // Lexicographic; the canonical order of stored fronts.
  std::partial_ordering operator<=>(const ValueVector& other) const {
    return values_ <=> other.values_;
  }

 private:
  std::vector<double> values_;
};

// True iff `a` is >= `b` everywhere and > somewhere. Throws
// DimensionMismatchError when the sizes differ.
bool Dominates(const ValueVector& a, const ValueVector& b);
bool Dominates(std::span<const double> a, std::span<const double> b);

// A mutually nondominated set of value vectors, stored once each in
// ascending lexicographic order.
class ParetoFront {
 public:
  // objective_count 0 means "not yet known"; it is fixed by the first insert.
  explicit ParetoFront(int objective_count = 0)
      : objective_count_(objective_count) {}

  int objective_count() const { return objective_count_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<ValueVector>& points() const { return points_; }
  const ValueVector& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  // Incremental archive update. Returns false (and leaves the front alone)
  // when `v` is dominated by or equal to a stored point; otherwise removes
  // the points `v` dominates and inserts it.
  bool Insert(const ValueVector& v);

  // True iff some stored point dominates or equals `v`.
  bool Covers(const ValueVector& v) const;

  bool operator==(const ParetoFront& other) const = default;

 private:
  friend ParetoFront ParetoFilter(std::span<const ValueVector>, int);

  int objective_count_;
  std::vector<ValueVector> points_;
};

// Exactly the nondominated subset of `points`, duplicates collapsed.
// objective_count may be 0 to infer it from the points; passing it lets an
// empty input keep its dimension.
ParetoFront ParetoFilter(std::span<const ValueVector> points,
                         int objective_count = 0);

// Functional form of ParetoFront::Insert.
std::pair<ParetoFront, bool> ArchiveInsert(ParetoFront front,
                                           const ValueVector& v);

// JSON array of arrays in canonical order.
nlohmann::json ToJson(const ValueVector& v);
nlohmann::json ToJson(const ParetoFront& front);
ValueVector ValueVectorFromJson(const nlohmann::json& j);
ParetoFront ParetoFrontFromJson(const nlohmann::json& j,
                                int objective_count = 0);

}  // namespace morltune

#endif  // MORLTUNE_PARETO_H_
