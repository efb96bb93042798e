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

// Data-parallel inner loops of the front metrics.
//
// Every kernel exists as a scalar reference and as an AVX2 variant; the
// public entry points dispatch at runtime on CPU support. The variants are
// required to agree bit for bit: both accumulate each dot product / squared
// distance in objective order with separate multiply and add (no FMA), and
// vectorize only across independent queries.

#ifndef MORLTUNE_KERNELS_KERNELS_H_
#define MORLTUNE_KERNELS_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace morltune::kernels {

// Column-major point set: coordinate j of point i lives at
// data[j * count + i], so one objective of consecutive points is contiguous.
class PointMatrix {
 public:
  PointMatrix() = default;
  PointMatrix(std::size_t dims, std::size_t count)
      : dims_(dims), count_(count), data_(dims * count, 0.0) {}

  std::size_t dims() const { return dims_; }
  std::size_t count() const { return count_; }

  double& at(std::size_t point, std::size_t dim) {
    return data_[dim * count_ + point];
  }
  double at(std::size_t point, std::size_t dim) const {
    return data_[dim * count_ + point];
  }
  const double* column(std::size_t dim) const {
    return data_.data() + dim * count_;
  }

 private:
  std::size_t dims_ = 0;
  std::size_t count_ = 0;
  std::vector<double> data_;
};

// Number of `samples` weakly dominated (>= in every dimension) by at least
// one point of `front`.
using CountCoveredFn = std::size_t (*)(const PointMatrix& front,
                                       const PointMatrix& samples);
// out[k] = max over front points p of sum_j p_j * weights_k,j.
// out[k] is -inf for an empty front.
using MaxDotFn = void (*)(const PointMatrix& front, const PointMatrix& weights,
                          std::span<double> out);
// out[k] = min over front points p of sum_j (queries_k,j - p_j)^2.
// out[k] is +inf for an empty front.
using MinSquaredDistanceFn = void (*)(const PointMatrix& front,
                                      const PointMatrix& queries,
                                      std::span<double> out);

struct KernelTable {
  std::string_view isa;
  CountCoveredFn count_covered;
  MaxDotFn max_dot;
  MinSquaredDistanceFn min_squared_distance;
};

namespace scalar {
std::size_t CountCovered(const PointMatrix& front, const PointMatrix& samples);
void MaxDot(const PointMatrix& front, const PointMatrix& weights,
            std::span<double> out);
void MinSquaredDistance(const PointMatrix& front, const PointMatrix& queries,
                        std::span<double> out);
}  // namespace scalar

// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* Avx2Table();
const KernelTable& ScalarTable();

// The table used by the dispatching entry points below. AVX2 when available,
// unless the environment variable MORLTUNE_SIMD=scalar is set.
const KernelTable& Active();
// Test hook; pass nullptr to return to automatic selection.
void OverrideActive(const KernelTable* table);

inline std::size_t CountCovered(const PointMatrix& front,
                                const PointMatrix& samples) {
  return Active().count_covered(front, samples);
}
inline void MaxDot(const PointMatrix& front, const PointMatrix& weights,
                   std::span<double> out) {
  Active().max_dot(front, weights, out);
}
inline void MinSquaredDistance(const PointMatrix& front,
                               const PointMatrix& queries,
                               std::span<double> out) {
  Active().min_squared_distance(front, queries, out);
}

}  // namespace morltune::kernels

#endif  // MORLTUNE_KERNELS_KERNELS_H_
