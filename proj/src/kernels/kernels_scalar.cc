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

#include <algorithm>
#include <cassert>
#include <limits>

#include "morltune/kernels/kernels.h"

namespace morltune::kernels::scalar {

std::size_t CountCovered(const PointMatrix& front, const PointMatrix& samples) {
  assert(front.count() == 0 || front.dims() == samples.dims());
  const std::size_t dims = samples.dims();
  std::size_t covered = 0;
  for (std::size_t s = 0; s < samples.count(); ++s) {
    for (std::size_t p = 0; p < front.count(); ++p) {
      bool ge = true;
      for (std::size_t j = 0; j < dims; ++j) {
        if (!(front.at(p, j) >= samples.at(s, j))) {
          ge = false;
          break;
        }
      }
      if (ge) {
        ++covered;
        break;
      }
    }
  }
  return covered;
}

void MaxDot(const PointMatrix& front, const PointMatrix& weights,
            std::span<double> out) {
  assert(out.size() == weights.count());
  const std::size_t dims = weights.dims();
  for (std::size_t k = 0; k < weights.count(); ++k) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < front.count(); ++p) {
      double dot = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double term = front.at(p, j) * weights.at(k, j);
        dot = dot + term;
      }
      best = std::max(best, dot);
    }
    out[k] = best;
  }
}

void MinSquaredDistance(const PointMatrix& front, const PointMatrix& queries,
                        std::span<double> out) {
  assert(out.size() == queries.count());
  const std::size_t dims = queries.dims();
  for (std::size_t k = 0; k < queries.count(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < front.count(); ++p) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double diff = queries.at(k, j) - front.at(p, j);
        const double sq = diff * diff;
        d2 = d2 + sq;
      }
      best = std::min(best, d2);
    }
    out[k] = best;
  }
}

}  // namespace morltune::kernels::scalar
