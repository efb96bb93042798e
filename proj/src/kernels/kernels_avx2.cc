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

// Compiled with -mavx2 (and without -mfma). Only reached through Avx2Table()
// after a CPU check.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "morltune/kernels/kernels.h"

namespace morltune::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

}  // namespace

std::size_t CountCovered(const PointMatrix& front, const PointMatrix& samples) {
  const std::size_t dims = samples.dims();
  const std::size_t n = samples.count();
  const std::size_t blocked = n - n % kLanes;
  std::size_t covered = 0;
  for (std::size_t s = 0; s < blocked; s += kLanes) {
    __m256d hit = _mm256_setzero_pd();
    for (std::size_t p = 0; p < front.count(); ++p) {
      __m256d ge = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
      for (std::size_t j = 0; j < dims; ++j) {
        const __m256d pj = _mm256_set1_pd(front.at(p, j));
        const __m256d sj = _mm256_loadu_pd(samples.column(j) + s);
        ge = _mm256_and_pd(ge, _mm256_cmp_pd(pj, sj, _CMP_GE_OQ));
      }
      hit = _mm256_or_pd(hit, ge);
      if (_mm256_movemask_pd(hit) == 0xF) break;
    }
    covered += static_cast<std::size_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(hit))));
  }
  for (std::size_t s = blocked; s < n; ++s) {
    for (std::size_t p = 0; p < front.count(); ++p) {
      bool ge = true;
      for (std::size_t j = 0; j < dims && ge; ++j) {
        ge = front.at(p, j) >= samples.at(s, j);
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
  const std::size_t dims = weights.dims();
  const std::size_t n = weights.count();
  const std::size_t blocked = n - n % kLanes;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < blocked; k += kLanes) {
    __m256d best = _mm256_set1_pd(neg_inf);
    for (std::size_t p = 0; p < front.count(); ++p) {
      __m256d dot = _mm256_setzero_pd();
      for (std::size_t j = 0; j < dims; ++j) {
        const __m256d term = _mm256_mul_pd(_mm256_set1_pd(front.at(p, j)),
                                           _mm256_loadu_pd(weights.column(j) + k));
        dot = _mm256_add_pd(dot, term);
      }
      best = _mm256_max_pd(dot, best);
    }
    _mm256_storeu_pd(out.data() + k, best);
  }
  for (std::size_t k = blocked; k < n; ++k) {
    double best = neg_inf;
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
  const std::size_t dims = queries.dims();
  const std::size_t n = queries.count();
  const std::size_t blocked = n - n % kLanes;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < blocked; k += kLanes) {
    __m256d best = _mm256_set1_pd(inf);
    for (std::size_t p = 0; p < front.count(); ++p) {
      __m256d d2 = _mm256_setzero_pd();
      for (std::size_t j = 0; j < dims; ++j) {
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(queries.column(j) + k),
                                           _mm256_set1_pd(front.at(p, j)));
        d2 = _mm256_add_pd(d2, _mm256_mul_pd(diff, diff));
      }
      best = _mm256_min_pd(d2, best);
    }
    _mm256_storeu_pd(out.data() + k, best);
  }
  for (std::size_t k = blocked; k < n; ++k) {
    double best = inf;
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

}  // namespace morltune::kernels::avx2
