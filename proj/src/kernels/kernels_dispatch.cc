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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "morltune/kernels/kernels.h"

namespace morltune::kernels {

#if defined(MORLTUNE_HAVE_AVX2)
namespace avx2 {
std::size_t CountCovered(const PointMatrix& front, const PointMatrix& samples);
void MaxDot(const PointMatrix& front, const PointMatrix& weights,
            std::span<double> out);
void MinSquaredDistance(const PointMatrix& front, const PointMatrix& queries,
                        std::span<double> out);
}  // namespace avx2
#endif

namespace {

constexpr KernelTable kScalar{"scalar", &scalar::CountCovered, &scalar::MaxDot,
                              &scalar::MinSquaredDistance};
#if defined(MORLTUNE_HAVE_AVX2)
constexpr KernelTable kAvx2{"avx2", &avx2::CountCovered, &avx2::MaxDot,
                            &avx2::MinSquaredDistance};
#endif

std::atomic<const KernelTable*> g_override{nullptr};

const KernelTable& Detect() {
  const char* forced = std::getenv("MORLTUNE_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalar;
  if (const KernelTable* avx2 = Avx2Table()) return *avx2;
  return kScalar;
}

}  // namespace

const KernelTable& ScalarTable() { return kScalar; }

const KernelTable* Avx2Table() {
#if defined(MORLTUNE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& Active() {
  if (const KernelTable* t = g_override.load(std::memory_order_acquire)) {
    return *t;
  }
  static const KernelTable& detected = Detect();
  return detected;
}

void OverrideActive(const KernelTable* table) {
  g_override.store(table, std::memory_order_release);
}

}  // namespace morltune::kernels
