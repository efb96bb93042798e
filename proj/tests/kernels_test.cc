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

#include "morltune/kernels/kernels.h"

#include <cstring>
#include <random>

#include "gtest/gtest.h"
#include "morltune/metrics.h"

namespace morltune::kernels {
namespace {

PointMatrix RandomMatrix(std::mt19937_64& gen, std::size_t dims,
                         std::size_t count, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  PointMatrix out(dims, count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < dims; ++j) out.at(i, j) = u(gen);
  }
  return out;
}

bool BitEqual(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class KernelEquivalence : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    if (Avx2Table() == nullptr) GTEST_SKIP() << "AVX2 not available";
  }
};

TEST_P(KernelEquivalence, CountCovered) {
  const int dims = GetParam();
  std::mt19937_64 gen(100 + dims);
  for (std::size_t front_size : {0u, 1u, 3u, 17u}) {
    for (std::size_t count : {0u, 1u, 4u, 7u, 129u}) {
      const PointMatrix front = RandomMatrix(gen, dims, front_size, 0.0, 1.0);
      const PointMatrix samples = RandomMatrix(gen, dims, count, 0.0, 1.0);
      EXPECT_EQ(ScalarTable().count_covered(front, samples),
                Avx2Table()->count_covered(front, samples));
    }
  }
  // Exact ties on the boundary count as covered in both variants.
  PointMatrix front(dims, 1);
  PointMatrix samples(dims, 5);
  for (int j = 0; j < dims; ++j) {
    front.at(0, j) = 0.5;
    for (int i = 0; i < 5; ++i) samples.at(i, j) = 0.5;
  }
  EXPECT_EQ(ScalarTable().count_covered(front, samples), 5u);
  EXPECT_EQ(Avx2Table()->count_covered(front, samples), 5u);
}

TEST_P(KernelEquivalence, MaxDotBitIdentical) {
  const int dims = GetParam();
  std::mt19937_64 gen(200 + dims);
  for (std::size_t front_size : {0u, 1u, 5u, 33u}) {
    for (std::size_t count : {1u, 4u, 6u, 257u}) {
      const PointMatrix front = RandomMatrix(gen, dims, front_size, -50.0, 50.0);
      const PointMatrix weights = RandomMatrix(gen, dims, count, 0.0, 1.0);
      std::vector<double> a(count), b(count);
      ScalarTable().max_dot(front, weights, a);
      Avx2Table()->max_dot(front, weights, b);
      EXPECT_TRUE(BitEqual(a, b));
    }
  }
}

TEST_P(KernelEquivalence, MinSquaredDistanceBitIdentical) {
  const int dims = GetParam();
  std::mt19937_64 gen(300 + dims);
  for (std::size_t front_size : {0u, 2u, 9u}) {
    for (std::size_t count : {1u, 3u, 8u, 101u}) {
      const PointMatrix front = RandomMatrix(gen, dims, front_size, -5.0, 5.0);
      const PointMatrix queries = RandomMatrix(gen, dims, count, -5.0, 5.0);
      std::vector<double> a(count), b(count);
      ScalarTable().min_squared_distance(front, queries, a);
      Avx2Table()->min_squared_distance(front, queries, b);
      EXPECT_TRUE(BitEqual(a, b));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, KernelEquivalence, ::testing::Values(2, 3, 4, 5));

TEST(KernelDispatch, MetricsAgreeAcrossIsas) {
  if (Avx2Table() == nullptr) GTEST_SKIP() << "AVX2 not available";
  const ParetoFront front = ParetoFilter(
      std::vector<ValueVector>{{1, 3, 0.5}, {2, 2, 2}, {3, 1, 0.1}, {0, 0, 4}});
  const ParetoFront reference =
      ParetoFilter(std::vector<ValueVector>{{1, 3, 1}, {3, 1, 1}});
  const ValueVector ref{0, 0, 0};

  OverrideActive(&ScalarTable());
  const auto eu_scalar = ExpectedUtilityEstimate(front, 9999, 3);
  const auto hv_scalar = HypervolumeMonteCarlo(front, ref, 9999, 3);
  const double igd_scalar = InvertedGenerationalDistance(front, reference);
  OverrideActive(Avx2Table());
  const auto eu_avx = ExpectedUtilityEstimate(front, 9999, 3);
  const auto hv_avx = HypervolumeMonteCarlo(front, ref, 9999, 3);
  const double igd_avx = InvertedGenerationalDistance(front, reference);
  OverrideActive(nullptr);

  EXPECT_EQ(eu_scalar.value, eu_avx.value);
  EXPECT_EQ(hv_scalar.value, hv_avx.value);
  EXPECT_EQ(igd_scalar, igd_avx);
}

TEST(KernelDispatch, ActiveTableIsKnown) {
  const std::string_view isa = Active().isa;
  EXPECT_TRUE(isa == "scalar" || isa == "avx2");
}

}  // namespace
}  // namespace morltune::kernels
