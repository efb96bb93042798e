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

// Independent reference computations used only by tests. Nothing here calls
// into the library's metric, front or solver code paths.

#ifndef MORLTUNE_TESTS_ORACLES_H_
#define MORLTUNE_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <vector>

namespace morltune::testing {

using Point = std::vector<double>;

inline bool OracleDominates(const Point& a, const Point& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

// O(n^2) all-pairs nondominated subset, deduplicated, sorted ascending.
inline std::vector<Point> AllPairsNondominated(const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (OracleDominates(pts[k], pts[i])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(pts[i]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// 2-D staircase: sort by first objective descending and add the strip each
// point adds above the best second objective seen so far.
inline double StaircaseArea(std::vector<Point> pts, const Point& ref) {
  std::vector<Point> kept;
  for (auto& p : pts) {
    if (p[0] > ref[0] && p[1] > ref[1]) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Point& a, const Point& b) { return a[0] > b[0]; });
  double area = 0.0;
  double top = ref[1];
  for (const auto& p : kept) {
    if (p[1] > top) {
      area += (p[0] - ref[0]) * (p[1] - top);
      top = p[1];
    }
  }
  return area;
}

// Inclusion-exclusion over every nonempty subset: the volume of the union of
// boxes is the alternating sum of the volumes of their intersections.
inline double InclusionExclusionVolume(const std::vector<Point>& pts,
                                       const Point& ref) {
  std::vector<Point> kept;
  for (const auto& p : pts) {
    bool ok = true;
    for (std::size_t j = 0; j < p.size(); ++j) ok = ok && p[j] > ref[j];
    if (ok) kept.push_back(p);
  }
  const std::size_t n = kept.size();
  const std::size_t m = ref.size();
  double total = 0.0;
  for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
    Point corner(m, INFINITY);
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++bits;
      for (std::size_t j = 0; j < m; ++j) corner[j] = std::min(corner[j], kept[i][j]);
    }
    double vol = 1.0;
    for (std::size_t j = 0; j < m; ++j) vol *= corner[j] - ref[j];
    total += (bits % 2 == 1) ? vol : -vol;
  }
  return total;
}

// Random points with coordinates uniform in [lo, hi), via std::mt19937_64.
inline std::vector<Point> RandomPoints(std::mt19937_64& gen, int n, int m,
                                       double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts(n, Point(m));
  for (auto& p : pts) {
    for (auto& x : p) x = u(gen);
  }
  return pts;
}

// Random mutually nondominated points: rows on the positive orthant slice of
// a sphere-like surface, with integer-free coordinates.
inline std::vector<Point> RandomNondominated(std::mt19937_64& gen, int n,
                                             int m) {
  std::vector<Point> out;
  std::gamma_distribution<double> g(1.0, 1.0);
  while (static_cast<int>(out.size()) < n) {
    Point p(m);
    double norm = 0.0;
    for (auto& x : p) {
      x = g(gen);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : p) x = 10.0 * x / norm;
    out.push_back(p);
  }
  return AllPairsNondominated(out);
}

}  // namespace morltune::testing

#endif  // MORLTUNE_TESTS_ORACLES_H_
