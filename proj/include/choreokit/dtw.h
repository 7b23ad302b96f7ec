// Copyright 2026 The choreokit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "choreokit/pose.h"
#include "choreokit/segmentation.h"

namespace choreokit {

// Cost of the optimal warping path and how many cells it visits.
struct WarpPathCost {
  double total = 0.0;
  std::size_t length = 0;

  double normalized() const {
    return length == 0 ? 0.0 : total / static_cast<double>(length);
  }
};

// Classic DTW over an n x m grid with steps (1,0), (0,1), (1,1) from (0,0) to
// (n-1, m-1). Paths are compared by total cost, then by length (shorter
// wins). `cost(i, j)` must be nonnegative.
template <typename CostFn>
WarpPathCost AlignSequences(std::size_t n, std::size_t m, CostFn&& cost) {
  if (n == 0 || m == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<WarpPathCost> prev(m, {kInf, 0}), curr(m, {kInf, 0});
  auto better = [](const WarpPathCost& a, const WarpPathCost& b) {
    return a.total < b.total || (a.total == b.total && a.length < b.length);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      WarpPathCost best;
      if (i == 0 && j == 0) {
        best = {0.0, 0};
      } else {
        best = {kInf, 0};
        if (i > 0 && better(prev[j], best)) best = prev[j];
        if (j > 0 && better(curr[j - 1], best)) best = curr[j - 1];
        if (i > 0 && j > 0 && better(prev[j - 1], best)) best = prev[j - 1];
      }
      curr[j] = {best.total + cost(i, j), best.length + 1};
    }
    std::swap(prev, curr);
  }
  return prev[m - 1];
}

// Path-length-normalized DTW with PoseDistance as the local cost.
// Throws InvalidInput if either segment is empty.
double DtwDistance(const MotionSegment& a, const MotionSegment& b,
                   DistanceDivisor divisor = DistanceDivisor::kAllJoints);

// Symmetric matrix of DtwDistance over all segment pairs.
using DistanceMatrix = std::vector<std::vector<double>>;
DistanceMatrix PairwiseDtw(const std::vector<MotionSegment>& segments,
                           DistanceDivisor divisor = DistanceDivisor::kAllJoints);

// Entry (i, j) is DtwDistance(mirror(segments[i]), segments[j]).
DistanceMatrix MirroredDtw(const std::vector<MotionSegment>& segments,
                           const JointPermutation& perm,
                           DistanceDivisor divisor = DistanceDivisor::kAllJoints);

}  // namespace choreokit
