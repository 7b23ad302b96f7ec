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

#include "choreokit/dtw.h"

#include "choreokit/error.h"
#include "choreokit/parallel.h"

namespace choreokit {
namespace {

// Computes the upper triangle of f over all (i, j), i <= j, and mirrors it.
template <typename Fn>
DistanceMatrix SymmetricMatrix(std::size_t n, Fn&& f) {
  DistanceMatrix d(n, std::vector<double>(n, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
  }
  ParallelFor(cells.size(), [&](std::size_t k) {
    const auto [i, j] = cells[k];
    d[i][j] = f(i, j);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) d[i][j] = d[j][i];
  }
  return d;
}

}  // namespace

double DtwDistance(const MotionSegment& a, const MotionSegment& b,
                   DistanceDivisor divisor) {
  if (a.poses.empty() || b.poses.empty()) {
    throw InvalidInput("DTW needs nonempty segments");
  }
  return AlignSequences(a.size(), b.size(),
                        [&](std::size_t i, std::size_t j) {
                          return PoseDistance(a.poses[i], b.poses[j], divisor);
                        })
      .normalized();
}

DistanceMatrix PairwiseDtw(const std::vector<MotionSegment>& segments,
                           DistanceDivisor divisor) {
  return SymmetricMatrix(segments.size(), [&](std::size_t i, std::size_t j) {
    return i == j ? 0.0 : DtwDistance(segments[i], segments[j], divisor);
  });
}

DistanceMatrix MirroredDtw(const std::vector<MotionSegment>& segments,
                           const JointPermutation& perm,
                           DistanceDivisor divisor) {
  std::vector<MotionSegment> mirrored;
  mirrored.reserve(segments.size());
  for (const MotionSegment& s : segments) mirrored.push_back(MirrorSegment(s, perm));
  return SymmetricMatrix(segments.size(), [&](std::size_t i, std::size_t j) {
    return DtwDistance(mirrored[i], segments[j], divisor);
  });
}

}  // namespace choreokit
