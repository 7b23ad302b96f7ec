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

#include "choreokit/warp.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "choreokit/error.h"

namespace choreokit {

double SourceTime(double alpha, double accent) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  return alpha + accent / kTwoPi * std::sin(kTwoPi * alpha);
}

WarpSchedule BuildWarp(const WalkPath& path, std::span<const double> beat_times,
                       int inbetween_count, double fps_out, double accent) {
  if (inbetween_count < 1) throw InvalidInput("inbetween count must be >= 1");
  if (!(fps_out > 0.0) || !std::isfinite(fps_out)) {
    throw InvalidInput("output fps must be positive");
  }
  if (!(accent >= 0.0 && accent < 1.0)) {
    throw InvalidInput("accent must lie in [0, 1)");
  }
  if (path.keyframes.size() != beat_times.size()) {
    throw InvalidInput("path has " + std::to_string(path.keyframes.size()) +
                       " keyframes but there are " +
                       std::to_string(beat_times.size()) + " beats");
  }
  if (beat_times.size() < 2) throw InvalidInput("warping needs at least two beats");
  for (std::size_t i = 0; i < beat_times.size(); ++i) {
    if (!std::isfinite(beat_times[i])) {
      throw InvalidInput("beat " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(beat_times[i] > beat_times[i - 1])) {
      throw InvalidInput("beat times are not strictly increasing at beat " +
                         std::to_string(i));
    }
  }

  WarpSchedule schedule;
  schedule.fps_out = fps_out;
  schedule.inbetween_count = inbetween_count;
  const double clip = schedule.clip_length();
  const double step = 1.0 / fps_out;
  std::set<std::array<int, 2>> seen;

  const std::size_t intervals = beat_times.size() - 1;
  for (std::size_t i = 0; i < intervals; ++i) {
    const double start = beat_times[i];
    const double end = beat_times[i + 1];
    const double span = end - start;
    const std::array<int, 2> pair{path.keyframes[i], path.keyframes[i + 1]};
    if (seen.insert(pair).second) schedule.unique_clips.push_back(pair);

    schedule.entries.push_back({start, i, pair, 0.0});
    for (std::size_t k = 1;; ++k) {
      const double offset = static_cast<double>(k) * step;
      const double t = start + offset;
      // Drop frames on or a hair before the next beat.
      if (!(t < end - 1e-9 * std::max(1.0, std::abs(end)))) break;
      const double alpha = offset / span;
      schedule.entries.push_back({t, i, pair, clip * SourceTime(alpha, accent)});
    }
  }
  schedule.entries.push_back(
      {beat_times.back(), intervals - 1,
       {path.keyframes[intervals - 1], path.keyframes[intervals]}, clip});
  return schedule;
}

}  // namespace choreokit
