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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "choreokit/solver.h"

namespace choreokit {

inline constexpr int kDefaultInbetweens = 14;
inline constexpr double kDefaultOutputFps = 25.0;
inline constexpr double kDefaultAccent = 0.5;

// Eased progress through one beat interval:
//   s(a) = a + accent / (2 pi) * sin(2 pi a)
// Playback speed 1 + accent * cos(2 pi a) peaks on the beats and dips
// mid-interval. Requires 0 <= a <= 1 and 0 <= accent < 1.
double SourceTime(double alpha, double accent);

struct WarpEntry {
  double time = 0.0;        // output timeline, seconds
  std::size_t interval = 0; // beat interval [t_i, t_{i+1}]
  std::array<int, 2> clip{};  // keyframes (p_i, p_{i+1}) the clip runs between
  double source = 0.0;      // fractional source frame in [0, inbetweens + 1]

  friend bool operator==(const WarpEntry&, const WarpEntry&) = default;
};

struct WarpSchedule {
  double fps_out = kDefaultOutputFps;
  int inbetween_count = kDefaultInbetweens;
  std::vector<WarpEntry> entries;
  // Distinct clips in first-use order; each needs synthesizing only once.
  std::vector<std::array<int, 2>> unique_clips;

  double clip_length() const { return inbetween_count + 1.0; }

  friend bool operator==(const WarpSchedule&, const WarpSchedule&) = default;
};

// Retimes the clips along `path` so keyframe i lands exactly on beat i.
// Interval i is sampled at t_i, t_i + 1/fps, ... strictly before t_{i+1};
// the final beat closes the last interval at source = inbetweens + 1.
// Throws InvalidInput on mismatched lengths, non-increasing beats or
// out-of-range parameters.
WarpSchedule BuildWarp(const WalkPath& path, std::span<const double> beat_times,
                       int inbetween_count = kDefaultInbetweens,
                       double fps_out = kDefaultOutputFps,
                       double accent = kDefaultAccent);

}  // namespace choreokit
