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
#include <vector>

#include "choreokit/pose.h"

namespace choreokit {

// Beat times in seconds for a 4/4 track: at least one bar, whole bars only.
class BeatGrid {
 public:
  // Throws InvalidInput unless times are finite, strictly increasing, start
  // at or after zero and number a positive multiple of four.
  explicit BeatGrid(std::vector<double> beat_times);

  // Uniform grid of `bars` 4/4 bars at `bpm`, first beat at `offset`.
  static BeatGrid Uniform(double bpm, double offset, std::size_t bars);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }
  std::size_t segment_count() const { return times_.size() / 2; }

  friend bool operator==(const BeatGrid&, const BeatGrid&) = default;

 private:
  std::vector<double> times_;
};

// The poses between beat 2i and beat 2i+1, boundary frames included.
struct MotionSegment {
  std::size_t index = 0;
  std::size_t start_beat = 0;
  std::size_t end_beat = 0;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  std::vector<Pose> poses;
  std::vector<Vec3> translations;

  std::size_t size() const { return poses.size(); }
};

// Nearest frame to a segment's opening beat; exact half-frame ties go to the
// later frame.
std::size_t SnapStartFrame(double time, double fps);
// Nearest frame to a segment's closing beat; exact half-frame ties go to the
// earlier frame.
std::size_t SnapEndFrame(double time, double fps);

// Splits `sequence` into beats.size() / 2 segments. Throws InvalidInput if a
// beat snaps past the last frame or a segment ends up empty.
std::vector<MotionSegment> BuildSegments(const PoseSequence& sequence,
                                         const BeatGrid& beats);

// Mirrors every pose; translations are left as recorded.
MotionSegment MirrorSegment(const MotionSegment& segment,
                            const JointPermutation& perm);

}  // namespace choreokit
