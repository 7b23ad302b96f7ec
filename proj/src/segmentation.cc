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

#include "choreokit/segmentation.h"

#include <cmath>
#include <string>
#include <utility>

#include "choreokit/error.h"

namespace choreokit {
namespace {

// Rounding allowance on time * fps when detecting half-frame ties.
constexpr double kTieSlack = 1e-9;

}  // namespace

BeatGrid::BeatGrid(std::vector<double> beat_times) : times_(std::move(beat_times)) {
  if (times_.size() < 4 || times_.size() % 4 != 0) {
    throw InvalidInput("beat grid needs a positive multiple of 4 beats, got " +
                       std::to_string(times_.size()));
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) {
      throw InvalidInput("beat " + std::to_string(i) + " is not finite");
    }
    if (i == 0 && times_[i] < 0.0) {
      throw InvalidInput("first beat time is negative");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw InvalidInput("beat times are not strictly increasing at beat " +
                         std::to_string(i));
    }
  }
}

BeatGrid BeatGrid::Uniform(double bpm, double offset, std::size_t bars) {
  if (!(bpm > 0.0) || !std::isfinite(bpm)) {
    throw InvalidInput("bpm must be positive");
  }
  const double period = 60.0 / bpm;
  std::vector<double> times(4 * bars);
  for (std::size_t i = 0; i < times.size(); ++i) {
    times[i] = offset + static_cast<double>(i) * period;
  }
  return BeatGrid(std::move(times));
}

std::size_t SnapStartFrame(double time, double fps) {
  const double x = time * fps;
  const double f = std::floor(x + 0.5 + kTieSlack);
  return f <= 0.0 ? 0 : static_cast<std::size_t>(f);
}

std::size_t SnapEndFrame(double time, double fps) {
  const double x = time * fps;
  const double f = std::ceil(x - 0.5 - kTieSlack);
  return f <= 0.0 ? 0 : static_cast<std::size_t>(f);
}

std::vector<MotionSegment> BuildSegments(const PoseSequence& sequence,
                                         const BeatGrid& beats) {
  const std::size_t frame_count = sequence.size();
  if (frame_count == 0) throw InvalidInput("pose sequence has no frames");
  const double fps = sequence.fps();
  const std::size_t last_frame = frame_count - 1;

  std::vector<MotionSegment> segments;
  segments.reserve(beats.segment_count());
  for (std::size_t i = 0; i < beats.segment_count(); ++i) {
    MotionSegment seg;
    seg.index = i;
    seg.start_beat = 2 * i;
    seg.end_beat = 2 * i + 1;
    seg.start_frame = SnapStartFrame(beats[seg.start_beat], fps);
    seg.end_frame = SnapEndFrame(beats[seg.end_beat], fps);
    if (seg.end_frame > last_frame || seg.start_frame > last_frame) {
      throw InvalidInput("beat " + std::to_string(seg.end_beat) + " at " +
                         std::to_string(beats[seg.end_beat]) +
                         " s extends past the pose sequence end");
    }
    if (seg.end_frame < seg.start_frame) {
      throw InvalidInput("segment between beats " +
                         std::to_string(seg.start_beat) + " and " +
                         std::to_string(seg.end_beat) +
                         " is empty after frame snapping");
    }
    const auto& frames = sequence.frames();
    for (std::size_t f = seg.start_frame; f <= seg.end_frame; ++f) {
      seg.poses.push_back(frames[f].pose);
      seg.translations.push_back(frames[f].translation);
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

MotionSegment MirrorSegment(const MotionSegment& segment,
                            const JointPermutation& perm) {
  MotionSegment out = segment;
  for (Pose& p : out.poses) p = MirrorPose(p, perm);
  return out;
}

}  // namespace choreokit
