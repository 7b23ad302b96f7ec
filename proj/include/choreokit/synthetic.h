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
#include <cstdint>
#include <string>
#include <vector>

#include "choreokit/keyframe_graph.h"
#include "choreokit/labeling.h"
#include "choreokit/metrics.h"
#include "choreokit/pattern.h"
#include "choreokit/pose.h"
#include "choreokit/segmentation.h"

namespace choreokit {

struct SyntheticSpec {
  std::size_t base_motion_count = 4;
  std::size_t segment_count = 12;  // even
  double mirror_fraction = 0.5;    // share of base motions that also occur mirrored
  double noise_sigma = 0.0;        // radians, per axis-angle component per frame
  std::uint64_t seed = 1;
  double fps = 25.0;
  double bpm = 120.0;
};

struct SyntheticInstance {
  PoseSequence sequence;
  BeatGrid beats;
  ChoreoPattern truth;
};

// Throws InvalidInput if the spec is inconsistent (odd segment count,
// negative noise, or too few segments to show every base and mirror).
void ValidateSpec(const SyntheticSpec& spec);

// Plants a random pattern into a 22-joint pose sequence. Base motions are
// smoothstep slerps between random endpoint poses with a per-base global
// drift. Mirrored occurrences mirror the poses and reflect the drift. Some
// mirrored bases are sagittally symmetric and differ from their mirror only
// in travel direction. Distinct bases are rejection-sampled to stay far
// apart under `thresholds`. Identical specs give identical instances.
SyntheticInstance GenerateSynthetic(const SyntheticSpec& spec,
                                    const LabelThresholds& thresholds = {});

// Plants `pattern` instead of a random one. The pattern's length must be
// even; spec.segment_count, base_motion_count and mirror_fraction are
// ignored.
SyntheticInstance GenerateForPattern(const ChoreoPattern& pattern,
                                     const SyntheticSpec& spec = {},
                                     const LabelThresholds& thresholds = {});

// Mixes a suite seed with an instance index (splitmix64).
std::uint64_t DeriveSeed(std::uint64_t suite_seed, std::uint64_t index);

// The reference 20-instance suite: 8-16 segments, 3-6 bases, mirror
// fraction 0.5, all at `noise_sigma`.
std::vector<SyntheticSpec> StandardSuite(double noise_sigma,
                                         std::uint64_t suite_seed = 2025,
                                         std::size_t count = 20);

struct InstanceReport {
  SyntheticSpec spec;
  ChoreoPattern truth;
  ChoreoPattern predicted;
  LabelMetrics metrics;
  double max_intra_cluster_dtw = 0.0;  // over the pose clusters
  std::size_t cluster_contract_violations = 0;
};

struct EvalReport {
  std::vector<InstanceReport> instances;
  LabelMetrics mean;
};

// Generates, labels and scores every spec. Throws InvalidInput on an empty
// suite.
EvalReport RunEval(const std::vector<SyntheticSpec>& suite,
                   const LabelThresholds& thresholds = {},
                   NmiNormalization normalization = NmiNormalization::kArithmetic);

// A 2K x 2K flow matrix with mirror-consistent magnitudes spread around
// [m_low, m_high], for demos and solver tests.
FlowMatrix FabricateFlow(int keyframe_count, std::uint64_t seed,
                         double m_low = kDefaultMotionLow,
                         double m_high = kDefaultMotionHigh);

}  // namespace choreokit
