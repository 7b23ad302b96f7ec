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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "choreokit/keyframe_graph.h"
#include "choreokit/labeling.h"
#include "choreokit/pattern.h"
#include "choreokit/pose.h"
#include "choreokit/segmentation.h"
#include "choreokit/solver.h"
#include "choreokit/synthetic.h"
#include "choreokit/warp.h"

namespace choreokit {

using Json = nlohmann::ordered_json;

// Throws InvalidInput naming the file when it cannot be opened or parsed.
Json ReadJsonFile(const std::filesystem::path& path);
// Pretty-printed with a trailing newline. Creates missing parent directories.
void WriteJsonFile(const std::filesystem::path& path, const Json& value);

// All *FromJson functions throw InvalidInput naming the offending field.

// { "fps", "joint_count", "central_joints", "permutation",
//   "frames": [ { "joints": [[wx, wy, wz], ...], "translation": [x, y, z] } ] }
// joint_count counts every rotation per frame, global orientation included.
// With 22 joints the permutation fields may be omitted (SMPL-X body).
Json ToJson(const PoseSequence& sequence);
PoseSequence PoseSequenceFromJson(const Json& j);

// { "beat_times": [...] }
Json ToJson(const BeatGrid& beats);
BeatGrid BeatGridFromJson(const Json& j);

// { "labels": ["A", "A'", ...], "mirror_only": [...] }; mirror_only is
// written only when non-empty.
Json ToJson(const ChoreoPattern& pattern);
ChoreoPattern PatternFromJson(const Json& j);

// { "keyframe_count", "resolution": [w, h], "magnitudes" }. Magnitudes are
// read either flat row-major or as nested rows and written flat.
Json ToJson(const FlowMatrix& flow);
FlowMatrix FlowFromJson(const Json& j);

struct PathFile {
  WalkPath path;
  Assignment assignment;
  friend bool operator==(const PathFile&, const PathFile&) = default;
};

// { "keyframes", "cost", "assignment": { "A": [u, v], ... } }
Json ToJson(const PathFile& path);
PathFile PathFromJson(const Json& j);

// { "fps_out", "inbetween_count",
//   "entries": [ { "t", "interval", "clip": [u, v], "src" } ],
//   "unique_clips": [[u, v], ...] }
Json ToJson(const WarpSchedule& schedule);
WarpSchedule ScheduleFromJson(const Json& j);

// { "pins": { "A": [u, v], "B'": [u, v] }, "self_mirrored": ["C"] }
Json ToJson(const CustomConstraints& constraints);
CustomConstraints ConstraintsFromJson(const Json& j);

// Per final cluster: label, member segments and representative segment.
Json ClustersToJson(const LabelResult& result);

Json ToJson(const SyntheticSpec& spec);
SyntheticSpec SyntheticSpecFromJson(const Json& j);
Json ToJson(const LabelMetrics& metrics);

// Evaluation suite file. Either an explicit list
//   { "instances": [ spec, ... ] }
// or the standard suite
//   { "suite_seed": 2025, "count": 20, "noise_sigma": 0.05 }
// plus optional "eps_theta", "eps_theta_prime", "eps_d" and
// "nmi": "arithmetic" | "geometric".
struct SuiteFile {
  std::vector<SyntheticSpec> specs;
  std::optional<std::uint64_t> suite_seed;
  LabelThresholds thresholds;
  NmiNormalization normalization = NmiNormalization::kArithmetic;
};
SuiteFile SuiteFromJson(const Json& j);

// Per-instance seeds, patterns and metrics plus the suite mean.
Json ReportToJson(const EvalReport& report, const SuiteFile& suite);

}  // namespace choreokit
