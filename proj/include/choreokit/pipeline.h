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
#include <optional>
#include <string>

#include "choreokit/error.h"
#include "choreokit/io.h"
#include "choreokit/labeling.h"
#include "choreokit/warp.h"

namespace choreokit {

// A failure inside one pipeline stage ("label", "solve" or "warp").
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), "stage \"" + stage + "\": " + cause.what()),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineConfig {
  std::optional<std::filesystem::path> poses;    // labeled when no pattern is given
  std::optional<std::filesystem::path> pattern;  // hand-written pattern, skips labeling
  std::filesystem::path beats;
  std::filesystem::path flow;
  std::optional<std::filesystem::path> pins;
  std::filesystem::path output_dir = ".";
  LabelThresholds thresholds;
  double m_low = kDefaultMotionLow;
  double m_high = kDefaultMotionHigh;
  bool strict_repetition = false;
  int inbetweens = kDefaultInbetweens;
  double fps_out = kDefaultOutputFps;
  double accent = kDefaultAccent;
};

// Relative paths are resolved against `base_dir`. Keys: "poses", "pattern",
// "beats", "flow", "pins", "output_dir", "eps_theta", "eps_theta_prime",
// "eps_d", "m_low", "m_high", "strict_repetition", "inbetweens", "fps_out",
// "accent". Throws InvalidInput on unknown keys or bad values.
PipelineConfig PipelineConfigFromJson(const Json& j,
                                      const std::filesystem::path& base_dir);

struct PipelineOutputs {
  std::filesystem::path pattern;
  std::filesystem::path path;
  std::filesystem::path schedule;
  std::optional<std::filesystem::path> clusters;  // only when labeling ran
  bool labeled = false;
};

// label (optional) -> solve -> warp. Writes pattern.json, path.json and
// schedule.json (plus clusters.json after labeling) into output_dir. Any
// failure is rethrown as a StageError.
PipelineOutputs RunPipeline(const PipelineConfig& config);

}  // namespace choreokit
