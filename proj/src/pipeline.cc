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

#include "choreokit/pipeline.h"

#include <set>
#include <utility>

#include "choreokit/keyframe_graph.h"
#include "choreokit/solver.h"

namespace choreokit {
namespace {

template <typename Fn>
auto InStage(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  } catch (const std::exception& e) {
    throw StageError(stage, Internal(e.what()));
  }
}

std::filesystem::path Resolve(const Json& value, const std::string& key,
                              const std::filesystem::path& base_dir) {
  if (!value.is_string() || value.get<std::string>().empty()) {
    throw InvalidInput("config field \"" + key + "\" must be a non-empty path");
  }
  const std::filesystem::path p = value.get<std::string>();
  return p.is_absolute() ? p : base_dir / p;
}

double ConfigNumber(const Json& value, const std::string& key) {
  if (!value.is_number()) throw InvalidInput("config field \"" + key + "\" must be a number");
  return value.get<double>();
}

}  // namespace

PipelineConfig PipelineConfigFromJson(const Json& j,
                                      const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw InvalidInput("pipeline config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "poses", "pattern", "beats", "flow", "pins", "output_dir",
      "eps_theta", "eps_theta_prime", "eps_d", "m_low", "m_high",
      "strict_repetition", "inbetweens", "fps_out", "accent"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.contains(key)) throw InvalidInput("unknown config field \"" + key + "\"");
  }
  PipelineConfig c;
  if (!j.contains("beats")) throw InvalidInput("config is missing \"beats\"");
  if (!j.contains("flow")) throw InvalidInput("config is missing \"flow\"");
  c.beats = Resolve(j["beats"], "beats", base_dir);
  c.flow = Resolve(j["flow"], "flow", base_dir);
  if (j.contains("poses")) c.poses = Resolve(j["poses"], "poses", base_dir);
  if (j.contains("pattern")) c.pattern = Resolve(j["pattern"], "pattern", base_dir);
  if (j.contains("pins")) c.pins = Resolve(j["pins"], "pins", base_dir);
  c.output_dir = j.contains("output_dir") ? Resolve(j["output_dir"], "output_dir", base_dir)
                                          : base_dir;
  if (!c.poses && !c.pattern) {
    throw InvalidInput("config needs \"poses\" to label or a \"pattern\" file");
  }
  if (j.contains("eps_theta")) c.thresholds.eps_theta = ConfigNumber(j["eps_theta"], "eps_theta");
  if (j.contains("eps_theta_prime")) {
    c.thresholds.eps_theta_prime = ConfigNumber(j["eps_theta_prime"], "eps_theta_prime");
  }
  if (j.contains("eps_d")) c.thresholds.eps_direction = ConfigNumber(j["eps_d"], "eps_d");
  if (j.contains("m_low")) c.m_low = ConfigNumber(j["m_low"], "m_low");
  if (j.contains("m_high")) c.m_high = ConfigNumber(j["m_high"], "m_high");
  if (j.contains("strict_repetition")) {
    if (!j["strict_repetition"].is_boolean()) {
      throw InvalidInput("strict_repetition must be a boolean");
    }
    c.strict_repetition = j["strict_repetition"].get<bool>();
  }
  if (j.contains("inbetweens")) {
    if (!j["inbetweens"].is_number_integer()) throw InvalidInput("inbetweens must be an integer");
    c.inbetweens = j["inbetweens"].get<int>();
  }
  if (j.contains("fps_out")) c.fps_out = ConfigNumber(j["fps_out"], "fps_out");
  if (j.contains("accent")) c.accent = ConfigNumber(j["accent"], "accent");
  return c;
}

PipelineOutputs RunPipeline(const PipelineConfig& config) {
  PipelineOutputs out;
  out.pattern = config.output_dir / "pattern.json";
  out.path = config.output_dir / "path.json";
  out.schedule = config.output_dir / "schedule.json";

  const ChoreoPattern pattern = InStage("label", [&] {
    if (config.pattern) return PatternFromJson(ReadJsonFile(*config.pattern));
    const PoseSequence poses = PoseSequenceFromJson(ReadJsonFile(*config.poses));
    const BeatGrid beats = BeatGridFromJson(ReadJsonFile(config.beats));
    const LabelResult labels = LabelPipeline(poses, beats, config.thresholds);
    out.clusters = config.output_dir / "clusters.json";
    WriteJsonFile(*out.clusters, ClustersToJson(labels));
    out.labeled = true;
    return labels.pattern;
  });
  if (!config.pattern) WriteJsonFile(out.pattern, ToJson(pattern));
  else out.pattern = *config.pattern;

  const PathFile path = InStage("solve", [&] {
    const KeyframeGraph graph(FlowFromJson(ReadJsonFile(config.flow)), config.m_low,
                              config.m_high);
    SolverOptions options;
    options.strict_repetition = config.strict_repetition;
    if (config.pins) options.custom = ConstraintsFromJson(ReadJsonFile(*config.pins));
    const SolveResult result = Solve(graph, pattern, options);
    if (!result.feasible()) {
      throw Infeasible(result.infeasible ? result.infeasible->message
                                         : "no feasible assignment");
    }
    PathFile file{result.path, *result.assignment};
    WriteJsonFile(out.path, ToJson(file));
    return file;
  });

  InStage("warp", [&] {
    const BeatGrid beats = BeatGridFromJson(ReadJsonFile(config.beats));
    const WarpSchedule schedule = BuildWarp(path.path, beats.times(), config.inbetweens,
                                            config.fps_out, config.accent);
    WriteJsonFile(out.schedule, ToJson(schedule));
    return 0;
  });
  return out;
}

}  // namespace choreokit
