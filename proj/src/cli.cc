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

#include "choreokit/cli.h"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "choreokit/io.h"
#include "choreokit/keyframe_graph.h"
#include "choreokit/labeling.h"
#include "choreokit/pipeline.h"
#include "choreokit/solver.h"
#include "choreokit/synthetic.h"
#include "choreokit/warp.h"

namespace choreokit {
namespace {

namespace fs = std::filesystem;

struct LabelArgs {
  std::string poses, beats, output, dump_clusters;
  LabelThresholds thresholds;
};

struct SolveArgs {
  std::string pattern, flow, pins, output;
  double m_low = kDefaultMotionLow;
  double m_high = kDefaultMotionHigh;
  bool strict = false;
};

struct WarpArgs {
  std::string path, beats, output;
  int inbetweens = kDefaultInbetweens;
  double fps = kDefaultOutputFps;
  double accent = kDefaultAccent;
};

struct EvalArgs {
  std::string spec, report, nmi;
};

struct MirrorArgs {
  std::string poses, output;
};

struct GridArgs {
  double bpm = 120.0;
  double offset = 0.0;
  std::size_t bars = 4;
  std::string output;
};

struct PipelineArgs {
  std::string config, output_dir;
};

void RunLabel(const LabelArgs& a, std::ostream& out) {
  const PoseSequence poses = PoseSequenceFromJson(ReadJsonFile(a.poses));
  const BeatGrid beats = BeatGridFromJson(ReadJsonFile(a.beats));
  const LabelResult result = LabelPipeline(poses, beats, a.thresholds);
  WriteJsonFile(a.output, ToJson(result.pattern));
  if (!a.dump_clusters.empty()) WriteJsonFile(a.dump_clusters, ClustersToJson(result));
  out << result.pattern.ToString() << '\n';
}

void RunSolve(const SolveArgs& a, std::ostream& out) {
  const ChoreoPattern pattern = PatternFromJson(ReadJsonFile(a.pattern));
  const KeyframeGraph graph(FlowFromJson(ReadJsonFile(a.flow)), a.m_low, a.m_high);
  SolverOptions options;
  options.strict_repetition = a.strict;
  if (!a.pins.empty()) options.custom = ConstraintsFromJson(ReadJsonFile(a.pins));
  const SolveResult result = Solve(graph, pattern, options);
  if (!result.feasible()) {
    std::string message = "no feasible keyframe assignment";
    if (result.infeasible) {
      message += ": label " + result.infeasible->label + " (" +
                 ToString(result.infeasible->binding) + "): " + result.infeasible->message;
    }
    throw Infeasible(message);
  }
  WriteJsonFile(a.output, ToJson(PathFile{result.path, *result.assignment}));
  out << "cost " << result.path.cost << " over " << result.path.keyframes.size()
      << " keyframes\n";
}

void RunWarp(const WarpArgs& a, std::ostream& out) {
  const PathFile path = PathFromJson(ReadJsonFile(a.path));
  const BeatGrid beats = BeatGridFromJson(ReadJsonFile(a.beats));
  const WarpSchedule schedule =
      BuildWarp(path.path, beats.times(), a.inbetweens, a.fps, a.accent);
  WriteJsonFile(a.output, ToJson(schedule));
  out << schedule.entries.size() << " frames, " << schedule.unique_clips.size()
      << " unique clips\n";
}

void RunSynthEval(const EvalArgs& a, std::ostream& out) {
  SuiteFile suite = SuiteFromJson(ReadJsonFile(a.spec));
  if (a.nmi == "geometric") suite.normalization = NmiNormalization::kGeometric;
  if (a.nmi == "arithmetic") suite.normalization = NmiNormalization::kArithmetic;
  const EvalReport report = RunEval(suite.specs, suite.thresholds, suite.normalization);
  WriteJsonFile(a.report, ReportToJson(report, suite));
  out << "instances " << report.instances.size() << "  ARI " << report.mean.ari
      << "  NMI " << report.mean.nmi << "  mirror F1 " << report.mean.mirror_f1 << '\n';
}

void RunMirror(const MirrorArgs& a, std::ostream&) {
  const PoseSequence poses = PoseSequenceFromJson(ReadJsonFile(a.poses));
  WriteJsonFile(a.output, ToJson(poses.Mirrored()));
}

void RunTempoGrid(const GridArgs& a, std::ostream&) {
  WriteJsonFile(a.output, ToJson(BeatGrid::Uniform(a.bpm, a.offset, a.bars)));
}

void RunPipelineCommand(const PipelineArgs& a, std::ostream& out) {
  const fs::path config_path = fs::absolute(a.config);
  PipelineConfig config =
      PipelineConfigFromJson(ReadJsonFile(config_path), config_path.parent_path());
  if (!a.output_dir.empty()) config.output_dir = fs::absolute(a.output_dir);
  const PipelineOutputs outputs = RunPipeline(config);
  if (!outputs.labeled) out << "label: skipped, using " << outputs.pattern.string() << '\n';
  else out << "label: " << outputs.pattern.string() << '\n';
  out << "solve: " << outputs.path.string() << '\n';
  out << "warp: " << outputs.schedule.string() << '\n';
}

void AddThresholds(CLI::App* cmd, LabelThresholds& t) {
  cmd->add_option("--eps-theta", t.eps_theta, "Same-cluster DTW bound")->capture_default_str();
  cmd->add_option("--eps-theta-prime", t.eps_theta_prime, "Mirrored-cluster DTW bound")
      ->capture_default_str();
  cmd->add_option("--eps-d", t.eps_direction, "Reflected-direction match bound")
      ->capture_default_str();
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return kExitInvalidInput;
    case ErrorKind::kInfeasible:
      return kExitInfeasible;
    case ErrorKind::kInternal:
      return kExitInternal;
  }
  return kExitInternal;
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Choreography pattern extraction and beat-synchronized keyframe planning"};
  app.set_version_flag("--version", std::string("choreokit ") + kVersion);
  app.require_subcommand(1);

  std::function<void()> action;

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Label beat segments of a pose sequence");
  label_cmd->add_option("--poses", label.poses, "Pose-sequence JSON")->required();
  label_cmd->add_option("--beats", label.beats, "Beat-grid JSON")->required();
  AddThresholds(label_cmd, label.thresholds);
  label_cmd->add_option("-o,--output", label.output, "Pattern JSON to write")->required();
  label_cmd->add_option("--dump-clusters", label.dump_clusters,
                        "Also write clusters and representative segments here");
  label_cmd->callback([&] { action = [&] { RunLabel(label, out); }; });

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Choose keyframes for a pattern");
  solve_cmd->add_option("--pattern", solve.pattern, "Pattern JSON")->required();
  solve_cmd->add_option("--flow", solve.flow, "Flow-magnitude JSON")->required();
  solve_cmd->add_option("--m-low", solve.m_low, "Minimum node flow (pixels)")->capture_default_str();
  solve_cmd->add_option("--m-high", solve.m_high, "Maximum node and transition flow (pixels)")
      ->capture_default_str();
  solve_cmd->add_option("--pins", solve.pins, "Custom constraints JSON");
  solve_cmd->add_flag("--strict-repetition", solve.strict,
                      "Forbid keyframe sharing across positions between consecutive labels");
  solve_cmd->add_option("-o,--output", solve.output, "Path JSON to write")->required();
  solve_cmd->callback([&] { action = [&] { RunSolve(solve, out); }; });

  WarpArgs warp;
  auto* warp_cmd = app.add_subcommand("warp", "Retime a keyframe path onto beats");
  warp_cmd->add_option("--path", warp.path, "Path JSON")->required();
  warp_cmd->add_option("--beats", warp.beats, "Beat-grid JSON")->required();
  warp_cmd->add_option("--inbetweens", warp.inbetweens, "Inbetween frames per clip")
      ->capture_default_str();
  warp_cmd->add_option("--fps", warp.fps, "Output frame rate")->capture_default_str();
  warp_cmd->add_option("--accent", warp.accent, "Beat accent in [0, 1)")->capture_default_str();
  warp_cmd->add_option("-o,--output", warp.output, "Schedule JSON to write")->required();
  warp_cmd->callback([&] { action = [&] { RunWarp(warp, out); }; });

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("synth-eval", "Score labeling on a synthetic suite");
  eval_cmd->add_option("--spec", eval.spec, "Suite JSON")->required();
  eval_cmd->add_option("--report", eval.report, "Report JSON to write")->required();
  eval_cmd->add_option("--nmi", eval.nmi, "NMI normalization")
      ->check(CLI::IsMember({"arithmetic", "geometric"}));
  eval_cmd->callback([&] { action = [&] { RunSynthEval(eval, out); }; });

  MirrorArgs mirror;
  auto* mirror_cmd = app.add_subcommand("mirror-pose", "Mirror every pose of a sequence");
  mirror_cmd->add_option("--poses", mirror.poses, "Pose-sequence JSON")->required();
  mirror_cmd->add_option("-o,--output", mirror.output, "Pose-sequence JSON to write")->required();
  mirror_cmd->callback([&] { action = [&] { RunMirror(mirror, out); }; });

  GridArgs grid;
  auto* grid_cmd = app.add_subcommand("tempo-grid", "Write a uniform 4/4 beat grid");
  grid_cmd->add_option("--bpm", grid.bpm, "Tempo")->required();
  grid_cmd->add_option("--offset", grid.offset, "First beat (seconds)")->capture_default_str();
  grid_cmd->add_option("--bars", grid.bars, "Number of bars")->required();
  grid_cmd->add_option("-o,--output", grid.output, "Beat-grid JSON to write")->required();
  grid_cmd->callback([&] { action = [&] { RunTempoGrid(grid, out); }; });

  PipelineArgs pipeline;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run label, solve and warp from a config");
  pipeline_cmd->add_option("--config", pipeline.config, "Pipeline config JSON")->required();
  pipeline_cmd->add_option("-o,--output-dir", pipeline.output_dir,
                           "Override the config's output directory");
  pipeline_cmd->callback([&] { action = [&] { RunPipelineCommand(pipeline, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace choreokit
