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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "choreokit/error.h"
#include "choreokit/io.h"
#include "choreokit/pipeline.h"
#include "choreokit/synthetic.h"
#include "choreokit/warp.h"

using namespace choreokit;
namespace fs = std::filesystem;

namespace {

std::string ErrorOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("choreokit_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("pose sequences round trip") {
  SyntheticSpec spec;
  spec.noise_sigma = 0.05;
  spec.segment_count = 8;
  const PoseSequence seq = GenerateSynthetic(spec).sequence;
  const Json j = ToJson(seq);
  const PoseSequence back = PoseSequenceFromJson(j);
  CHECK(ToJson(back).dump() == j.dump());
  CHECK(back.size() == seq.size());
  for (std::size_t f = 0; f < seq.size(); ++f) {
    CHECK(back.frames()[f].translation == seq.frames()[f].translation);
    for (std::size_t k = 0; k < 22; ++k) {
      CHECK(back.frames()[f].pose.joints[k].omega() == seq.frames()[f].pose.joints[k].omega());
    }
  }
}

TEST_CASE("pose file defaults and errors") {
  Json j{{"fps", 30.0}, {"joint_count", 22}};
  Json frame{{"joints", Json::array()}, {"translation", {0.0, 0.0, 0.0}}};
  for (int k = 0; k < 22; ++k) frame["joints"].push_back({0.0, 0.1, 0.0});
  j["frames"] = {frame, frame};
  const PoseSequence seq = PoseSequenceFromJson(j);
  CHECK(seq.permutation().perm() == JointPermutation::SmplxBody().perm());
  j["joint_count"] = 3;
  CHECK(ErrorOf([&] { PoseSequenceFromJson(j); }).find("permutation") != std::string::npos);
  j["joint_count"] = 22;
  j["frames"][1]["joints"].erase(0);
  CHECK(ErrorOf([&] { PoseSequenceFromJson(j); }).find("frames[1]") != std::string::npos);
  j.erase("fps");
  CHECK(ErrorOf([&] { PoseSequenceFromJson(j); }).find("\"fps\"") != std::string::npos);
}

TEST_CASE("beats and patterns round trip") {
  const BeatGrid beats({0.0, 0.5, 1.0, 1.5});
  CHECK(BeatGridFromJson(ToJson(beats)).times() == beats.times());
  const ChoreoPattern p = ParsePattern("A-B-A'-C");
  CHECK(PatternFromJson(ToJson(p)) == p);
  const ChoreoPattern mo = ParsePattern("A-B'-B'", {"B"});
  CHECK(PatternFromJson(ToJson(mo)) == mo);
  CHECK(ErrorOf([] { PatternFromJson(Json{{"labels", {"A", 3}}}); }).find("token 2") !=
        std::string::npos);
  CHECK_THROWS_AS(BeatGridFromJson(Json{{"beat_times", {0.0, "x"}}}), Error);
}

TEST_CASE("flow matrices round trip flat and nested") {
  const FlowMatrix f = FabricateFlow(3, 4);
  const FlowMatrix back = FlowFromJson(ToJson(f));
  CHECK(back.magnitudes() == f.magnitudes());
  CHECK(back.resolution() == f.resolution());
  Json nested{{"keyframe_count", 3}, {"magnitudes", Json::array()}};
  for (int u = 0; u < 6; ++u) {
    Json row = Json::array();
    for (int v = 0; v < 6; ++v) row.push_back(f(u, v));
    nested["magnitudes"].push_back(row);
  }
  CHECK(FlowFromJson(nested).magnitudes() == f.magnitudes());
  nested["magnitudes"][2].erase(0);
  CHECK(ErrorOf([&] { FlowFromJson(nested); }).find("row 2") != std::string::npos);
  CHECK_THROWS_AS(FlowFromJson(Json{{"keyframe_count", 2}, {"magnitudes", {1.0, 2.0}}}), Error);
}

TEST_CASE("paths, schedules and pins round trip") {
  PathFile path;
  path.path.keyframes = {0, 3, 1, 4};
  path.path.cost = 12.375;
  path.assignment.entries = {{"A", {0, 3}}, {"B", {1, 4}}};
  CHECK(PathFromJson(ToJson(path)) == path);
  CHECK_THROWS_AS(PathFromJson(Json{{"keyframes", {0}}, {"cost", 0.0},
                                    {"assignment", {{"A'", {0, 1}}}}}),
                  Error);

  WalkPath walk;
  walk.keyframes = {0, 2, 0};
  const WarpSchedule s = BuildWarp(walk, std::vector<double>{0.0, 0.4, 1.1}, 14, 25.0, 0.3);
  CHECK(ScheduleFromJson(ToJson(s)) == s);

  CustomConstraints c;
  c.pins["A"] = {0, 2};
  c.pins["B'"] = {1, 3};
  c.self_mirrored = {"C"};
  const CustomConstraints cb = ConstraintsFromJson(ToJson(c));
  CHECK(cb.pins == c.pins);
  CHECK(cb.self_mirrored == c.self_mirrored);
  CHECK_THROWS_AS(ConstraintsFromJson(Json{{"self_mirrored", {"C'"}}}), Error);
  CHECK(ErrorOf([] { ConstraintsFromJson(Json{{"pins", {{"A", {1}}}}}); }).find("pins.A") !=
        std::string::npos);
}

TEST_CASE("suite files") {
  const SuiteFile gen = SuiteFromJson(
      Json{{"suite_seed", 2025}, {"count", 20}, {"noise_sigma_rad", 0.04}, {"nmi", "geometric"}});
  CHECK(gen.specs.size() == 20);
  CHECK(gen.suite_seed == 2025u);
  CHECK(gen.normalization == NmiNormalization::kGeometric);
  CHECK(ToJson(gen.specs[3]).dump() == ToJson(StandardSuite(0.04, 2025)[3]).dump());

  SyntheticSpec spec;
  spec.seed = 8;
  spec.noise_sigma = 0.02;
  const SuiteFile listed = SuiteFromJson(Json{{"instances", {ToJson(spec)}}, {"eps_theta", 0.3}});
  REQUIRE(listed.specs.size() == 1);
  CHECK(ToJson(listed.specs[0]).dump() == ToJson(spec).dump());
  CHECK(listed.thresholds.eps_theta == 0.3);
  CHECK_THROWS_AS(SuiteFromJson(Json{{"instances", Json::array()}}), Error);
  CHECK_THROWS_AS(SuiteFromJson(Json{{"count", 2}, {"nmi", "max"}}), Error);
}

TEST_CASE("json files") {
  const fs::path dir = TempDir("files");
  const fs::path file = dir / "nested" / "x.json";
  WriteJsonFile(file, Json{{"a", 1}});
  CHECK(ReadJsonFile(file)["a"] == 1);
  { std::ofstream(dir / "bad.json") << "{ nope"; }
  CHECK(ErrorOf([&] { ReadJsonFile(dir / "bad.json"); }).find("malformed") != std::string::npos);
  CHECK(ErrorOf([&] { ReadJsonFile(dir / "missing.json"); }).find("cannot open") !=
        std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("pipeline config") {
  const fs::path base = "/data/run";
  const PipelineConfig c = PipelineConfigFromJson(
      Json{{"poses", "p.json"}, {"beats", "/abs/b.json"}, {"flow", "f.json"},
           {"eps_theta", 0.3}, {"strict_repetition", true}, {"accent", 0.25}},
      base);
  CHECK(c.poses == base / "p.json");
  CHECK(c.beats == fs::path("/abs/b.json"));
  CHECK(c.output_dir == base);
  CHECK(c.thresholds.eps_theta == 0.3);
  CHECK(c.strict_repetition);
  CHECK(c.accent == 0.25);
  CHECK(ErrorOf([&] {
          PipelineConfigFromJson(Json{{"poses", "p"}, {"beats", "b"}, {"flow", "f"}, {"x", 1}},
                                 base);
        }).find("\"x\"") != std::string::npos);
  CHECK_THROWS_AS(PipelineConfigFromJson(Json{{"beats", "b"}, {"flow", "f"}}, base), Error);
  CHECK_THROWS_AS(PipelineConfigFromJson(Json{{"poses", "p"}, {"flow", "f"}}, base), Error);
}
