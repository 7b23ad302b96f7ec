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

#include "choreokit/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "choreokit/error.h"

namespace choreokit {
namespace {

const Json& Field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidInput(where + " is missing field \"" + key + "\"");
  }
  return *it;
}

double Number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InvalidInput(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(what + " must be finite");
  return v;
}

std::int64_t Integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InvalidInput(what + " must be an integer");
  return j.get<std::int64_t>();
}

std::uint64_t Unsigned(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() &&
      !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw InvalidInput(what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

const Json& Array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + " must be an array");
  return j;
}

Vec3 ReadVec3(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw InvalidInput(what + " must be an array of 3 numbers");
  }
  return Vec3(Number(j[0], what + "[0]"), Number(j[1], what + "[1]"),
              Number(j[2], what + "[2]"));
}

Json WriteVec3(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

std::vector<int> IntList(const Json& j, const std::string& what) {
  std::vector<int> out;
  for (std::size_t i = 0; i < Array(j, what).size(); ++i) {
    out.push_back(static_cast<int>(Integer(j[i], what + "[" + std::to_string(i) + "]")));
  }
  return out;
}

GraphNode ReadNode(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) {
    throw InvalidInput(what + " must be a keyframe pair [u, v]");
  }
  return {static_cast<int>(Integer(j[0], what + "[0]")),
          static_cast<int>(Integer(j[1], what + "[1]"))};
}

Json WriteNode(const GraphNode& n) { return Json::array({n.u, n.v}); }

const char* NormalizationName(NmiNormalization n) {
  return n == NmiNormalization::kArithmetic ? "arithmetic" : "geometric";
}

}  // namespace

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const Json& value) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << value.dump(2) << '\n';
  if (!out) throw InvalidInput("failed writing " + path.string());
}

Json ToJson(const PoseSequence& sequence) {
  Json j;
  j["fps"] = sequence.fps();
  j["joint_count"] = sequence.joint_count();
  j["central_joints"] = sequence.permutation().central();
  j["permutation"] = sequence.permutation().perm();
  Json frames = Json::array();
  for (const Frame& f : sequence.frames()) {
    Json joints = Json::array();
    for (const AxisAngle& r : f.pose.joints) joints.push_back(WriteVec3(r.omega()));
    frames.push_back({{"joints", std::move(joints)},
                      {"translation", WriteVec3(f.translation)}});
  }
  j["frames"] = std::move(frames);
  return j;
}

PoseSequence PoseSequenceFromJson(const Json& j) {
  const std::string where = "pose file";
  const double fps = Number(Field(j, "fps", where), "fps");
  const std::int64_t joint_count = Integer(Field(j, "joint_count", where), "joint_count");
  if (joint_count < 1) throw InvalidInput("joint_count must be >= 1");
  const bool has_perm = j.contains("permutation");
  const bool has_central = j.contains("central_joints");
  std::optional<JointPermutation> perm;
  if (has_perm || has_central) {
    if (!has_perm || !has_central) {
      throw InvalidInput("pose file must give both permutation and central_joints");
    }
    perm.emplace(IntList(j["permutation"], "permutation"),
                 IntList(j["central_joints"], "central_joints"));
  } else if (joint_count == static_cast<std::int64_t>(kSmplxBodyJointCount)) {
    perm = JointPermutation::SmplxBody();
  } else {
    throw InvalidInput("pose file needs permutation and central_joints for " +
                       std::to_string(joint_count) + " joints");
  }
  if (perm->size() != static_cast<std::size_t>(joint_count)) {
    throw InvalidInput("permutation has " + std::to_string(perm->size()) +
                       " entries but joint_count is " + std::to_string(joint_count));
  }

  const Json& frames_json = Array(Field(j, "frames", where), "frames");
  std::vector<Frame> frames;
  frames.reserve(frames_json.size());
  for (std::size_t f = 0; f < frames_json.size(); ++f) {
    const std::string fw = "frames[" + std::to_string(f) + "]";
    const Json& joints = Array(Field(frames_json[f], "joints", fw), fw + ".joints");
    if (joints.size() != static_cast<std::size_t>(joint_count)) {
      throw InvalidInput(fw + " has " + std::to_string(joints.size()) +
                         " joints, expected " + std::to_string(joint_count));
    }
    Frame frame;
    frame.pose.joints.reserve(joints.size());
    for (std::size_t k = 0; k < joints.size(); ++k) {
      frame.pose.joints.emplace_back(
          ReadVec3(joints[k], fw + ".joints[" + std::to_string(k) + "]"));
    }
    frame.translation = ReadVec3(Field(frames_json[f], "translation", fw), fw + ".translation");
    frames.push_back(std::move(frame));
  }
  return PoseSequence(fps, std::move(*perm), std::move(frames));
}

Json ToJson(const BeatGrid& beats) { return {{"beat_times", beats.times()}}; }

BeatGrid BeatGridFromJson(const Json& j) {
  const Json& times = Array(Field(j, "beat_times", "beats file"), "beat_times");
  std::vector<double> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    out.push_back(Number(times[i], "beat_times[" + std::to_string(i) + "]"));
  }
  return BeatGrid(std::move(out));
}

Json ToJson(const ChoreoPattern& pattern) {
  Json labels = Json::array();
  for (const PatternToken& t : pattern.labels()) labels.push_back(t.ToString());
  Json j{{"labels", std::move(labels)}};
  if (!pattern.mirror_only().empty()) j["mirror_only"] = pattern.mirror_only();
  return j;
}

ChoreoPattern PatternFromJson(const Json& j) {
  const Json& labels = Array(Field(j, "labels", "pattern file"), "labels");
  std::vector<PatternToken> tokens;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) {
      throw InvalidInput("pattern token " + std::to_string(i + 1) + " must be a string");
    }
    tokens.push_back(ParseToken(labels[i].get<std::string>(), i + 1));
  }
  std::set<std::string> mirror_only;
  if (j.contains("mirror_only")) {
    for (const Json& b : Array(j["mirror_only"], "mirror_only")) {
      if (!b.is_string()) throw InvalidInput("mirror_only entries must be strings");
      mirror_only.insert(ParseToken(b.get<std::string>()).base);
    }
  }
  return ChoreoPattern(std::move(tokens), std::move(mirror_only));
}

Json ToJson(const FlowMatrix& flow) {
  return {{"keyframe_count", flow.keyframes().count()},
          {"resolution", flow.resolution()},
          {"magnitudes", flow.magnitudes()}};
}

FlowMatrix FlowFromJson(const Json& j) {
  const std::string where = "flow file";
  const std::int64_t k = Integer(Field(j, "keyframe_count", where), "keyframe_count");
  if (k < 1) throw InvalidInput("keyframe_count must be >= 1");
  std::array<int, 2> resolution{1024, 576};
  if (j.contains("resolution")) {
    const std::vector<int> r = IntList(j["resolution"], "resolution");
    if (r.size() != 2 || r[0] <= 0 || r[1] <= 0) {
      throw InvalidInput("resolution must be [width, height] in pixels");
    }
    resolution = {r[0], r[1]};
  }
  const Json& m = Array(Field(j, "magnitudes", where), "magnitudes");
  std::vector<double> values;
  const bool nested = !m.empty() && m[0].is_array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (nested) {
      const Json& row = Array(m[r], "magnitudes[" + std::to_string(r) + "]");
      if (row.size() != static_cast<std::size_t>(2 * k)) {
        throw InvalidInput("magnitudes row " + std::to_string(r) + " has " +
                           std::to_string(row.size()) + " entries, expected " +
                           std::to_string(2 * k));
      }
      for (std::size_t c = 0; c < row.size(); ++c) {
        values.push_back(Number(row[c], "magnitudes[" + std::to_string(r) + "][" +
                                            std::to_string(c) + "]"));
      }
    } else {
      values.push_back(Number(m[r], "magnitudes[" + std::to_string(r) + "]"));
    }
  }
  return FlowMatrix(static_cast<int>(k), std::move(values), resolution);
}

Json ToJson(const PathFile& file) {
  Json assignment = Json::object();
  for (const auto& [label, node] : file.assignment.entries) {
    assignment[label] = WriteNode(node);
  }
  return {{"keyframes", file.path.keyframes},
          {"cost", file.path.cost},
          {"assignment", std::move(assignment)}};
}

PathFile PathFromJson(const Json& j) {
  const std::string where = "path file";
  PathFile file;
  file.path.keyframes = IntList(Field(j, "keyframes", where), "keyframes");
  file.path.cost = Number(Field(j, "cost", where), "cost");
  if (j.contains("assignment")) {
    const Json& a = j["assignment"];
    if (!a.is_object()) throw InvalidInput("assignment must be an object");
    for (const auto& [label, node] : a.items()) {
      const PatternToken token = ParseToken(label);
      if (token.primed) throw InvalidInput("assignment keys are base labels, got " + label);
      file.assignment.entries.emplace_back(label, ReadNode(node, "assignment." + label));
    }
  }
  return file;
}

Json ToJson(const WarpSchedule& schedule) {
  Json entries = Json::array();
  for (const WarpEntry& e : schedule.entries) {
    entries.push_back(
        {{"t", e.time}, {"interval", e.interval}, {"clip", e.clip}, {"src", e.source}});
  }
  return {{"fps_out", schedule.fps_out},
          {"inbetween_count", schedule.inbetween_count},
          {"entries", std::move(entries)},
          {"unique_clips", schedule.unique_clips}};
}

WarpSchedule ScheduleFromJson(const Json& j) {
  const std::string where = "schedule file";
  WarpSchedule s;
  s.fps_out = Number(Field(j, "fps_out", where), "fps_out");
  s.inbetween_count =
      static_cast<int>(Integer(Field(j, "inbetween_count", where), "inbetween_count"));
  const Json& entries = Array(Field(j, "entries", where), "entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ew = "entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    WarpEntry entry;
    entry.time = Number(Field(e, "t", ew), ew + ".t");
    entry.interval = static_cast<std::size_t>(Unsigned(Field(e, "interval", ew), ew + ".interval"));
    const GraphNode clip = ReadNode(Field(e, "clip", ew), ew + ".clip");
    entry.clip = {clip.u, clip.v};
    entry.source = Number(Field(e, "src", ew), ew + ".src");
    s.entries.push_back(entry);
  }
  if (j.contains("unique_clips")) {
    const Json& clips = Array(j["unique_clips"], "unique_clips");
    for (std::size_t i = 0; i < clips.size(); ++i) {
      const GraphNode c = ReadNode(clips[i], "unique_clips[" + std::to_string(i) + "]");
      s.unique_clips.push_back({c.u, c.v});
    }
  }
  return s;
}

Json ToJson(const CustomConstraints& c) {
  Json pins = Json::object();
  for (const auto& [label, node] : c.pins) pins[label] = WriteNode(node);
  return {{"pins", std::move(pins)}, {"self_mirrored", c.self_mirrored}};
}

CustomConstraints ConstraintsFromJson(const Json& j) {
  if (!j.is_object()) throw InvalidInput("pins file must be a JSON object");
  CustomConstraints c;
  if (j.contains("pins")) {
    if (!j["pins"].is_object()) throw InvalidInput("pins must be an object");
    for (const auto& [label, node] : j["pins"].items()) {
      ParseToken(label);
      c.pins[label] = ReadNode(node, "pins." + label);
    }
  }
  if (j.contains("self_mirrored")) {
    for (const Json& b : Array(j["self_mirrored"], "self_mirrored")) {
      if (!b.is_string()) throw InvalidInput("self_mirrored entries must be strings");
      const PatternToken t = ParseToken(b.get<std::string>());
      if (t.primed) throw InvalidInput("self_mirrored takes base labels");
      c.self_mirrored.insert(t.base);
    }
  }
  return c;
}

Json ClustersToJson(const LabelResult& result) {
  Json clusters = Json::array();
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    clusters.push_back({{"label", result.cluster_labels[c]},
                        {"segments", result.clusters[c]},
                        {"representative", result.representatives[c]}});
  }
  Json pairs = Json::array();
  for (const MirrorPair& p : result.mirror_pairs) {
    pairs.push_back({{"labels", {result.cluster_labels[p.a], result.cluster_labels[p.b]}},
                     {"mirrored_dtw", p.distance}});
  }
  return {{"pattern", result.pattern.ToString()},
          {"clusters", std::move(clusters)},
          {"mirror_pairs", std::move(pairs)}};
}

Json ToJson(const SyntheticSpec& spec) {
  return {{"base_motion_count", spec.base_motion_count},
          {"segment_count", spec.segment_count},
          {"mirror_fraction", spec.mirror_fraction},
          {"noise_sigma_rad", spec.noise_sigma},
          {"seed", spec.seed},
          {"fps", spec.fps},
          {"bpm", spec.bpm}};
}

SyntheticSpec SyntheticSpecFromJson(const Json& j) {
  if (!j.is_object()) throw InvalidInput("synthetic spec must be a JSON object");
  SyntheticSpec s;
  if (j.contains("base_motion_count")) {
    s.base_motion_count = Unsigned(j["base_motion_count"], "base_motion_count");
  }
  if (j.contains("segment_count")) s.segment_count = Unsigned(j["segment_count"], "segment_count");
  if (j.contains("mirror_fraction")) s.mirror_fraction = Number(j["mirror_fraction"], "mirror_fraction");
  if (j.contains("noise_sigma_rad")) s.noise_sigma = Number(j["noise_sigma_rad"], "noise_sigma_rad");
  if (j.contains("seed")) s.seed = Unsigned(j["seed"], "seed");
  if (j.contains("fps")) s.fps = Number(j["fps"], "fps");
  if (j.contains("bpm")) s.bpm = Number(j["bpm"], "bpm");
  ValidateSpec(s);
  return s;
}

Json ToJson(const LabelMetrics& m) {
  return {{"ari", m.ari},
          {"nmi", m.nmi},
          {"mirror_precision", m.mirror_precision},
          {"mirror_recall", m.mirror_recall},
          {"mirror_f1", m.mirror_f1}};
}

SuiteFile SuiteFromJson(const Json& j) {
  if (!j.is_object()) throw InvalidInput("suite file must be a JSON object");
  SuiteFile suite;
  if (j.contains("eps_theta")) suite.thresholds.eps_theta = Number(j["eps_theta"], "eps_theta");
  if (j.contains("eps_theta_prime")) {
    suite.thresholds.eps_theta_prime = Number(j["eps_theta_prime"], "eps_theta_prime");
  }
  if (j.contains("eps_d")) suite.thresholds.eps_direction = Number(j["eps_d"], "eps_d");
  if (j.contains("nmi")) {
    const std::string n = j["nmi"].is_string() ? j["nmi"].get<std::string>() : "";
    if (n == "arithmetic") {
      suite.normalization = NmiNormalization::kArithmetic;
    } else if (n == "geometric") {
      suite.normalization = NmiNormalization::kGeometric;
    } else {
      throw InvalidInput("nmi must be \"arithmetic\" or \"geometric\"");
    }
  }
  if (j.contains("instances")) {
    const Json& list = Array(j["instances"], "instances");
    for (const Json& s : list) suite.specs.push_back(SyntheticSpecFromJson(s));
  } else {
    const std::uint64_t seed = j.contains("suite_seed") ? Unsigned(j["suite_seed"], "suite_seed") : 2025;
    const std::uint64_t count = j.contains("count") ? Unsigned(j["count"], "count") : 20;
    const double sigma = j.contains("noise_sigma_rad") ? Number(j["noise_sigma_rad"], "noise_sigma_rad") : 0.0;
    if (sigma < 0.0) throw InvalidInput("noise_sigma_rad must be >= 0");
    suite.suite_seed = seed;
    suite.specs = StandardSuite(sigma, seed, count);
  }
  if (suite.specs.empty()) throw InvalidInput("suite has no instances");
  return suite;
}

Json ReportToJson(const EvalReport& report, const SuiteFile& suite) {
  Json instances = Json::array();
  for (const InstanceReport& r : report.instances) {
    instances.push_back({{"seed", r.spec.seed},
                         {"spec", ToJson(r.spec)},
                         {"truth", r.truth.ToString()},
                         {"predicted", r.predicted.ToString()},
                         {"metrics", ToJson(r.metrics)},
                         {"max_intra_cluster_dtw", r.max_intra_cluster_dtw},
                         {"cluster_contract_violations", r.cluster_contract_violations}});
  }
  Json j;
  if (suite.suite_seed) j["suite_seed"] = *suite.suite_seed;
  j["thresholds"] = {{"eps_theta", suite.thresholds.eps_theta},
                     {"eps_theta_prime", suite.thresholds.eps_theta_prime},
                     {"eps_d", suite.thresholds.eps_direction}};
  j["nmi"] = NormalizationName(suite.normalization);
  j["mean"] = ToJson(report.mean);
  j["instances"] = std::move(instances);
  return j;
}

}  // namespace choreokit
