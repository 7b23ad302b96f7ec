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

#include "choreokit/synthetic.h"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "choreokit/dtw.h"
#include "choreokit/error.h"
#include "choreokit/parallel.h"

namespace choreokit {
namespace {

// mt19937_64 output is fixed by the standard; the distributions on top of it
// are written out so instances are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  std::size_t Index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(Uniform() * static_cast<double>(n)));
  }
  bool Bernoulli(double p) { return Uniform() < p; }
  double Normal() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    return r * std::cos(phi);
  }
  Vec3 UnitVector() {
    for (;;) {
      const Vec3 v(Normal(), Normal(), Normal());
      const double n = v.norm();
      if (n > 1e-6) return v / n;
    }
  }
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[Index(i)]);
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

Eigen::Quaterniond ToQuaternion(const AxisAngle& r) {
  const double angle = r.angle();
  if (angle < 1e-15) return Eigen::Quaterniond::Identity();
  return Eigen::Quaterniond(Eigen::AngleAxisd(angle, r.omega() / angle));
}

AxisAngle FromQuaternion(const Eigen::Quaterniond& q) {
  const Eigen::AngleAxisd aa(q.normalized());
  return AxisAngle(aa.angle() * aa.axis());
}

double Smoothstep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * (3.0 - 2.0 * x);
}

Pose Slerp(const Pose& a, const Pose& b, double t) {
  Pose out;
  out.joints.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.joints.push_back(
        FromQuaternion(ToQuaternion(a.joints[j]).slerp(t, ToQuaternion(b.joints[j]))));
  }
  return out;
}

struct BaseMotion {
  Pose start;
  Pose end;
  Vec3 drift = Vec3::Zero();
  bool mirrored = false;   // also performed mirrored
  bool symmetric = false;  // poses are their own mirror

  Pose PoseAt(double alpha) const { return Slerp(start, end, Smoothstep(alpha)); }
};

constexpr double kMaxJointAngle = 1.0;

Pose RandomPose(Rng& rng, const JointPermutation& perm, bool symmetric) {
  Pose p;
  p.joints.resize(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) {
    const std::size_t partner = static_cast<std::size_t>(perm[j]);
    if (!symmetric) {
      p.joints[j] = AxisAngle(rng.UnitVector() * rng.Uniform(0.15, kMaxJointAngle));
    } else if (partner == j) {
      // Only rotations about the x axis survive the sagittal reflection.
      p.joints[j] = AxisAngle(rng.Uniform(-kMaxJointAngle, kMaxJointAngle), 0.0, 0.0);
    } else if (partner > j) {
      p.joints[j] = AxisAngle(rng.UnitVector() * rng.Uniform(0.15, kMaxJointAngle));
      p.joints[partner] = ReflectSagittal(p.joints[j]);
    }
  }
  return p;
}

Vec3 RandomDrift(Rng& rng, bool symmetric) {
  if (symmetric) {
    // Mostly sideways.
    const double side = rng.Bernoulli(0.5) ? 1.0 : -1.0;
    const Vec3 dir = Vec3(side * rng.Uniform(0.6, 1.0), 0.0, rng.Uniform(-0.5, 0.5)).normalized();
    return dir * rng.Uniform(0.3, 0.8);
  }
  if (rng.Bernoulli(0.25)) return Vec3::Zero();
  const double heading = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  return Vec3(std::cos(heading), 0.0, std::sin(heading)) * rng.Uniform(0.2, 0.8);
}

MotionSegment Prototype(const BaseMotion& base, std::size_t samples) {
  MotionSegment seg;
  for (std::size_t k = 0; k < samples; ++k) {
    const double alpha = samples > 1 ? static_cast<double>(k) / (samples - 1) : 0.0;
    seg.poses.push_back(base.PoseAt(alpha));
    seg.translations.push_back(Vec3::Zero());
  }
  return seg;
}

bool WellSeparated(const BaseMotion& candidate, const std::vector<BaseMotion>& accepted,
                   const JointPermutation& perm, std::size_t samples,
                   const LabelThresholds& th) {
  const MotionSegment c = Prototype(candidate, samples);
  const MotionSegment c_mirror = MirrorSegment(c, perm);
  if (!candidate.symmetric && DtwDistance(c_mirror, c) <= 3.0 * th.eps_theta) {
    return false;
  }
  for (const BaseMotion& other : accepted) {
    const MotionSegment o = Prototype(other, samples);
    if (DtwDistance(c, o) <= 3.0 * th.eps_theta) return false;
    if (DtwDistance(c_mirror, o) <= 3.0 * th.eps_theta_prime) return false;
  }
  return true;
}

}  // namespace

void ValidateSpec(const SyntheticSpec& spec) {
  if (spec.segment_count == 0 || spec.segment_count % 2 != 0) {
    throw InvalidInput("synthetic segment count must be positive and even");
  }
  if (spec.base_motion_count == 0) throw InvalidInput("need at least one base motion");
  if (!(spec.noise_sigma >= 0.0)) throw InvalidInput("noise sigma must be >= 0");
  if (!(spec.mirror_fraction >= 0.0 && spec.mirror_fraction <= 1.0)) {
    throw InvalidInput("mirror fraction must lie in [0, 1]");
  }
  if (!(spec.fps > 0.0) || !(spec.bpm > 0.0)) throw InvalidInput("fps and bpm must be positive");
  const std::size_t mirrored = static_cast<std::size_t>(
      std::llround(spec.mirror_fraction * static_cast<double>(spec.base_motion_count)));
  if (spec.segment_count < spec.base_motion_count + mirrored) {
    throw InvalidInput("too few segments to show every base motion and mirror");
  }
}

namespace {

using Tokens = std::vector<std::pair<std::size_t, bool>>;

std::vector<BaseMotion> SampleBases(Rng& rng, const std::vector<bool>& is_mirrored,
                                    const JointPermutation& perm, std::size_t samples,
                                    const LabelThresholds& thresholds) {
  std::vector<BaseMotion> bases;
  for (std::size_t b = 0; b < is_mirrored.size(); ++b) {
    bool placed = false;
    for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
      BaseMotion m;
      m.mirrored = is_mirrored[b];
      m.symmetric = m.mirrored && rng.Bernoulli(0.35);
      m.start = RandomPose(rng, perm, m.symmetric);
      m.end = RandomPose(rng, perm, m.symmetric);
      m.drift = RandomDrift(rng, m.symmetric);
      if (WellSeparated(m, bases, perm, samples, thresholds)) {
        bases.push_back(std::move(m));
        placed = true;
      }
    }
    if (!placed) throw Internal("could not sample well-separated base motions");
  }
  return bases;
}

std::size_t SamplesPerSegment(const SyntheticSpec& spec) {
  return static_cast<std::size_t>(std::llround(60.0 / spec.bpm * spec.fps)) + 1;
}

SyntheticInstance Render(const SyntheticSpec& spec, const std::vector<BaseMotion>& bases,
                         const Tokens& tokens, Rng& rng) {
  const JointPermutation perm = JointPermutation::SmplxBody();
  const BeatGrid beats = BeatGrid::Uniform(spec.bpm, 0.0, spec.segment_count / 2);
  const double period = 60.0 / spec.bpm;

  // Ground truth: letters by first occurrence, first occurrence unprimed.
  std::vector<std::optional<std::size_t>> letter(bases.size());
  std::vector<bool> flip(bases.size(), false);
  std::size_t next_letter = 0;
  std::vector<PatternToken> truth;
  for (const auto& [b, primed] : tokens) {
    if (!letter[b]) {
      letter[b] = next_letter++;
      flip[b] = primed;
    }
    truth.push_back({LetterLabel(*letter[b]), primed != flip[b]});
  }

  auto oriented_pose = [&](std::size_t seg, double alpha) {
    const auto& [b, primed] = tokens[seg];
    const Pose p = bases[b].PoseAt(alpha);
    return primed ? MirrorPose(p, perm) : p;
  };
  auto oriented_drift = [&](std::size_t seg) {
    const auto& [b, primed] = tokens[seg];
    return primed ? ReflectDirection(bases[b].drift) : bases[b].drift;
  };
  std::vector<Vec3> origin(spec.segment_count + 1, Vec3::Zero());
  for (std::size_t i = 0; i < spec.segment_count; ++i) {
    origin[i + 1] = origin[i] + oriented_drift(i);
  }

  const double last_beat = beats.times().back();
  const std::size_t frame_count =
      static_cast<std::size_t>(std::ceil((last_beat + 0.5 * period) * spec.fps)) + 1;
  std::vector<Frame> frames;
  frames.reserve(frame_count);
  for (std::size_t f = 0; f < frame_count; ++f) {
    const double t = static_cast<double>(f) / spec.fps;
    // Segment i covers [t_{2i}, t_{2i+1}]; the following gap is a transition.
    const double beat_pos = t / period;
    const std::size_t seg = static_cast<std::size_t>(std::floor(beat_pos / 2.0));
    Frame frame;
    if (seg >= spec.segment_count) {
      frame.pose = oriented_pose(spec.segment_count - 1, 1.0);
      frame.translation = origin[spec.segment_count];
    } else {
      const double within = beat_pos - 2.0 * static_cast<double>(seg);
      if (within <= 1.0) {
        frame.pose = oriented_pose(seg, within);
        frame.translation = origin[seg] + oriented_drift(seg) * Smoothstep(within);
      } else if (seg + 1 < spec.segment_count) {
        frame.pose = Slerp(oriented_pose(seg, 1.0), oriented_pose(seg + 1, 0.0),
                           Smoothstep(within - 1.0));
        frame.translation = origin[seg + 1];
      } else {
        frame.pose = oriented_pose(seg, 1.0);
        frame.translation = origin[seg + 1];
      }
    }
    if (spec.noise_sigma > 0.0) {
      for (AxisAngle& joint : frame.pose.joints) {
        const Vec3 noise(rng.Normal(), rng.Normal(), rng.Normal());
        joint = AxisAngle(joint.omega() + spec.noise_sigma * noise);
      }
    }
    frames.push_back(std::move(frame));
  }

  return {PoseSequence(spec.fps, perm, std::move(frames)), beats,
          ChoreoPattern(std::move(truth))};
}

}  // namespace

SyntheticInstance GenerateSynthetic(const SyntheticSpec& spec,
                                    const LabelThresholds& thresholds) {
  ValidateSpec(spec);
  Rng rng(spec.seed);
  const std::size_t base_count = spec.base_motion_count;
  const std::size_t mirrored_count = static_cast<std::size_t>(
      std::llround(spec.mirror_fraction * static_cast<double>(base_count)));

  std::vector<std::size_t> order(base_count);
  for (std::size_t b = 0; b < base_count; ++b) order[b] = b;
  rng.Shuffle(order);
  std::vector<bool> is_mirrored(base_count, false);
  for (std::size_t k = 0; k < mirrored_count; ++k) is_mirrored[order[k]] = true;

  const std::vector<BaseMotion> bases =
      SampleBases(rng, is_mirrored, JointPermutation::SmplxBody(),
                  SamplesPerSegment(spec), thresholds);

  // Every base once, every mirrored base once primed, the rest at random.
  Tokens tokens;
  for (std::size_t b = 0; b < base_count; ++b) {
    tokens.emplace_back(b, false);
    if (bases[b].mirrored) tokens.emplace_back(b, true);
  }
  while (tokens.size() < spec.segment_count) {
    const std::size_t b = rng.Index(base_count);
    tokens.emplace_back(b, bases[b].mirrored && rng.Bernoulli(0.5));
  }
  rng.Shuffle(tokens);
  return Render(spec, bases, tokens, rng);
}

SyntheticInstance GenerateForPattern(const ChoreoPattern& pattern, const SyntheticSpec& spec,
                                     const LabelThresholds& thresholds) {
  if (pattern.empty()) throw InvalidInput("planted pattern is empty");
  SyntheticSpec s = spec;
  s.segment_count = pattern.size();
  s.base_motion_count = pattern.Bases().size();
  s.mirror_fraction = 0.0;
  ValidateSpec(s);

  const std::vector<std::string> names = pattern.Bases();
  const std::set<std::string> primed = pattern.PrimedBases();
  std::vector<bool> is_mirrored;
  for (const std::string& name : names) is_mirrored.push_back(primed.contains(name));
  Rng rng(s.seed);
  const std::vector<BaseMotion> bases = SampleBases(
      rng, is_mirrored, JointPermutation::SmplxBody(), SamplesPerSegment(s), thresholds);
  Tokens tokens;
  for (const PatternToken& t : pattern.labels()) {
    const auto it = std::find(names.begin(), names.end(), t.base);
    tokens.emplace_back(static_cast<std::size_t>(it - names.begin()), t.primed);
  }
  return Render(s, bases, tokens, rng);
}

std::uint64_t DeriveSeed(std::uint64_t suite_seed, std::uint64_t index) {
  std::uint64_t z = suite_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<SyntheticSpec> StandardSuite(double noise_sigma, std::uint64_t suite_seed,
                                         std::size_t count) {
  std::vector<SyntheticSpec> suite;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(DeriveSeed(suite_seed, i));
    SyntheticSpec spec;
    spec.segment_count = 8 + 2 * rng.Index(5);
    // Room for every base plus one mirrored occurrence of half of them.
    std::size_t max_bases = 6;
    while (max_bases + static_cast<std::size_t>(std::llround(0.5 * max_bases)) >
           spec.segment_count) {
      --max_bases;
    }
    spec.base_motion_count = 3 + rng.Index(max_bases - 2);
    spec.mirror_fraction = 0.5;
    spec.noise_sigma = noise_sigma;
    spec.fps = rng.Bernoulli(0.5) ? 25.0 : 30.0;
    spec.bpm = std::round(rng.Uniform(100.0, 130.0));
    spec.seed = DeriveSeed(suite_seed ^ 0x5eedULL, i);
    suite.push_back(spec);
  }
  return suite;
}

EvalReport RunEval(const std::vector<SyntheticSpec>& suite,
                   const LabelThresholds& thresholds,
                   NmiNormalization normalization) {
  if (suite.empty()) throw InvalidInput("evaluation suite is empty");
  EvalReport report;
  report.instances.resize(suite.size());
  ParallelFor(suite.size(), [&](std::size_t i) {
    const SyntheticInstance inst = GenerateSynthetic(suite[i], thresholds);
    const LabelResult labels = LabelPipeline(inst.sequence, inst.beats, thresholds);
    InstanceReport& r = report.instances[i];
    r.spec = suite[i];
    r.truth = inst.truth;
    r.predicted = labels.pattern;
    r.metrics = EvaluatePattern(labels.pattern, inst.truth, normalization);
    r.max_intra_cluster_dtw = MaxIntraClusterDistance(labels.quantization, labels.dtw);
    for (const auto& c : labels.quantization.clusters()) {
      for (std::size_t x = 0; x < c.size(); ++x) {
        for (std::size_t y = x + 1; y < c.size(); ++y) {
          if (!(labels.dtw[c[x]][c[y]] < thresholds.eps_theta)) {
            ++r.cluster_contract_violations;
          }
        }
      }
    }
  });
  const double n = static_cast<double>(suite.size());
  for (const InstanceReport& r : report.instances) {
    report.mean.ari += r.metrics.ari;
    report.mean.nmi += r.metrics.nmi;
    report.mean.mirror_precision += r.metrics.mirror_precision;
    report.mean.mirror_recall += r.metrics.mirror_recall;
    report.mean.mirror_f1 += r.metrics.mirror_f1;
  }
  report.mean.ari /= n;
  report.mean.nmi /= n;
  report.mean.mirror_precision /= n;
  report.mean.mirror_recall /= n;
  report.mean.mirror_f1 /= n;
  return report;
}

FlowMatrix FabricateFlow(int keyframe_count, std::uint64_t seed, double m_low,
                         double m_high) {
  const KeyframeSet ks(keyframe_count);
  const int n = ks.size();
  Rng rng(seed);
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < keyframe_count; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      m[static_cast<std::size_t>(u) * n + v] = rng.Uniform(0.35 * m_low, 1.25 * m_high);
    }
  }
  for (int u = keyframe_count; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      m[static_cast<std::size_t>(u) * n + v] =
          m[static_cast<std::size_t>(ks.Mirror(u)) * n + ks.Mirror(v)];
    }
  }
  return FlowMatrix(keyframe_count, std::move(m));
}

}  // namespace choreokit
