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

#include "choreokit/pose.h"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "choreokit/error.h"

namespace choreokit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Slack for the rounding in norm().
constexpr double kCanonicalSlack = 1e-12;

Mat3 Skew(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

}  // namespace

Vec3 CanonicalizeAxisAngle(const Vec3& omega) {
  if (!omega.allFinite()) {
    throw InvalidInput("axis-angle rotation has non-finite components");
  }
  const double angle = omega.norm();
  if (angle <= kPi + kCanonicalSlack) return omega;
  const Vec3 axis = omega / angle;
  const double reduced = std::fmod(angle, kTwoPi);
  if (reduced > kPi) return -(kTwoPi - reduced) * axis;
  return reduced * axis;
}

AxisAngle::AxisAngle(const Vec3& omega)
    : omega_(CanonicalizeAxisAngle(omega)) {}

Mat3 RotationMatrix(const AxisAngle& rotation) {
  const Vec3& w = rotation.omega();
  const double theta2 = w.squaredNorm();
  double a;  // sin(theta) / theta
  double b;  // (1 - cos(theta)) / theta^2
  if (theta2 < 1e-10) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    const double theta = std::sqrt(theta2);
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 k = Skew(w);
  return Mat3::Identity() + a * k + b * k * k;
}

double RotationAngle(const Mat3& r) {
  const Vec3 skew(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  const double sin_theta = 0.5 * skew.norm();
  const double cos_theta = 0.5 * (r.trace() - 1.0);
  return std::atan2(sin_theta, cos_theta);
}

double JointGeodesicDistance(const AxisAngle& a, const AxisAngle& b) {
  if (a == b) return 0.0;
  const Mat3 relative = RotationMatrix(a).transpose() * RotationMatrix(b);
  return std::numbers::sqrt2 * RotationAngle(relative);
}

AxisAngle ReflectSagittal(const AxisAngle& rotation) {
  const Vec3& w = rotation.omega();
  return AxisAngle(Vec3(w.x(), -w.y(), -w.z()));
}

JointPermutation::JointPermutation(std::vector<int> perm,
                                   std::vector<int> central)
    : perm_(std::move(perm)), central_(std::move(central)) {
  const int n = static_cast<int>(perm_.size());
  for (int j = 0; j < n; ++j) {
    const int p = perm_[j];
    if (p < 0 || p >= n) {
      throw InvalidInput("joint permutation entry " + std::to_string(j) +
                         " is out of range");
    }
    if (perm_[p] != j) {
      throw InvalidInput("joint permutation is not an involution at joint " +
                         std::to_string(j));
    }
  }
  for (int c : central_) {
    if (c < 0 || c >= n) {
      throw InvalidInput("central joint " + std::to_string(c) +
                         " is out of range");
    }
    if (perm_[c] != c) {
      throw InvalidInput("central joint " + std::to_string(c) +
                         " is not a fixed point of the permutation");
    }
  }
}

JointPermutation JointPermutation::Identity(std::size_t joint_count) {
  std::vector<int> perm(joint_count);
  for (std::size_t j = 0; j < joint_count; ++j) perm[j] = static_cast<int>(j);
  return JointPermutation(perm, perm);
}

JointPermutation JointPermutation::SmplxBody() {
  // 0 global/pelvis, 1/2 hips, 3 spine1, 4/5 knees, 6 spine2, 7/8 ankles,
  // 9 spine3, 10/11 feet, 12 neck, 13/14 collars, 15 head, 16/17 shoulders,
  // 18/19 elbows, 20/21 wrists.
  std::vector<int> perm = {0,  2,  1,  3,  5,  4,  6,  8,  7,  9,  11,
                           10, 12, 14, 13, 15, 17, 16, 19, 18, 21, 20};
  return JointPermutation(std::move(perm), {0, 3, 6, 9, 12, 15});
}

double PoseDistance(const Pose& a, const Pose& b, DistanceDivisor divisor) {
  if (a.size() != b.size()) {
    throw InvalidInput("pose joint counts differ (" + std::to_string(a.size()) +
                       " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    sum += JointGeodesicDistance(a.joints[j], b.joints[j]);
  }
  std::size_t denom = a.size();
  if (divisor == DistanceDivisor::kBodyJoints && denom > 1) --denom;
  return sum / static_cast<double>(denom);
}

Pose MirrorPose(const Pose& pose, const JointPermutation& perm) {
  if (pose.size() != perm.size()) {
    throw InvalidInput("pose has " + std::to_string(pose.size()) +
                       " joints but the permutation covers " +
                       std::to_string(perm.size()));
  }
  Pose out;
  out.joints.reserve(pose.size());
  for (std::size_t j = 0; j < pose.size(); ++j) {
    out.joints.push_back(ReflectSagittal(pose.joints[perm[j]]));
  }
  return out;
}

bool IsSagittallySymmetric(const Pose& pose, const JointPermutation& perm) {
  return MirrorPose(pose, perm) == pose;
}

std::optional<Vec3> SegmentDirection(std::span<const Vec3> translations) {
  if (translations.size() < 2) {
    throw InvalidInput("motion direction needs at least two translation samples");
  }
  const Vec3 displacement = translations.back() - translations.front();
  const double norm = displacement.norm();
  if (!(norm >= kStaticDisplacement)) return std::nullopt;
  return Vec3(displacement / norm);
}

Vec3 ReflectDirection(const Vec3& direction) {
  return Vec3(-direction.x(), direction.y(), direction.z());
}

PoseSequence::PoseSequence(double fps, JointPermutation permutation,
                           std::vector<Frame> frames)
    : fps_(fps), permutation_(std::move(permutation)), frames_(std::move(frames)) {
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    throw InvalidInput("pose sequence fps must be positive");
  }
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    if (frames_[i].pose.size() != permutation_.size()) {
      throw InvalidInput("frame " + std::to_string(i) + " has " +
                         std::to_string(frames_[i].pose.size()) +
                         " joints, expected " +
                         std::to_string(permutation_.size()));
    }
    if (!frames_[i].translation.allFinite()) {
      throw InvalidInput("frame " + std::to_string(i) +
                         " has a non-finite translation");
    }
  }
}

PoseSequence PoseSequence::Mirrored() const {
  std::vector<Frame> out;
  out.reserve(frames_.size());
  for (const Frame& f : frames_) {
    out.push_back({MirrorPose(f.pose, permutation_), ReflectDirection(f.translation)});
  }
  return PoseSequence(fps_, permutation_, std::move(out));
}

}  // namespace choreokit
