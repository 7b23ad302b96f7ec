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

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace choreokit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// A rotation stored as axis * angle (radians). Construction canonicalizes the
// angle into [0, pi] so that equal rotations share one representation, up to
// the sign ambiguity at exactly pi.
class AxisAngle {
 public:
  AxisAngle() = default;
  explicit AxisAngle(const Vec3& omega);
  AxisAngle(double x, double y, double z) : AxisAngle(Vec3(x, y, z)) {}

  const Vec3& omega() const { return omega_; }
  double angle() const { return omega_.norm(); }

  friend bool operator==(const AxisAngle& a, const AxisAngle& b) {
    return a.omega_ == b.omega_;
  }

 private:
  Vec3 omega_ = Vec3::Zero();
};

// Maps any finite axis-angle vector to the equivalent one with angle <= pi.
// Throws InvalidInput on non-finite components.
Vec3 CanonicalizeAxisAngle(const Vec3& omega);

// Rodrigues' formula.
Mat3 RotationMatrix(const AxisAngle& rotation);

// Angle of a rotation matrix in [0, pi], from atan2(sin, cos) of the
// skew and trace parts.
double RotationAngle(const Mat3& rotation);

// ||log(R(a)^T R(b))||_F, i.e. sqrt(2) times the relative rotation angle.
double JointGeodesicDistance(const AxisAngle& a, const AxisAngle& b);

// Reflection across the sagittal (YZ) plane: (x, y, z) -> (x, -y, -z).
AxisAngle ReflectSagittal(const AxisAngle& rotation);

// Left/right joint swap. Always an involution; central joints map to
// themselves.
class JointPermutation {
 public:
  // Throws InvalidInput unless `perm` is an involution over [0, n) and every
  // index in `central` is a fixed point.
  JointPermutation(std::vector<int> perm, std::vector<int> central);

  static JointPermutation Identity(std::size_t joint_count);
  // Global orientation plus the 21 SMPL-X body joints.
  static JointPermutation SmplxBody();

  std::size_t size() const { return perm_.size(); }
  int operator[](std::size_t j) const { return perm_[j]; }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<int>& central() const { return central_; }

  friend bool operator==(const JointPermutation&,
                         const JointPermutation&) = default;

 private:
  std::vector<int> perm_;
  std::vector<int> central_;
};

inline constexpr std::size_t kSmplxBodyJointCount = 22;

// Index 0 is the global rotation, 1..J the body joints.
struct Pose {
  std::vector<AxisAngle> joints;

  std::size_t size() const { return joints.size(); }
  friend bool operator==(const Pose&, const Pose&) = default;
};

// What the summed per-joint distance is divided by.
enum class DistanceDivisor {
  kAllJoints,   // J + 1, a true mean over every summed term
  kBodyJoints,  // J, the literal divisor of the averaged-geodesic formula
};

// Mean per-joint geodesic distance. Throws InvalidInput on joint-count
// mismatch.
double PoseDistance(const Pose& a, const Pose& b,
                    DistanceDivisor divisor = DistanceDivisor::kAllJoints);

// Joint j of the result is the sagittal reflection of input joint perm[j].
Pose MirrorPose(const Pose& pose, const JointPermutation& perm);

bool IsSagittallySymmetric(const Pose& pose, const JointPermutation& perm);

// Displacement below this (meters) is treated as no motion.
inline constexpr double kStaticDisplacement = 1e-4;

// Normalized first-to-last displacement, or nullopt for a static segment.
// Throws InvalidInput with fewer than two samples.
std::optional<Vec3> SegmentDirection(std::span<const Vec3> translations);

// diag(-1, 1, 1) * d.
Vec3 ReflectDirection(const Vec3& direction);

struct Frame {
  Pose pose;
  Vec3 translation = Vec3::Zero();

  friend bool operator==(const Frame&, const Frame&) = default;
};

// A fixed-rate pose recording sharing one skeleton.
class PoseSequence {
 public:
  // Throws InvalidInput if fps <= 0 or any frame's joint count differs from
  // the permutation size.
  PoseSequence(double fps, JointPermutation permutation,
               std::vector<Frame> frames);

  double fps() const { return fps_; }
  std::size_t joint_count() const { return permutation_.size(); }
  const JointPermutation& permutation() const { return permutation_; }
  const std::vector<Frame>& frames() const { return frames_; }
  std::size_t size() const { return frames_.size(); }

  // Mirror every pose and reflect every translation.
  PoseSequence Mirrored() const;

  friend bool operator==(const PoseSequence&, const PoseSequence&) = default;

 private:
  double fps_;
  JointPermutation permutation_;
  std::vector<Frame> frames_;
};

}  // namespace choreokit
