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

#include <limits>

#include "choreokit/dtw.h"
#include "choreokit/error.h"
#include "dtw_oracle.h"
#include "test_util.h"

using namespace choreokit;
using choreokit::testing::TestRng;

TEST_CASE("identical segments are at distance zero") {
  TestRng rng(1);
  const MotionSegment s = rng.RandomSegment(7);
  CHECK(DtwDistance(s, s) == 0.0);
}

TEST_CASE("single-pose segments reduce to the pose distance") {
  TestRng rng(2);
  const MotionSegment a = rng.RandomSegment(1), b = rng.RandomSegment(1);
  CHECK(DtwDistance(a, b) == PoseDistance(a.poses[0], b.poses[0]));
}

TEST_CASE("dtw matches the exhaustive recursive oracle") {
  TestRng rng(3);
  for (int i = 0; i < 60; ++i) {
    const MotionSegment a = rng.RandomSegment(rng.Int(1, 8));
    const MotionSegment b = rng.RandomSegment(rng.Int(1, 8));
    CHECK(DtwDistance(a, b) == doctest::Approx(testing::OracleDtw(a, b)).epsilon(1e-12));
  }
  const MotionSegment a = rng.RandomSegment(8), b = rng.RandomSegment(8);
  CHECK(std::abs(DtwDistance(a, b) - testing::OracleDtw(a, b)) < 1e-9);
}

TEST_CASE("equal-cost paths prefer the shorter one") {
  const WarpPathCost zero = AlignSequences(3, 5, [](std::size_t, std::size_t) { return 0.0; });
  CHECK(zero.total == 0.0);
  CHECK(zero.length == 5);
  const WarpPathCost diag = AlignSequences(
      4, 4, [](std::size_t, std::size_t) { return 1.0; });
  CHECK(diag.length == 4);
  CHECK(diag.normalized() == 1.0);
}

TEST_CASE("dtw is symmetric and mirror invariant") {
  TestRng rng(4);
  const JointPermutation perm = JointPermutation::SmplxBody();
  for (int i = 0; i < 30; ++i) {
    const MotionSegment a = rng.RandomSegment(rng.Int(2, 9));
    const MotionSegment b = rng.RandomSegment(rng.Int(2, 9));
    CHECK(DtwDistance(a, b) == doctest::Approx(DtwDistance(b, a)).epsilon(1e-12));
    CHECK(DtwDistance(MirrorSegment(a, perm), MirrorSegment(b, perm)) ==
          doctest::Approx(DtwDistance(a, b)).epsilon(1e-12));
    CHECK(MirrorSegment(MirrorSegment(a, perm), perm).poses == a.poses);
  }
}

TEST_CASE("a segment of symmetric poses is its own mirror") {
  const JointPermutation perm = JointPermutation::SmplxBody();
  TestRng rng(5);
  MotionSegment s;
  for (int k = 0; k < 6; ++k) {
    Pose p;
    p.joints.resize(22);
    for (std::size_t j = 0; j < 22; ++j) {
      const std::size_t m = static_cast<std::size_t>(perm[j]);
      if (m == j) p.joints[j] = AxisAngle(rng.Uniform(-1, 1), 0, 0);
      else if (m > j) {
        p.joints[j] = rng.Rotation(1.0);
        p.joints[m] = ReflectSagittal(p.joints[j]);
      }
    }
    s.poses.push_back(p);
    s.translations.push_back(Vec3::Zero());
  }
  CHECK(DtwDistance(MirrorSegment(s, perm), s) == 0.0);
}

TEST_CASE("distance matrices") {
  TestRng rng(6);
  const JointPermutation perm = JointPermutation::SmplxBody();
  std::vector<MotionSegment> segs;
  for (int i = 0; i < 6; ++i) segs.push_back(rng.RandomSegment(rng.Int(3, 7)));
  const DistanceMatrix d = PairwiseDtw(segs);
  const DistanceMatrix m = MirroredDtw(segs, perm);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    CHECK(d[i][i] == 0.0);
    for (std::size_t j = 0; j < segs.size(); ++j) {
      CHECK(d[i][j] == d[j][i]);
      CHECK(d[i][j] == doctest::Approx(DtwDistance(segs[i], segs[j])).epsilon(1e-12));
      CHECK(m[i][j] == doctest::Approx(DtwDistance(MirrorSegment(segs[i], perm), segs[j]))
                           .epsilon(1e-12));
    }
  }
}

TEST_CASE("empty segments are rejected") {
  TestRng rng(7);
  CHECK_THROWS_AS(DtwDistance(MotionSegment{}, rng.RandomSegment(3)), Error);
}
