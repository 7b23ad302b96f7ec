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

#include <algorithm>
#include <numeric>

#include "choreokit/error.h"
#include "choreokit/metrics.h"
#include "metrics_oracle.h"
#include "test_util.h"

using namespace choreokit;
using choreokit::testing::TestRng;

namespace {

Partition RandomPartition(TestRng& rng, std::size_t n, int blocks) {
  Partition p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(static_cast<std::size_t>(rng.Int(0, blocks - 1)));
  return p;
}

Partition Relabel(const Partition& p, TestRng& rng) {
  std::vector<std::size_t> ids(*std::max_element(p.begin(), p.end()) + 1);
  std::iota(ids.begin(), ids.end(), 100);
  std::shuffle(ids.begin(), ids.end(), rng.engine());
  Partition out;
  for (std::size_t x : p) out.push_back(ids[x]);
  return out;
}

}  // namespace

TEST_CASE("identical partitions score one") {
  const Partition p{0, 0, 1, 2, 2, 2};
  CHECK(AdjustedRandIndex(p, p) == 1.0);
  CHECK(NormalizedMutualInformation(p, p) == 1.0);
  CHECK(NormalizedMutualInformation(p, p, NmiNormalization::kGeometric) == 1.0);
}

TEST_CASE("singletons against one block") {
  for (std::size_t n = 2; n < 10; ++n) {
    Partition singles(n), one(n, 0);
    std::iota(singles.begin(), singles.end(), 0);
    CHECK(AdjustedRandIndex(singles, one) == 0.0);
    CHECK(testing::OracleAri(singles, one) == 0.0);
    CHECK(NormalizedMutualInformation(singles, one) == 0.0);
  }
}

TEST_CASE("hand-computed four-element mutual information") {
  CHECK(NormalizedMutualInformation(Partition{0, 0, 1, 1}, Partition{0, 1, 0, 1}) ==
        doctest::Approx(0.0));
  CHECK(NormalizedMutualInformation(Partition{0, 0, 1, 1}, Partition{0, 0, 0, 1}) ==
        doctest::Approx(0.343715).epsilon(1e-5));
}

TEST_CASE("metrics match direct-formula oracles") {
  TestRng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.Int(1, 14));
    const Partition a = RandomPartition(rng, n, rng.Int(1, 5));
    const Partition b = RandomPartition(rng, n, rng.Int(1, 5));
    CHECK(std::abs(AdjustedRandIndex(a, b) - testing::OracleAri(a, b)) < 1e-12);
    CHECK(std::abs(NormalizedMutualInformation(a, b) - testing::OracleNmi(a, b)) < 1e-12);
    CHECK(std::abs(NormalizedMutualInformation(a, b, NmiNormalization::kGeometric) -
                   testing::OracleNmi(a, b, true)) < 1e-12);
    const double nmi = NormalizedMutualInformation(a, b);
    CHECK(nmi >= 0.0);
    CHECK(nmi <= 1.0 + 1e-12);
  }
}

TEST_CASE("relabeling clusters changes nothing") {
  TestRng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.Int(2, 14));
    const Partition a = RandomPartition(rng, n, rng.Int(1, 5));
    const Partition b = RandomPartition(rng, n, rng.Int(1, 5));
    const Partition ra = Relabel(a, rng), rb = Relabel(b, rng);
    CHECK(AdjustedRandIndex(ra, rb) == AdjustedRandIndex(a, b));
    CHECK(NormalizedMutualInformation(ra, rb) == NormalizedMutualInformation(a, b));
    CHECK(NormalizedMutualInformation(rb, ra) == NormalizedMutualInformation(b, a));
  }
}

TEST_CASE("partitions over different element counts are rejected") {
  CHECK_THROWS_AS(AdjustedRandIndex(Partition{0, 1}, Partition{0, 1, 2}), Error);
  CHECK_THROWS_AS(NormalizedMutualInformation(Partition{0}, Partition{0, 1}), Error);
}

TEST_CASE("mirror pair precision and recall") {
  const std::set<SegmentPair> truth{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  const PrecisionRecall same = MirrorPairPrf(truth, truth);
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f1 == 1.0);
  const PrecisionRecall none = MirrorPairPrf({}, truth);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);
  const PrecisionRecall half = MirrorPairPrf({{0, 1}, {2, 3}, {0, 5}, {1, 6}}, truth);
  CHECK(half.precision == 0.5);
  CHECK(half.recall == 0.5);
  CHECK(half.f1 == 0.5);
  const PrecisionRecall spurious = MirrorPairPrf({{0, 1}, {8, 9}}, truth);
  CHECK(spurious.precision == 0.5);
  CHECK(spurious.recall == 0.25);
  CHECK(spurious.f1 == doctest::Approx(2 * 0.5 * 0.25 / 0.75));
  const PrecisionRecall empty = MirrorPairPrf({}, {});
  CHECK(empty.f1 == 1.0);
}

TEST_CASE("f1 is the harmonic mean on random pair sets") {
  TestRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::set<SegmentPair> a, b;
    for (int k = 0; k < rng.Int(0, 6); ++k) a.emplace(rng.Int(0, 4), rng.Int(5, 9));
    for (int k = 0; k < rng.Int(0, 6); ++k) b.emplace(rng.Int(0, 4), rng.Int(5, 9));
    const PrecisionRecall r = MirrorPairPrf(a, b);
    if (a.empty() && b.empty()) continue;
    double hits = 0;
    for (const auto& p : a) hits += b.count(p);
    CHECK(r.precision == (a.empty() ? 0.0 : hits / a.size()));
    CHECK(r.recall == (b.empty() ? 0.0 : hits / b.size()));
    const double pr = r.precision + r.recall;
    CHECK(r.f1 == (pr > 0 ? 2 * r.precision * r.recall / pr : 0.0));
  }
}

TEST_CASE("pattern level metrics") {
  const ChoreoPattern truth = ParsePattern("A-A'-B-A");
  CHECK(MirrorSegmentPairs(truth) == std::set<SegmentPair>{{0, 1}, {1, 3}});
  CHECK(TokenPartition(truth) == Partition{0, 1, 2, 0});
  const LabelMetrics same = EvaluatePattern(ParsePattern("C-C'-D-C"), truth);
  CHECK(same.ari == 1.0);
  CHECK(same.nmi == 1.0);
  CHECK(same.mirror_f1 == 1.0);
  const LabelMetrics flat = EvaluatePattern(ParsePattern("A-B-C-A"), truth);
  CHECK(flat.ari == 1.0);
  CHECK(flat.mirror_recall == 0.0);
  CHECK_THROWS_AS(EvaluatePattern(ParsePattern("A"), truth), Error);
}
