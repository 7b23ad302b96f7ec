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

#include <cstddef>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "choreokit/pattern.h"

namespace choreokit {

// Cluster id per element. Ids are arbitrary; only equality matters.
using Partition = std::vector<std::size_t>;

// Hubert-Arabie adjusted Rand index from the contingency table. Identical
// trivial partitions (all singletons, or one block) score 1. Throws
// InvalidInput when the partitions cover different numbers of elements.
double AdjustedRandIndex(std::span<const std::size_t> pred,
                         std::span<const std::size_t> truth);

enum class NmiNormalization { kArithmetic, kGeometric };

// Mutual information over the mean entropy. Identical partitions score 1;
// otherwise a zero-entropy side scores 0.
double NormalizedMutualInformation(
    std::span<const std::size_t> pred, std::span<const std::size_t> truth,
    NmiNormalization normalization = NmiNormalization::kArithmetic);

// Unordered segment pair, stored as (smaller, larger).
using SegmentPair = std::pair<std::size_t, std::size_t>;

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set precision/recall/F1 of predicted against true pairs. An empty
// prediction has precision 0; when both sets are empty every score is 1.
PrecisionRecall MirrorPairPrf(const std::set<SegmentPair>& pred,
                              const std::set<SegmentPair>& truth);

// Every (X, X') segment pair of the pattern.
std::set<SegmentPair> MirrorSegmentPairs(const ChoreoPattern& pattern);

// One block per distinct token; X and X' are different blocks.
Partition TokenPartition(const ChoreoPattern& pattern);

struct LabelMetrics {
  double ari = 0.0;
  double nmi = 0.0;
  double mirror_precision = 0.0;
  double mirror_recall = 0.0;
  double mirror_f1 = 0.0;
};

// Throws InvalidInput when the patterns differ in length.
LabelMetrics EvaluatePattern(
    const ChoreoPattern& pred, const ChoreoPattern& truth,
    NmiNormalization normalization = NmiNormalization::kArithmetic);

}  // namespace choreokit
