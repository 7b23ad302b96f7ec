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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "choreokit/dtw.h"
#include "choreokit/pattern.h"
#include "choreokit/pose.h"
#include "choreokit/segmentation.h"

namespace choreokit {

struct LabelThresholds {
  double eps_theta = 0.21;         // same-cluster DTW bound
  double eps_theta_prime = 0.25;   // mirrored-cluster DTW bound
  double eps_direction = 0.1;      // reflected-direction match bound
  DistanceDivisor divisor = DistanceDivisor::kAllJoints;
};

// A partition of [0, n) into disjoint, covering clusters. Members are kept
// sorted and clusters ordered by their smallest member.
class Clustering {
 public:
  Clustering() = default;
  // Throws InvalidInput unless `clusters` partitions [0, element_count) into
  // nonempty sets.
  Clustering(std::vector<std::vector<std::size_t>> clusters,
             std::size_t element_count);

  const std::vector<std::vector<std::size_t>>& clusters() const {
    return clusters_;
  }
  std::size_t size() const { return clusters_.size(); }
  std::size_t element_count() const { return element_count_; }
  const std::vector<std::size_t>& operator[](std::size_t c) const {
    return clusters_[c];
  }
  // Cluster index of every element.
  std::vector<std::size_t> Assignment() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<std::vector<std::size_t>> clusters_;
  std::size_t element_count_ = 0;
};

// Complete-linkage agglomeration on a precomputed distance matrix. Two
// clusters merge only while the largest pairwise distance in the union stays
// below eps_theta. Exact linkage ties merge the pair with the smallest
// leading members first.
Clustering ClusterSegments(const DistanceMatrix& distances, double eps_theta);

// Largest pairwise distance inside any cluster (0 for singletons).
double MaxIntraClusterDistance(const Clustering& clustering,
                               const DistanceMatrix& distances);

// Clusters a and b, a != b, whose segments mirror one another.
struct MirrorPair {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance = 0.0;  // smallest mirrored DTW between the two clusters

  friend bool operator==(const MirrorPair&, const MirrorPair&) = default;
};

// `mirrored(i, j)` is the DTW between mirror(segment i) and segment j. A
// cluster pair qualifies when some cross pair falls below eps_theta_prime.
// Qualifying pairs are committed in ascending distance so each cluster joins
// at most one pair. A cluster is never paired with itself.
std::vector<MirrorPair> DetectMirroredClusters(const Clustering& clustering,
                                               const DistanceMatrix& mirrored,
                                               double eps_theta_prime);

// Maximum-cardinality bipartite matching (augmenting paths). `adjacency[l]`
// lists the right vertices l may match. Returns match_of_left, with nullopt
// for unmatched left vertices.
std::vector<std::optional<std::size_t>> MaxBipartiteMatching(
    const std::vector<std::vector<std::size_t>>& adjacency,
    std::size_t right_count);

struct DirectionSplit {
  std::vector<std::size_t> group0;  // segment indices, sorted
  std::vector<std::size_t> group1;
  // Matched (segment, segment) pairs whose reflected directions agree.
  std::vector<std::pair<std::size_t, std::size_t>> matched;
};

// Splits one cluster into two directionally mirrored groups, or returns
// nullopt when no pair of its segments moves in reflected directions.
// Segments are split by the sign of their direction against the separating
// direction of the first matched pair; static and orthogonal segments go to
// group0.
std::optional<DirectionSplit> PartitionByDirection(
    std::span<const std::size_t> cluster,
    const std::vector<MotionSegment>& segments, double eps_direction);

// One label per segment. Clusters are visited by earliest segment; the
// first cluster of a mirror pair takes the unprimed label.
ChoreoPattern AssignLabels(const Clustering& clustering,
                           const std::vector<MirrorPair>& mirror_pairs);

struct LabelResult {
  ChoreoPattern pattern;
  Clustering quantization;  // pose clusters before direction splitting
  Clustering clusters;      // final clusters, one per label token
  std::vector<MirrorPair> mirror_pairs;  // indices into `clusters`
  std::vector<std::string> cluster_labels;
  std::vector<std::size_t> representatives;  // medoid segment per cluster
  DistanceMatrix dtw;
};

LabelResult LabelSegments(const std::vector<MotionSegment>& segments,
                          const JointPermutation& perm,
                          const LabelThresholds& thresholds = {});

LabelResult LabelPipeline(const PoseSequence& sequence, const BeatGrid& beats,
                          const LabelThresholds& thresholds = {});

}  // namespace choreokit
