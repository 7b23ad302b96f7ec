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

#include "choreokit/labeling.h"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include "choreokit/error.h"

namespace choreokit {

Clustering::Clustering(std::vector<std::vector<std::size_t>> clusters,
                       std::size_t element_count)
    : clusters_(std::move(clusters)), element_count_(element_count) {
  std::vector<bool> seen(element_count_, false);
  for (auto& c : clusters_) {
    if (c.empty()) throw InvalidInput("clustering contains an empty cluster");
    std::sort(c.begin(), c.end());
    for (std::size_t e : c) {
      if (e >= element_count_) {
        throw InvalidInput("cluster member " + std::to_string(e) +
                           " is out of range");
      }
      if (seen[e]) {
        throw InvalidInput("element " + std::to_string(e) +
                           " belongs to more than one cluster");
      }
      seen[e] = true;
    }
  }
  for (std::size_t e = 0; e < element_count_; ++e) {
    if (!seen[e]) {
      throw InvalidInput("element " + std::to_string(e) + " is in no cluster");
    }
  }
  std::sort(clusters_.begin(), clusters_.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
}

std::vector<std::size_t> Clustering::Assignment() const {
  std::vector<std::size_t> out(element_count_, 0);
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    for (std::size_t e : clusters_[c]) out[e] = c;
  }
  return out;
}

Clustering ClusterSegments(const DistanceMatrix& distances, double eps_theta) {
  if (!(eps_theta > 0.0)) throw InvalidInput("eps_theta must be positive");
  const std::size_t n = distances.size();
  for (const auto& row : distances) {
    if (row.size() != n) throw InvalidInput("distance matrix is not square");
  }
  std::vector<std::vector<std::size_t>> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = {i};
  // linkage[a][b]: largest member distance between active clusters a and b.
  DistanceMatrix linkage = distances;

  while (active.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    // Active clusters are kept ordered by leading member, so scanning a < b
    // in order breaks exact ties toward the smallest leading members.
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        if (linkage[a][b] < best) {
          best = linkage[a][b];
          best_a = a;
          best_b = b;
        }
      }
    }
    if (!(best < eps_theta)) break;

    active[best_a].insert(active[best_a].end(), active[best_b].begin(),
                          active[best_b].end());
    std::sort(active[best_a].begin(), active[best_a].end());
    for (std::size_t c = 0; c < active.size(); ++c) {
      const double merged = std::max(linkage[best_a][c], linkage[best_b][c]);
      linkage[best_a][c] = merged;
      linkage[c][best_a] = merged;
    }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
    linkage.erase(linkage.begin() + static_cast<std::ptrdiff_t>(best_b));
    for (auto& row : linkage) {
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(best_b));
    }
  }
  return Clustering(std::move(active), n);
}

double MaxIntraClusterDistance(const Clustering& clustering,
                               const DistanceMatrix& distances) {
  double worst = 0.0;
  for (const auto& c : clustering.clusters()) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      for (std::size_t y = x + 1; y < c.size(); ++y) {
        worst = std::max(worst, distances[c[x]][c[y]]);
      }
    }
  }
  return worst;
}

std::vector<MirrorPair> DetectMirroredClusters(const Clustering& clustering,
                                               const DistanceMatrix& mirrored,
                                               double eps_theta_prime) {
  if (!(eps_theta_prime > 0.0)) {
    throw InvalidInput("eps_theta_prime must be positive");
  }
  std::vector<MirrorPair> candidates;
  for (std::size_t a = 0; a < clustering.size(); ++a) {
    for (std::size_t b = a + 1; b < clustering.size(); ++b) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i : clustering[a]) {
        for (std::size_t j : clustering[b]) {
          best = std::min({best, mirrored[i][j], mirrored[j][i]});
        }
      }
      if (best < eps_theta_prime) candidates.push_back({a, b, best});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const MirrorPair& x, const MirrorPair& y) {
              return std::tie(x.distance, x.a, x.b) <
                     std::tie(y.distance, y.a, y.b);
            });
  std::vector<bool> taken(clustering.size(), false);
  std::vector<MirrorPair> out;
  for (const MirrorPair& p : candidates) {
    if (taken[p.a] || taken[p.b]) continue;
    taken[p.a] = taken[p.b] = true;
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const MirrorPair& x, const MirrorPair& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

namespace {

bool Augment(std::size_t left,
             const std::vector<std::vector<std::size_t>>& adjacency,
             std::vector<bool>& visited,
             std::vector<std::optional<std::size_t>>& match_of_right) {
  for (std::size_t r : adjacency[left]) {
    if (visited[r]) continue;
    visited[r] = true;
    if (!match_of_right[r] ||
        Augment(*match_of_right[r], adjacency, visited, match_of_right)) {
      match_of_right[r] = left;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::optional<std::size_t>> MaxBipartiteMatching(
    const std::vector<std::vector<std::size_t>>& adjacency,
    std::size_t right_count) {
  std::vector<std::optional<std::size_t>> match_of_right(right_count);
  for (std::size_t l = 0; l < adjacency.size(); ++l) {
    std::vector<bool> visited(right_count, false);
    Augment(l, adjacency, visited, match_of_right);
  }
  std::vector<std::optional<std::size_t>> match_of_left(adjacency.size());
  for (std::size_t r = 0; r < right_count; ++r) {
    if (match_of_right[r]) match_of_left[*match_of_right[r]] = r;
  }
  return match_of_left;
}

std::optional<DirectionSplit> PartitionByDirection(
    std::span<const std::size_t> cluster,
    const std::vector<MotionSegment>& segments, double eps_direction) {
  if (!(eps_direction > 0.0)) {
    throw InvalidInput("eps_direction must be positive");
  }
  if (cluster.size() < 2) return std::nullopt;
  std::vector<std::optional<Vec3>> dirs;
  dirs.reserve(cluster.size());
  for (std::size_t s : cluster) {
    const MotionSegment& seg = segments.at(s);
    dirs.push_back(seg.translations.size() >= 2
                       ? SegmentDirection(seg.translations)
                       : std::nullopt);
  }

  std::vector<std::vector<std::size_t>> adjacency(cluster.size());
  for (std::size_t k = 0; k < cluster.size(); ++k) {
    if (!dirs[k]) continue;
    const Vec3 reflected = ReflectDirection(*dirs[k]);
    for (std::size_t l = 0; l < cluster.size(); ++l) {
      if (l == k || !dirs[l]) continue;
      if ((reflected - *dirs[l]).norm() < eps_direction) adjacency[k].push_back(l);
    }
  }
  const auto match = MaxBipartiteMatching(adjacency, cluster.size());

  DirectionSplit split;
  std::optional<Vec3> reference;
  for (std::size_t k = 0; k < cluster.size(); ++k) {
    if (!match[k]) continue;
    const std::size_t l = *match[k];
    if (k < l) split.matched.emplace_back(cluster[k], cluster[l]);
    // Directions that are their own reflection match each other but say
    // nothing about left versus right.
    const Vec3 separation = *dirs[k] - *dirs[l];
    if (!reference && separation.norm() >= eps_direction) {
      reference = separation.normalized();
    }
  }
  if (!reference) return std::nullopt;

  for (std::size_t k = 0; k < cluster.size(); ++k) {
    if (dirs[k] && dirs[k]->dot(*reference) < 0.0) {
      split.group1.push_back(cluster[k]);
    } else {
      split.group0.push_back(cluster[k]);
    }
  }
  if (split.group0.empty() || split.group1.empty()) return std::nullopt;
  std::sort(split.group0.begin(), split.group0.end());
  std::sort(split.group1.begin(), split.group1.end());
  return split;
}

ChoreoPattern AssignLabels(const Clustering& clustering,
                           const std::vector<MirrorPair>& mirror_pairs) {
  std::vector<std::optional<std::size_t>> partner(clustering.size());
  for (const MirrorPair& p : mirror_pairs) {
    if (p.a >= clustering.size() || p.b >= clustering.size() || p.a == p.b) {
      throw InvalidInput("mirror pair references an invalid cluster");
    }
    if (partner[p.a] || partner[p.b]) {
      throw InvalidInput("cluster appears in more than one mirror pair");
    }
    partner[p.a] = p.b;
    partner[p.b] = p.a;
  }
  std::vector<std::optional<PatternToken>> token(clustering.size());
  std::size_t next_letter = 0;
  // Clustering keeps clusters ordered by earliest segment.
  for (std::size_t c = 0; c < clustering.size(); ++c) {
    if (token[c]) continue;
    const std::string base = LetterLabel(next_letter++);
    token[c] = PatternToken{base, false};
    if (partner[c]) token[*partner[c]] = PatternToken{base, true};
  }
  std::vector<PatternToken> labels(clustering.element_count());
  for (std::size_t c = 0; c < clustering.size(); ++c) {
    for (std::size_t e : clustering[c]) labels[e] = *token[c];
  }
  return ChoreoPattern(std::move(labels));
}

LabelResult LabelSegments(const std::vector<MotionSegment>& segments,
                          const JointPermutation& perm,
                          const LabelThresholds& thresholds) {
  LabelResult result;
  const std::size_t n = segments.size();
  result.dtw = PairwiseDtw(segments, thresholds.divisor);
  result.quantization = ClusterSegments(result.dtw, thresholds.eps_theta);
  const DistanceMatrix mirrored = MirroredDtw(segments, perm, thresholds.divisor);
  const std::vector<MirrorPair> pose_pairs = DetectMirroredClusters(
      result.quantization, mirrored, thresholds.eps_theta_prime);

  std::vector<bool> paired(result.quantization.size(), false);
  for (const MirrorPair& p : pose_pairs) paired[p.a] = paired[p.b] = true;

  // Refine: unpaired clusters may split into two direction-mirrored groups.
  // Each refined cluster remembers its partner by leading segment.
  std::vector<std::vector<std::size_t>> refined;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_by_leader;
  std::map<std::size_t, double> pair_distance;
  for (const MirrorPair& p : pose_pairs) {
    pairs_by_leader.emplace_back(result.quantization[p.a].front(),
                                 result.quantization[p.b].front());
    pair_distance[result.quantization[p.a].front()] = p.distance;
  }
  for (std::size_t c = 0; c < result.quantization.size(); ++c) {
    const auto& members = result.quantization[c];
    if (!paired[c]) {
      if (auto split = PartitionByDirection(members, segments,
                                            thresholds.eps_direction)) {
        pairs_by_leader.emplace_back(split->group0.front(),
                                     split->group1.front());
        refined.push_back(std::move(split->group0));
        refined.push_back(std::move(split->group1));
        continue;
      }
    }
    refined.push_back(members);
  }
  result.clusters = Clustering(std::move(refined), n);

  std::map<std::size_t, std::size_t> cluster_of_leader;
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    cluster_of_leader[result.clusters[c].front()] = c;
  }
  for (const auto& [la, lb] : pairs_by_leader) {
    std::size_t a = cluster_of_leader.at(la);
    std::size_t b = cluster_of_leader.at(lb);
    if (a > b) std::swap(a, b);
    const auto it = pair_distance.find(la);
    result.mirror_pairs.push_back(
        {a, b, it == pair_distance.end() ? 0.0 : it->second});
  }
  std::sort(result.mirror_pairs.begin(), result.mirror_pairs.end(),
            [](const MirrorPair& x, const MirrorPair& y) {
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });

  result.pattern = AssignLabels(result.clusters, result.mirror_pairs);
  for (const auto& c : result.clusters.clusters()) {
    result.cluster_labels.push_back(result.pattern[c.front()].ToString());
    std::size_t medoid = c.front();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i : c) {
      double sum = 0.0;
      for (std::size_t j : c) sum += result.dtw[i][j];
      if (sum < best) {
        best = sum;
        medoid = i;
      }
    }
    result.representatives.push_back(medoid);
  }
  return result;
}

LabelResult LabelPipeline(const PoseSequence& sequence, const BeatGrid& beats,
                          const LabelThresholds& thresholds) {
  return LabelSegments(BuildSegments(sequence, beats), sequence.permutation(),
                       thresholds);
}

}  // namespace choreokit
