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

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace choreokit {

// K input keyframes plus their mirrors: ids 0..K-1 are originals and id k+K
// mirrors id k.
class KeyframeSet {
 public:
  // Throws InvalidInput if count < 1.
  explicit KeyframeSet(int count);

  int count() const { return count_; }
  int size() const { return 2 * count_; }
  bool Contains(int id) const { return id >= 0 && id < size(); }
  int Mirror(int id) const { return id < count_ ? id + count_ : id - count_; }

 private:
  int count_;
};

// An ordered keyframe pair (u, v): the dance segment moving from u to v.
struct GraphNode {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const GraphNode&, const GraphNode&) = default;
  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

std::string ToString(const GraphNode& node);

// (u, v) -> (mirror(u), mirror(v)).
GraphNode MirrorNode(const GraphNode& node, const KeyframeSet& keyframes);

// True when the nodes share one keyframe, in either position, and their
// other keyframes are mirrors of each other.
bool PartiallyMirrored(const GraphNode& n1, const GraphNode& n2,
                       const KeyframeSet& keyframes);

// Average foreground flow magnitude (pixels) from keyframe u to keyframe v.
// May be asymmetric; the diagonal is unused.
class FlowMatrix {
 public:
  // `magnitudes` is row-major 2K x 2K. Throws InvalidInput on a size mismatch
  // or a negative or non-finite off-diagonal entry.
  FlowMatrix(int keyframe_count, std::vector<double> magnitudes,
             std::array<int, 2> resolution = {1024, 576});

  const KeyframeSet& keyframes() const { return keyframes_; }
  int size() const { return keyframes_.size(); }
  std::array<int, 2> resolution() const { return resolution_; }
  double operator()(int u, int v) const {
    return magnitudes_[static_cast<std::size_t>(u) * size() + v];
  }
  const std::vector<double>& magnitudes() const { return magnitudes_; }

  // True when F(mirror(u), mirror(v)) == F(u, v) for all u != v.
  bool IsMirrorConsistent() const;

 private:
  KeyframeSet keyframes_;
  std::vector<double> magnitudes_;
  std::array<int, 2> resolution_;
};

inline constexpr double kDefaultMotionLow = 12.0;
inline constexpr double kDefaultMotionHigh = 60.0;

// Cost of moving from `from` to `to`: F(from.v, to.u), or 0 when they share
// that keyframe. nullopt when the flow reaches m_high.
std::optional<double> TransitionCost(const FlowMatrix& flow, double m_high,
                                     const GraphNode& from, const GraphNode& to);

// Nodes are the ordered pairs whose flow lies strictly inside
// (m_low, m_high). Transitions are dense and evaluated on demand.
class KeyframeGraph {
 public:
  // Throws InvalidInput unless 0 <= m_low < m_high, or when no node
  // survives the filter.
  KeyframeGraph(FlowMatrix flow, double m_low = kDefaultMotionLow,
                double m_high = kDefaultMotionHigh);

  const FlowMatrix& flow() const { return flow_; }
  const KeyframeSet& keyframes() const { return flow_.keyframes(); }
  double m_low() const { return m_low_; }
  double m_high() const { return m_high_; }

  // Sorted by (u, v).
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  bool Contains(const GraphNode& node) const;

  GraphNode Mirror(const GraphNode& node) const {
    return MirrorNode(node, keyframes());
  }
  std::optional<double> Transition(const GraphNode& from,
                                   const GraphNode& to) const {
    return TransitionCost(flow_, m_high_, from, to);
  }

 private:
  FlowMatrix flow_;
  double m_low_;
  double m_high_;
  std::vector<GraphNode> nodes_;
  std::vector<bool> is_node_;
};

}  // namespace choreokit
