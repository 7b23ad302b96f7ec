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

#include "choreokit/keyframe_graph.h"

#include <cmath>
#include <sstream>
#include <utility>

#include "choreokit/error.h"

namespace choreokit {

KeyframeSet::KeyframeSet(int count) : count_(count) {
  if (count < 1) throw InvalidInput("keyframe count must be at least 1");
}

std::string ToString(const GraphNode& node) {
  std::ostringstream os;
  os << "(" << node.u << "," << node.v << ")";
  return os.str();
}

GraphNode MirrorNode(const GraphNode& node, const KeyframeSet& keyframes) {
  return {keyframes.Mirror(node.u), keyframes.Mirror(node.v)};
}

bool PartiallyMirrored(const GraphNode& n1, const GraphNode& n2,
                       const KeyframeSet& keyframes) {
  const int a = n1.u, b = n1.v, c = n2.u, d = n2.v;
  return (a == c && b == keyframes.Mirror(d)) ||
         (a == d && b == keyframes.Mirror(c)) ||
         (b == c && a == keyframes.Mirror(d)) ||
         (b == d && a == keyframes.Mirror(c));
}

FlowMatrix::FlowMatrix(int keyframe_count, std::vector<double> magnitudes,
                       std::array<int, 2> resolution)
    : keyframes_(keyframe_count),
      magnitudes_(std::move(magnitudes)),
      resolution_(resolution) {
  const std::size_t n = static_cast<std::size_t>(size());
  if (magnitudes_.size() != n * n) {
    throw InvalidInput("flow matrix has " + std::to_string(magnitudes_.size()) +
                       " entries, expected " + std::to_string(n * n));
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double m = magnitudes_[u * n + v];
      if (!std::isfinite(m) || m < 0.0) {
        throw InvalidInput("flow magnitude (" + std::to_string(u) + "," +
                           std::to_string(v) + ") must be finite and >= 0");
      }
    }
  }
}

bool FlowMatrix::IsMirrorConsistent() const {
  for (int u = 0; u < size(); ++u) {
    for (int v = 0; v < size(); ++v) {
      if (u == v) continue;
      if ((*this)(keyframes_.Mirror(u), keyframes_.Mirror(v)) != (*this)(u, v)) {
        return false;
      }
    }
  }
  return true;
}

std::optional<double> TransitionCost(const FlowMatrix& flow, double m_high,
                                     const GraphNode& from, const GraphNode& to) {
  if (from.v == to.u) return 0.0;
  const double m = flow(from.v, to.u);
  if (m < m_high) return m;
  return std::nullopt;
}

KeyframeGraph::KeyframeGraph(FlowMatrix flow, double m_low, double m_high)
    : flow_(std::move(flow)), m_low_(m_low), m_high_(m_high) {
  if (!(m_low_ >= 0.0) || !(m_low_ < m_high_)) {
    throw InvalidInput("motion range needs 0 <= M_low < M_high");
  }
  const int n = flow_.size();
  is_node_.assign(static_cast<std::size_t>(n) * n, false);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const double m = flow_(u, v);
      if (m_low_ < m && m < m_high_) {
        nodes_.push_back({u, v});
        is_node_[static_cast<std::size_t>(u) * n + v] = true;
      }
    }
  }
  if (nodes_.empty()) {
    std::ostringstream os;
    os << "no keyframe pair has flow inside (" << m_low_ << ", " << m_high_
       << "); lower M_low or raise M_high to admit more candidate nodes";
    throw InvalidInput(os.str());
  }
}

bool KeyframeGraph::Contains(const GraphNode& node) const {
  const int n = flow_.size();
  if (node.u < 0 || node.v < 0 || node.u >= n || node.v >= n) return false;
  return is_node_[static_cast<std::size_t>(node.u) * n + node.v];
}

}  // namespace choreokit
