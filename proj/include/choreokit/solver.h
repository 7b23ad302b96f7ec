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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "choreokit/keyframe_graph.h"
#include "choreokit/pattern.h"

namespace choreokit {

// User hard constraints on the assignment.
struct CustomConstraints {
  // Label ("A" or "A'") -> the node it must use.
  std::map<std::string, GraphNode> pins;
  // Base labels whose node must have the form (u, mirror(u)).
  std::set<std::string> self_mirrored;
};

struct SolverOptions {
  // Also forbid consecutive distinct labels from sharing a keyframe across
  // positions, not only in the same position.
  bool strict_repetition = false;
  CustomConstraints custom;
};

// Node per base label, in first-occurrence order. A primed label uses the
// mirror of its base's node.
struct Assignment {
  std::vector<std::pair<std::string, GraphNode>> entries;

  // Throws InvalidInput if `base` has no entry.
  const GraphNode& NodeOf(const std::string& base) const;
  GraphNode NodeFor(const PatternToken& token, const KeyframeSet& keyframes) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// One keyframe per beat plus the summed transition cost.
struct WalkPath {
  std::vector<int> keyframes;
  double cost = 0.0;

  friend bool operator==(const WalkPath&, const WalkPath&) = default;
};

enum class ConstraintKind {
  kNodeValidity,         // label node outside the filtered node set
  kLabelIdentity,        // distinct bases on equal or mirrored nodes
  kPartialMirror,        // distinct labels on partially mirrored nodes
  kKeyframeRepetition,   // consecutive distinct labels repeat a keyframe
  kTransition,           // consecutive transition above M_high
  kPin,                  // user pin not honored
  kSelfMirror,           // user self-mirrored form not honored
};

const char* ToString(ConstraintKind kind);

struct Violation {
  ConstraintKind kind;
  std::string message;
};

// Every constraint the assignment breaks; empty means feasible. Throws
// InvalidInput if a base label is missing from the assignment or the custom
// constraints reference unknown labels.
std::vector<Violation> CheckFeasible(const Assignment& assignment,
                                     const ChoreoPattern& pattern,
                                     const KeyframeGraph& graph,
                                     const SolverOptions& options = {});

struct InfeasibleReport {
  std::string label;  // base label that could not be placed
  ConstraintKind binding;
  std::string message;
};

struct SolveStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t leaves = 0;
};

struct SolveResult {
  std::optional<Assignment> assignment;
  WalkPath path;
  std::optional<InfeasibleReport> infeasible;
  SolveStats stats;

  bool feasible() const { return assignment.has_value(); }
};

// Exact minimum-cost assignment by branch and bound. Among equal-cost optima
// the lexicographically smallest node vector (bases in first-occurrence
// order) wins. Throws InvalidInput on an empty pattern or invalid custom
// constraints.
SolveResult Solve(const KeyframeGraph& graph, const ChoreoPattern& pattern,
                  const SolverOptions& options = {});

inline constexpr double kDefaultEnumerationBudget = 1e8;

// Exhaustive enumeration with the same constraints and tie-break as Solve.
// Throws InvalidInput when |V|^bases exceeds `budget`.
SolveResult BruteForceSolve(const KeyframeGraph& graph,
                            const ChoreoPattern& pattern,
                            const SolverOptions& options = {},
                            double budget = kDefaultEnumerationBudget);

// Position 2i, 2i+1 hold the node of label i. The cost is summed from the
// flow matrix in pattern order; an infeasible transition yields +inf.
WalkPath AssignmentToPath(const Assignment& assignment,
                          const ChoreoPattern& pattern,
                          const KeyframeGraph& graph);

}  // namespace choreokit
