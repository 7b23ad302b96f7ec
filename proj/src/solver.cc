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

#include "choreokit/solver.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "choreokit/error.h"
#include "choreokit/parallel.h"

namespace choreokit {

const GraphNode& Assignment::NodeOf(const std::string& base) const {
  for (const auto& [b, n] : entries) {
    if (b == base) return n;
  }
  throw InvalidInput("assignment has no node for label " + base);
}

GraphNode Assignment::NodeFor(const PatternToken& token,
                              const KeyframeSet& keyframes) const {
  const GraphNode& n = NodeOf(token.base);
  return token.primed ? MirrorNode(n, keyframes) : n;
}

const char* ToString(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kNodeValidity: return "node-validity";
    case ConstraintKind::kLabelIdentity: return "label-identity";
    case ConstraintKind::kPartialMirror: return "partial-mirror";
    case ConstraintKind::kKeyframeRepetition: return "keyframe-repetition";
    case ConstraintKind::kTransition: return "transition";
    case ConstraintKind::kPin: return "pin";
    case ConstraintKind::kSelfMirror: return "self-mirror";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kKindCount = 7;

struct Position {
  std::size_t base;
  bool primed;
};

// An adjacent pair of pattern positions (i, i + 1).
struct Step {
  std::size_t from_base;
  bool from_primed;
  std::size_t to_base;
  bool to_primed;
};

// Pattern, graph and options flattened into base indices.
class Problem {
 public:
  Problem(const KeyframeGraph& graph, const ChoreoPattern& pattern,
          const SolverOptions& options)
      : graph_(graph), keyframes_(graph.keyframes()), options_(options) {
    if (pattern.empty()) throw InvalidInput("pattern is empty");
    bases_ = pattern.Bases();
    const std::size_t m = bases_.size();
    uses_plain_.assign(m, false);
    uses_primed_.assign(m, false);
    for (const PatternToken& t : pattern.labels()) {
      const std::size_t b = BaseIndex(t.base);
      positions_.push_back({b, t.primed});
      (t.primed ? uses_primed_ : uses_plain_)[b] = true;
    }
    pair_steps_.assign(m, std::vector<std::vector<std::size_t>>(m));
    self_steps_.assign(m, {});
    for (std::size_t i = 0; i + 1 < positions_.size(); ++i) {
      const Position& a = positions_[i];
      const Position& b = positions_[i + 1];
      steps_.push_back({a.base, a.primed, b.base, b.primed});
      if (a.base == b.base) {
        self_steps_[a.base].push_back(i);
      } else {
        pair_steps_[a.base][b.base].push_back(i);
        pair_steps_[b.base][a.base].push_back(i);
      }
    }

    pins_.assign(m, {});
    self_mirror_.assign(m, false);
    for (const auto& [label, node] : options.custom.pins) {
      const PatternToken token = ParseToken(label);
      const auto it = std::find(bases_.begin(), bases_.end(), token.base);
      if (it == bases_.end() ||
          !(token.primed ? uses_primed_ : uses_plain_)[it - bases_.begin()]) {
        throw InvalidInput("pin references label " + label +
                           " which is not in the pattern");
      }
      if (!graph.Contains(node)) {
        throw InvalidInput("pin for " + label + " references node " +
                           ToString(node) + " which is not in the graph");
      }
      pins_[it - bases_.begin()].push_back(
          token.primed ? MirrorNode(node, keyframes_) : node);
    }
    for (const std::string& label : options.custom.self_mirrored) {
      const PatternToken token = ParseToken(label);
      const auto it = std::find(bases_.begin(), bases_.end(), token.base);
      if (it == bases_.end()) {
        throw InvalidInput("self-mirrored constraint references label " +
                           label + " which is not in the pattern");
      }
      self_mirror_[it - bases_.begin()] = true;
    }
  }

  std::size_t base_count() const { return bases_.size(); }
  const std::vector<std::string>& bases() const { return bases_; }
  const std::vector<Step>& steps() const { return steps_; }
  const KeyframeGraph& graph() const { return graph_; }
  const KeyframeSet& keyframes() const { return keyframes_; }
  bool uses(std::size_t base, bool primed) const {
    return primed ? uses_primed_[base] : uses_plain_[base];
  }

  GraphNode TokenNode(const GraphNode& node, bool primed) const {
    return primed ? MirrorNode(node, keyframes_) : node;
  }

  // First failing constraint that involves only this base.
  std::optional<ConstraintKind> CheckUnary(std::size_t b, const GraphNode& n) const {
    if (uses_plain_[b] && !graph_.Contains(n)) return ConstraintKind::kNodeValidity;
    if (uses_primed_[b] && !graph_.Contains(MirrorNode(n, keyframes_))) {
      return ConstraintKind::kNodeValidity;
    }
    for (const GraphNode& pin : pins_[b]) {
      if (n != pin) return ConstraintKind::kPin;
    }
    if (self_mirror_[b] && n.v != keyframes_.Mirror(n.u)) {
      return ConstraintKind::kSelfMirror;
    }
    for (std::size_t i : self_steps_[b]) {
      const Step& s = steps_[i];
      if (!graph_.Transition(TokenNode(n, s.from_primed), TokenNode(n, s.to_primed))) {
        return ConstraintKind::kTransition;
      }
    }
    return std::nullopt;
  }

  // First failing constraint between two distinct bases.
  std::optional<ConstraintKind> CheckPair(std::size_t x, const GraphNode& nx,
                                          std::size_t y, const GraphNode& ny) const {
    if (ny == nx || ny == MirrorNode(nx, keyframes_)) {
      return ConstraintKind::kLabelIdentity;
    }
    for (bool px : {false, true}) {
      if (!uses(x, px)) continue;
      const GraphNode tx = TokenNode(nx, px);
      for (bool py : {false, true}) {
        if (!uses(y, py)) continue;
        if (PartiallyMirrored(tx, TokenNode(ny, py), keyframes_)) {
          return ConstraintKind::kPartialMirror;
        }
      }
    }
    for (std::size_t i : pair_steps_[x][y]) {
      const Step& s = steps_[i];
      const GraphNode& from_base = s.from_base == x ? nx : ny;
      const GraphNode& to_base = s.from_base == x ? ny : nx;
      const GraphNode a = TokenNode(from_base, s.from_primed);
      const GraphNode c = TokenNode(to_base, s.to_primed);
      if (a.u == c.u || a.v == c.v) return ConstraintKind::kKeyframeRepetition;
      if (options_.strict_repetition && (a.u == c.v || a.v == c.u)) {
        return ConstraintKind::kKeyframeRepetition;
      }
      if (!graph_.Transition(a, c)) return ConstraintKind::kTransition;
    }
    return std::nullopt;
  }

  double StepCost(const Step& s, const GraphNode& from, const GraphNode& to) const {
    const auto c = graph_.Transition(TokenNode(from, s.from_primed),
                                     TokenNode(to, s.to_primed));
    return c ? *c : kInf;
  }

  // Objective summed in pattern order. Both solvers report this value so
  // their costs agree bit for bit.
  double PathCost(const std::vector<GraphNode>& nodes) const {
    double total = 0.0;
    for (const Step& s : steps_) {
      total += StepCost(s, nodes[s.from_base], nodes[s.to_base]);
    }
    return total;
  }

  Assignment MakeAssignment(const std::vector<GraphNode>& nodes) const {
    Assignment a;
    for (std::size_t b = 0; b < bases_.size(); ++b) a.entries.emplace_back(bases_[b], nodes[b]);
    return a;
  }

 private:
  std::size_t BaseIndex(const std::string& base) const {
    return static_cast<std::size_t>(
        std::find(bases_.begin(), bases_.end(), base) - bases_.begin());
  }

  const KeyframeGraph& graph_;
  const KeyframeSet& keyframes_;
  SolverOptions options_;
  std::vector<std::string> bases_;
  std::vector<Position> positions_;
  std::vector<bool> uses_plain_, uses_primed_;
  std::vector<Step> steps_;
  std::vector<std::vector<std::size_t>> self_steps_;
  std::vector<std::vector<std::vector<std::size_t>>> pair_steps_;
  std::vector<std::vector<GraphNode>> pins_;
  std::vector<bool> self_mirror_;
};

using KindCounts = std::array<std::uint64_t, kKindCount>;

std::size_t KindIndex(ConstraintKind k) { return static_cast<std::size_t>(k); }

ConstraintKind MostFrequent(const KindCounts& counts, ConstraintKind fallback) {
  std::size_t best = KindIndex(fallback);
  for (std::size_t k = 0; k < kKindCount; ++k) {
    if (counts[k] > counts[best]) best = k;
  }
  return static_cast<ConstraintKind>(best);
}

// Failure bookkeeping for the infeasibility report.
struct Trace {
  std::vector<KindCounts> rejected;  // per depth
  int deepest = -1;                  // deepest depth at which a node was placed

  explicit Trace(std::size_t depths) : rejected(depths, KindCounts{}) {}

  void Merge(const Trace& other) {
    for (std::size_t d = 0; d < rejected.size(); ++d) {
      for (std::size_t k = 0; k < kKindCount; ++k) rejected[d][k] += other.rejected[d][k];
    }
    deepest = std::max(deepest, other.deepest);
  }
};

InfeasibleReport ReportFromTrace(const Problem& p, const Trace& trace) {
  const std::size_t depth = static_cast<std::size_t>(
      std::min<int>(trace.deepest + 1, static_cast<int>(p.base_count()) - 1));
  const ConstraintKind kind =
      MostFrequent(trace.rejected[depth], ConstraintKind::kTransition);
  std::ostringstream os;
  os << "no feasible node for label " << p.bases()[depth]
     << " given the labels placed before it; binding constraint: "
     << ToString(kind);
  return {p.bases()[depth], kind, os.str()};
}

struct Incumbent {
  double cost = kInf;
  std::vector<GraphNode> nodes;
};

// Lower bounds on step costs for the branch-and-bound:
// exact when both ends are placed, a per-keyframe minimum over the open
// end's candidates when one is, and a static minimum when neither is.
class StepBounds {
 public:
  StepBounds(const Problem& p, const std::vector<std::vector<GraphNode>>& cand)
      : p_(p) {
    const int n = p.keyframes().size();
    const std::size_t m = p.base_count();
    // into_[b][primed][v]: cheapest step from keyframe v into base b.
    // out_of_[b][primed][u]: cheapest step from base b into keyframe u.
    into_.assign(m, std::array<std::vector<double>, 2>{});
    out_of_.assign(m, std::array<std::vector<double>, 2>{});
    for (std::size_t b = 0; b < m; ++b) {
      for (int pr = 0; pr < 2; ++pr) {
        into_[b][pr].assign(n, kInf);
        out_of_[b][pr].assign(n, kInf);
        for (const GraphNode& c : cand[b]) {
          const GraphNode t = p.TokenNode(c, pr == 1);
          for (int k = 0; k < n; ++k) {
            into_[b][pr][k] = std::min(into_[b][pr][k], Edge(k, t.u));
            out_of_[b][pr][k] = std::min(out_of_[b][pr][k], Edge(t.v, k));
          }
        }
      }
    }
    for (const Step& s : p.steps()) {
      double best = kInf;
      if (s.from_base == s.to_base) {
        for (const GraphNode& c : cand[s.from_base]) {
          best = std::min(best, p.StepCost(s, c, c));
        }
      } else {
        for (const GraphNode& c : cand[s.from_base]) {
          const GraphNode t = p.TokenNode(c, s.from_primed);
          best = std::min(best, into_[s.to_base][s.to_primed][t.v]);
        }
      }
      unplaced_.push_back(best);
    }
  }

  // Bases [0, depth] are placed in `nodes`.
  double Bound(const std::vector<GraphNode>& nodes, std::size_t depth) const {
    double total = 0.0;
    const auto& steps = p_.steps();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Step& s = steps[i];
      const bool from_placed = s.from_base <= depth;
      const bool to_placed = s.to_base <= depth;
      if (from_placed && to_placed) {
        total += p_.StepCost(s, nodes[s.from_base], nodes[s.to_base]);
      } else if (from_placed) {
        const GraphNode t = p_.TokenNode(nodes[s.from_base], s.from_primed);
        total += into_[s.to_base][s.to_primed][t.v];
      } else if (to_placed) {
        const GraphNode t = p_.TokenNode(nodes[s.to_base], s.to_primed);
        total += out_of_[s.from_base][s.from_primed][t.u];
      } else {
        total += unplaced_[i];
      }
    }
    return total;
  }

 private:
  double Edge(int from, int to) const {
    if (from == to) return 0.0;
    const double m = p_.graph().flow()(from, to);
    return m < p_.graph().m_high() ? m : kInf;
  }

  const Problem& p_;
  std::vector<std::array<std::vector<double>, 2>> into_;
  std::vector<std::array<std::vector<double>, 2>> out_of_;
  std::vector<double> unplaced_;
};

bool AboveLimit(double bound, double limit) {
  if (limit == kInf) return bound == kInf;
  // The slack absorbs rounding between the bound's summation order and the
  // pattern-order objective, so optimal leaves are never cut.
  return bound > limit + 1e-9 * (1.0 + std::abs(limit));
}

void AtomicMin(std::atomic<double>& target, double value) {
  double cur = target.load();
  while (value < cur && !target.compare_exchange_weak(cur, value)) {
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const Problem& p, const std::vector<std::vector<GraphNode>>& cand,
                 const StepBounds& bounds, std::atomic<double>& shared_best)
      : p_(p), cand_(cand), bounds_(bounds), shared_best_(shared_best),
        nodes_(p.base_count()), trace_(p.base_count()) {}

  // Explores the subtree rooted at the `first`-th candidate of base 0.
  Incumbent Explore(std::size_t first) {
    best_ = Incumbent{};
    Place(0, cand_[0][first]);
    return best_;
  }

  const Trace& trace() const { return trace_; }
  const SolveStats& stats() const { return stats_; }

 private:
  void Place(std::size_t depth, const GraphNode& n) {
    for (std::size_t x = 0; x < depth; ++x) {
      if (auto kind = p_.CheckPair(x, nodes_[x], depth, n)) {
        ++trace_.rejected[depth][KindIndex(*kind)];
        return;
      }
    }
    nodes_[depth] = n;
    trace_.deepest = std::max(trace_.deepest, static_cast<int>(depth));
    ++stats_.nodes_visited;
    const double limit = std::min(best_.cost, shared_best_.load());
    const double bound = bounds_.Bound(nodes_, depth);
    if (AboveLimit(bound, limit)) return;
    if (depth + 1 == p_.base_count()) {
      ++stats_.leaves;
      const double cost = p_.PathCost(nodes_);
      if (cost < best_.cost) {
        best_ = {cost, nodes_};
        AtomicMin(shared_best_, cost);
      }
      return;
    }
    for (const GraphNode& next : cand_[depth + 1]) Place(depth + 1, next);
  }

  const Problem& p_;
  const std::vector<std::vector<GraphNode>>& cand_;
  const StepBounds& bounds_;
  std::atomic<double>& shared_best_;
  std::vector<GraphNode> nodes_;
  Trace trace_;
  Incumbent best_;
  SolveStats stats_;
};

}  // namespace

std::vector<Violation> CheckFeasible(const Assignment& assignment,
                                     const ChoreoPattern& pattern,
                                     const KeyframeGraph& graph,
                                     const SolverOptions& options) {
  const Problem p(graph, pattern, options);
  std::vector<GraphNode> nodes;
  for (const std::string& b : p.bases()) nodes.push_back(assignment.NodeOf(b));

  std::vector<Violation> out;
  for (std::size_t b = 0; b < p.base_count(); ++b) {
    if (auto kind = p.CheckUnary(b, nodes[b])) {
      out.push_back({*kind, "label " + p.bases()[b] + " on node " +
                                ToString(nodes[b]) + " violates " +
                                ToString(*kind)});
    }
  }
  for (std::size_t x = 0; x < p.base_count(); ++x) {
    for (std::size_t y = x + 1; y < p.base_count(); ++y) {
      if (auto kind = p.CheckPair(x, nodes[x], y, nodes[y])) {
        out.push_back({*kind, "labels " + p.bases()[x] + " " + ToString(nodes[x]) +
                                  " and " + p.bases()[y] + " " +
                                  ToString(nodes[y]) + " violate " +
                                  ToString(*kind)});
      }
    }
  }
  return out;
}

SolveResult Solve(const KeyframeGraph& graph, const ChoreoPattern& pattern,
                  const SolverOptions& options) {
  const Problem p(graph, pattern, options);
  const std::size_t m = p.base_count();

  std::vector<std::vector<GraphNode>> cand(m);
  for (std::size_t b = 0; b < m; ++b) {
    KindCounts rejected{};
    for (const GraphNode& n : graph.nodes()) {
      if (auto kind = p.CheckUnary(b, n)) {
        ++rejected[KindIndex(*kind)];
      } else {
        cand[b].push_back(n);
      }
    }
    if (cand[b].empty()) {
      SolveResult result;
      const ConstraintKind kind =
          MostFrequent(rejected, ConstraintKind::kNodeValidity);
      result.infeasible = InfeasibleReport{
          p.bases()[b], kind,
          "label " + p.bases()[b] + " has no candidate node; binding constraint: " +
              ToString(kind)};
      return result;
    }
  }

  const StepBounds bounds(p, cand);
  std::atomic<double> shared_best{kInf};
  std::vector<Incumbent> per_root(cand[0].size());
  Trace trace(m);
  SolveStats stats;

  const std::size_t workers = std::min(ThreadCount(), cand[0].size());
  std::vector<Trace> traces(workers, Trace(m));
  std::vector<SolveStats> worker_stats(workers);
  std::atomic<std::size_t> next{0};
  ParallelFor(workers, [&](std::size_t w) {
    BranchAndBound search(p, cand, bounds, shared_best);
    for (;;) {
      const std::size_t root = next.fetch_add(1);
      if (root >= cand[0].size()) break;
      per_root[root] = search.Explore(root);
    }
    traces[w] = search.trace();
    worker_stats[w] = search.stats();
  });
  for (std::size_t w = 0; w < workers; ++w) {
    trace.Merge(traces[w]);
    stats.nodes_visited += worker_stats[w].nodes_visited;
    stats.leaves += worker_stats[w].leaves;
  }

  // Roots are in lexicographic order, so the first minimum is the tie-break
  // winner regardless of which worker found it.
  Incumbent best;
  for (const Incumbent& r : per_root) {
    if (r.cost < best.cost) best = r;
  }
  if (best.cost == kInf) {
    SolveResult result;
    result.stats = stats;
    result.infeasible = ReportFromTrace(p, trace);
    return result;
  }
  SolveResult result;
  result.stats = stats;
  result.assignment = p.MakeAssignment(best.nodes);
  result.path = AssignmentToPath(*result.assignment, pattern, graph);
  result.path.cost = best.cost;
  return result;
}

SolveResult BruteForceSolve(const KeyframeGraph& graph,
                            const ChoreoPattern& pattern,
                            const SolverOptions& options, double budget) {
  const Problem p(graph, pattern, options);
  const std::size_t m = p.base_count();
  const auto& all = graph.nodes();
  const double space = std::pow(static_cast<double>(all.size()), static_cast<double>(m));
  if (space > budget) {
    std::ostringstream os;
    os << "exhaustive enumeration of " << all.size() << "^" << m
       << " assignments exceeds the budget of " << budget;
    throw InvalidInput(os.str());
  }

  Incumbent best;
  Trace trace(m);
  SolveStats stats;
  std::vector<GraphNode> nodes(m);
  // Depth-first over every node of V per base, in node order; constraints
  // are checked as soon as both ends are placed.
  auto place = [&](auto&& self, std::size_t depth) -> void {
    for (const GraphNode& n : all) {
      if (auto kind = p.CheckUnary(depth, n)) {
        ++trace.rejected[depth][KindIndex(*kind)];
        continue;
      }
      bool ok = true;
      for (std::size_t x = 0; x < depth && ok; ++x) {
        if (auto kind = p.CheckPair(x, nodes[x], depth, n)) {
          ++trace.rejected[depth][KindIndex(*kind)];
          ok = false;
        }
      }
      if (!ok) continue;
      nodes[depth] = n;
      ++stats.nodes_visited;
      trace.deepest = std::max(trace.deepest, static_cast<int>(depth));
      if (depth + 1 == m) {
        ++stats.leaves;
        const double cost = p.PathCost(nodes);
        if (cost < best.cost) best = {cost, nodes};
      } else {
        self(self, depth + 1);
      }
    }
  };
  place(place, 0);

  SolveResult result;
  result.stats = stats;
  if (best.cost == kInf) {
    result.infeasible = ReportFromTrace(p, trace);
    return result;
  }
  result.assignment = p.MakeAssignment(best.nodes);
  result.path = AssignmentToPath(*result.assignment, pattern, graph);
  result.path.cost = best.cost;
  return result;
}

WalkPath AssignmentToPath(const Assignment& assignment,
                          const ChoreoPattern& pattern,
                          const KeyframeGraph& graph) {
  WalkPath path;
  const KeyframeSet& ks = graph.keyframes();
  std::vector<GraphNode> tokens;
  for (const PatternToken& t : pattern.labels()) {
    const GraphNode n = assignment.NodeFor(t, ks);
    tokens.push_back(n);
    path.keyframes.push_back(n.u);
    path.keyframes.push_back(n.v);
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const auto c = graph.Transition(tokens[i], tokens[i + 1]);
    total += c ? *c : kInf;
  }
  path.cost = total;
  return path;
}

}  // namespace choreokit
