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

#include <chrono>
#include <cstdlib>

#include "choreokit/error.h"
#include "choreokit/solver.h"
#include "choreokit/synthetic.h"
#include "solver_instances.h"

using namespace choreokit;
using choreokit::testing::RandomInstance;
using choreokit::testing::TestRng;

namespace {

FlowMatrix Uniform(int k, double value) {
  const int n = 2 * k;
  std::vector<double> m(static_cast<std::size_t>(n) * n, value);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 0.0;
  return FlowMatrix(k, std::move(m));
}

bool HasKind(const std::vector<Violation>& v, ConstraintKind kind) {
  for (const Violation& x : v) if (x.kind == kind) return true;
  return false;
}

Assignment Assign(std::initializer_list<std::pair<std::string, GraphNode>> entries) {
  return Assignment{{entries.begin(), entries.end()}};
}

// Cost summed independently of the solver, step by step in pattern order.
double RecomputeCost(const Assignment& a, const ChoreoPattern& p, const KeyframeGraph& g) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const GraphNode from = a.NodeFor(p[i], g.keyframes());
    const GraphNode to = a.NodeFor(p[i + 1], g.keyframes());
    total += from.v == to.u ? 0.0 : g.flow()(from.v, to.u);
  }
  return total;
}

}  // namespace

TEST_CASE("single label with any valid node is feasible") {
  const KeyframeGraph g(Uniform(3, 36.0));
  const ChoreoPattern p = ParsePattern("A");
  CHECK(CheckFeasible(Assign({{"A", {0, 1}}}), p, g).empty());
  CHECK(HasKind(CheckFeasible(Assign({{"A", {0, 0}}}), p, g), ConstraintKind::kNodeValidity));
}

TEST_CASE("distinct labels on partially mirrored nodes violate the exclusion") {
  const KeyframeGraph g(Uniform(4, 36.0));
  const ChoreoPattern p = ParsePattern("A-B");
  const auto v = CheckFeasible(Assign({{"A", {0, 1}}, {"B", {0, 5}}}), p, g);
  CHECK(HasKind(v, ConstraintKind::kPartialMirror));
}

TEST_CASE("consecutive distinct labels sharing a position keyframe violate repetition") {
  const KeyframeGraph g(Uniform(4, 36.0));
  const ChoreoPattern p = ParsePattern("A-B");
  CHECK(HasKind(CheckFeasible(Assign({{"A", {0, 1}}, {"B", {0, 2}}}), p, g),
                ConstraintKind::kKeyframeRepetition));
  // Cross-position sharing only counts in strict mode.
  const Assignment cross = Assign({{"A", {0, 1}}, {"B", {1, 2}}});
  CHECK(CheckFeasible(cross, p, g).empty());
  SolverOptions strict;
  strict.strict_repetition = true;
  CHECK(HasKind(CheckFeasible(cross, p, g, strict), ConstraintKind::kKeyframeRepetition));
  // A label next to its own mirror is exempt.
  CHECK(CheckFeasible(Assign({{"A", {0, 1}}}), ParsePattern("A-A'"), g).empty());
}

TEST_CASE("distinct labels may not share or mirror a node") {
  const KeyframeGraph g(Uniform(4, 36.0));
  const ChoreoPattern p = ParsePattern("A-C-B");
  CHECK(HasKind(CheckFeasible(Assign({{"A", {0, 1}}, {"C", {2, 3}}, {"B", {0, 1}}}), p, g),
                ConstraintKind::kLabelIdentity));
  CHECK(HasKind(CheckFeasible(Assign({{"A", {0, 1}}, {"C", {2, 3}}, {"B", {4, 5}}}), p, g),
                ConstraintKind::kLabelIdentity));
}

TEST_CASE("infeasible transitions are reported") {
  std::vector<double> m = Uniform(3, 36.0).magnitudes();
  m[1 * 6 + 2] = 70.0;
  const KeyframeGraph g(FlowMatrix(3, m));
  CHECK(HasKind(CheckFeasible(Assign({{"A", {0, 1}}, {"B", {2, 4}}}), ParsePattern("A-B"), g),
                ConstraintKind::kTransition));
}

TEST_CASE("custom constraints are checked") {
  const KeyframeGraph g(Uniform(3, 36.0));
  SolverOptions o;
  o.custom.pins["A"] = {0, 1};
  o.custom.self_mirrored.insert("B");
  const ChoreoPattern p = ParsePattern("A-B");
  CHECK(HasKind(CheckFeasible(Assign({{"A", {0, 2}}, {"B", {1, 4}}}), p, g, o),
                ConstraintKind::kPin));
  CHECK(HasKind(CheckFeasible(Assign({{"A", {0, 1}}, {"B", {1, 2}}}), p, g, o),
                ConstraintKind::kSelfMirror));
  CHECK(CheckFeasible(Assign({{"A", {0, 1}}, {"B", {2, 5}}}), p, g, o).empty());
  SolverOptions bad;
  bad.custom.pins["Z"] = {0, 1};
  CHECK_THROWS_AS(CheckFeasible(Assign({{"A", {0, 1}}, {"B", {2, 5}}}), p, g, bad), Error);
}

TEST_CASE("pinned single label costs nothing") {
  const KeyframeGraph g(Uniform(3, 36.0));
  SolverOptions o;
  o.custom.pins["A"] = {0, 1};
  const SolveResult r = Solve(g, ParsePattern("A"), o);
  REQUIRE(r.feasible());
  CHECK(r.assignment->NodeOf("A") == GraphNode{0, 1});
  CHECK(r.path.cost == 0.0);
  CHECK(r.path.keyframes == std::vector<int>{0, 1});
}

TEST_CASE("A-A'-A-A' on a mirror-consistent matrix matches brute force") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const KeyframeGraph g(FabricateFlow(4, seed));
    const ChoreoPattern p = ParsePattern("A-A'-A-A'");
    const SolveResult r = Solve(g, p);
    const SolveResult b = BruteForceSolve(g, p);
    REQUIRE(r.feasible());
    REQUIRE(b.feasible());
    const GraphNode a = r.assignment->NodeOf("A");
    CHECK(r.assignment->NodeFor({"A", true}, g.keyframes()) == g.Mirror(a));
    CHECK(r.path.cost == b.path.cost);
    CHECK(*r.assignment == *b.assignment);
  }
}

TEST_CASE("solve agrees with brute force on random instances") {
  TestRng rng(20);
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = RandomInstance(rng, 4, 3, 10);
    const SolveResult r = Solve(inst.graph, inst.pattern, inst.options);
    const SolveResult b = BruteForceSolve(inst.graph, inst.pattern, inst.options);
    REQUIRE(r.feasible() == b.feasible());
    if (!r.feasible()) {
      CHECK(r.infeasible.has_value());
      continue;
    }
    ++feasible;
    CHECK(*r.assignment == *b.assignment);
    CHECK(r.path.cost == b.path.cost);
    CHECK(CheckFeasible(*r.assignment, inst.pattern, inst.graph, inst.options).empty());
    CHECK(r.path.cost == doctest::Approx(RecomputeCost(*r.assignment, inst.pattern, inst.graph))
                             .epsilon(1e-12));
    CHECK(r.path == AssignmentToPath(*r.assignment, inst.pattern, inst.graph));
  }
  CHECK(feasible > 30);
}

TEST_CASE("a filtered-out orientation makes both solvers infeasible") {
  // Only (0, 1) survives; its mirror (2, 3) does not.
  std::vector<double> m(16, 100.0);
  for (int i = 0; i < 4; ++i) m[i * 4 + i] = 0.0;
  m[0 * 4 + 1] = 30.0;
  const KeyframeGraph g(FlowMatrix(2, m));
  REQUIRE(g.nodes().size() == 1);
  const ChoreoPattern p = ParsePattern("A-A'");
  const SolveResult r = Solve(g, p);
  const SolveResult b = BruteForceSolve(g, p);
  CHECK_FALSE(r.feasible());
  CHECK_FALSE(b.feasible());
  REQUIRE(r.infeasible.has_value());
  CHECK(r.infeasible->label == "A");
  CHECK(r.infeasible->binding == ConstraintKind::kNodeValidity);
}

TEST_CASE("a single-node graph cannot host two distinct labels") {
  std::vector<double> m(16, 100.0);
  for (int i = 0; i < 4; ++i) m[i * 4 + i] = 0.0;
  m[0 * 4 + 1] = 30.0;
  m[1 * 4 + 0] = 30.0;
  const KeyframeGraph g(FlowMatrix(2, m), 12.0, 101.0);
  std::vector<double> single(16, 5.0);
  single[0 * 4 + 1] = 30.0;
  for (int i = 0; i < 4; ++i) single[i * 4 + i] = 0.0;
  const KeyframeGraph one(FlowMatrix(2, single));
  REQUIRE(one.nodes().size() == 1);
  const ChoreoPattern p = ParsePattern("A-B");
  const SolveResult r = Solve(one, p);
  CHECK_FALSE(r.feasible());
  CHECK_FALSE(BruteForceSolve(one, p).feasible());
  REQUIRE(r.infeasible.has_value());
  CHECK(r.infeasible->label == "B");
  CHECK(r.infeasible->binding == ConstraintKind::kLabelIdentity);
  CHECK(Solve(g, ParsePattern("A")).feasible());
}

TEST_CASE("walk paths from assignments") {
  const KeyframeGraph g(Uniform(6, 36.0));
  CHECK(AssignmentToPath(Assign({{"A", {2, 5}}}), ParsePattern("A-A"), g).keyframes ==
        std::vector<int>{2, 5, 2, 5});
  const WalkPath p = AssignmentToPath(Assign({{"A", {0, 1}}}), ParsePattern("A-A'"), g);
  CHECK(p.keyframes == std::vector<int>{0, 1, 6, 7});
  CHECK(p.cost == 36.0);
  const WalkPath shared = AssignmentToPath(Assign({{"A", {0, 1}}, {"B", {1, 2}}}),
                                           ParsePattern("A-B"), g);
  CHECK(shared.cost == 0.0);
}

TEST_CASE("repeated labels pay for the return motion") {
  std::vector<double> m = Uniform(3, 36.0).magnitudes();
  m[1 * 6 + 0] = 50.0;
  const KeyframeGraph g(FlowMatrix(3, m));
  CHECK(AssignmentToPath(Assign({{"A", {0, 1}}}), ParsePattern("A-A"), g).cost == 50.0);
}

TEST_CASE("adding a pin never lowers the optimum") {
  TestRng rng(30);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = RandomInstance(rng, 4, 3, 10);
    inst.options.custom = {};
    const SolveResult free = Solve(inst.graph, inst.pattern, inst.options);
    if (!free.feasible()) continue;
    SolverOptions pinned = inst.options;
    const std::string base = inst.pattern.Bases()[0];
    pinned.custom.pins[base] = inst.graph.nodes()[static_cast<std::size_t>(
        rng.Int(0, static_cast<int>(inst.graph.nodes().size()) - 1))];
    const SolveResult r = Solve(inst.graph, inst.pattern, pinned);
    if (r.feasible()) CHECK(r.path.cost >= free.path.cost);
    SolverOptions at_optimum = inst.options;
    at_optimum.custom.pins[base] = free.assignment->NodeOf(base);
    const SolveResult same = Solve(inst.graph, inst.pattern, at_optimum);
    REQUIRE(same.feasible());
    CHECK(same.path.cost == free.path.cost);
  }
}

TEST_CASE("toggling every prime mirrors the optimum at equal cost") {
  TestRng rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = rng.Int(2, 4);
    const KeyframeGraph g(FabricateFlow(k, static_cast<std::uint64_t>(trial + 100)));
    const ChoreoPattern p = testing::RandomPattern(rng, rng.Int(1, 3), rng.Int(3, 10));
    const ChoreoPattern t = p.WithPrimesToggled();
    const SolveResult a = Solve(g, p);
    const SolveResult b = Solve(g, t);
    REQUIRE(a.feasible() == b.feasible());
    if (!a.feasible()) continue;
    CHECK(a.path.cost == b.path.cost);
    Assignment mirrored;
    for (const auto& [label, node] : a.assignment->entries) {
      mirrored.entries.emplace_back(label, g.Mirror(node));
    }
    CHECK(CheckFeasible(mirrored, t, g).empty());
    CHECK(AssignmentToPath(mirrored, t, g).cost == b.path.cost);
  }
}

TEST_CASE("solutions do not depend on the thread count") {
  TestRng rng(50);
  std::vector<testing::SolverInstance> instances;
  for (int i = 0; i < 15; ++i) instances.push_back(RandomInstance(rng, 5, 4, 16));
  std::vector<SolveResult> serial;
  setenv("CHOREOKIT_THREADS", "1", 1);
  for (const auto& inst : instances) serial.push_back(Solve(inst.graph, inst.pattern, inst.options));
  setenv("CHOREOKIT_THREADS", "4", 1);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const SolveResult r = Solve(instances[i].graph, instances[i].pattern, instances[i].options);
    CHECK(r.feasible() == serial[i].feasible());
    CHECK(r.assignment == serial[i].assignment);
    CHECK(r.path == serial[i].path);
  }
  unsetenv("CHOREOKIT_THREADS");
}

TEST_CASE("sixteen tokens over five labels on twelve keyframes") {
  const ChoreoPattern p = ParsePattern("A-A'-A-A'-A-A'-A-A'-B-B'-C-D-E-E'-E-E'");
  const FlowMatrix flow = FabricateFlow(6, 5);
  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = Solve(KeyframeGraph(flow), p);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE(r.feasible());
  CHECK(CheckFeasible(*r.assignment, p, KeyframeGraph(flow)).empty());
  CHECK(seconds < 10.0);
  // A narrower motion band keeps the oracle within its enumeration budget.
  const KeyframeGraph narrow(flow, 40.0, 60.0);
  const SolveResult exact = Solve(narrow, p);
  const SolveResult brute = BruteForceSolve(narrow, p);
  REQUIRE(exact.feasible() == brute.feasible());
  if (exact.feasible()) {
    CHECK(*exact.assignment == *brute.assignment);
    CHECK(exact.path.cost == brute.path.cost);
  }
}

TEST_CASE("the enumeration budget is enforced") {
  const KeyframeGraph g(Uniform(5, 36.0));
  CHECK_THROWS_AS(BruteForceSolve(g, ParsePattern("A-B-C-D-E-F")), Error);
  CHECK_THROWS_AS(Solve(g, ChoreoPattern()), Error);
}
