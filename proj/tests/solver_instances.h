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

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "choreokit/error.h"
#include "choreokit/keyframe_graph.h"
#include "choreokit/pattern.h"
#include "choreokit/solver.h"
#include "choreokit/synthetic.h"
#include "test_util.h"

namespace choreokit::testing {

struct SolverInstance {
  KeyframeGraph graph;
  ChoreoPattern pattern;
  SolverOptions options;
};

inline FlowMatrix RandomFlow(TestRng& rng, int k, bool mirror_consistent) {
  if (mirror_consistent) {
    return FabricateFlow(k, static_cast<std::uint64_t>(rng.Int(0, 1 << 30)));
  }
  const int n = 2 * k;
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) m[static_cast<std::size_t>(u) * n + v] = rng.Uniform(0.0, 80.0);
  return FlowMatrix(k, std::move(m));
}

// `bases` distinct labels over `length` tokens; every base appears and a
// primed token only follows an unprimed one of the same base.
inline ChoreoPattern RandomPattern(TestRng& rng, int bases, int length,
                                   double prime_rate = 0.35) {
  std::vector<int> order;
  for (int b = 0; b < bases; ++b) order.push_back(b);
  while (static_cast<int>(order.size()) < length) order.push_back(rng.Int(0, bases - 1));
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::vector<PatternToken> tokens;
  std::set<int> seen;
  for (int b : order) {
    const bool primed = seen.contains(b) && rng.Uniform() < prime_rate;
    seen.insert(b);
    tokens.push_back({LetterLabel(static_cast<std::size_t>(b)), primed});
  }
  return ChoreoPattern(std::move(tokens)).Canonicalized();
}

// K <= max_k, at most max_bases labels, up to max_length tokens, with
// occasional strict mode, pins and self-mirrored labels.
inline SolverInstance RandomInstance(TestRng& rng, int max_k = 5, int max_bases = 4,
                                     int max_length = 16) {
  for (;;) {
    const int k = rng.Int(2, max_k);
    std::optional<KeyframeGraph> graph;
    try {
      graph.emplace(RandomFlow(rng, k, rng.Uniform() < 0.6));
    } catch (const Error&) {
      continue;
    }
    const int bases = rng.Int(1, max_bases);
    const int length = rng.Int(bases, std::max(bases, max_length));
    ChoreoPattern pattern = RandomPattern(rng, bases, length);
    SolverOptions options;
    options.strict_repetition = rng.Uniform() < 0.2;
    const std::vector<std::string> names = pattern.Bases();
    if (rng.Uniform() < 0.15) {
      const std::string& b = names[static_cast<std::size_t>(rng.Int(0, bases - 1))];
      const GraphNode n = graph->nodes()[static_cast<std::size_t>(
          rng.Int(0, static_cast<int>(graph->nodes().size()) - 1))];
      const bool primed = pattern.PrimedBases().contains(b) && rng.Uniform() < 0.5;
      options.custom.pins[primed ? b + "'" : b] = n;
    }
    if (rng.Uniform() < 0.15) {
      options.custom.self_mirrored.insert(
          names[static_cast<std::size_t>(rng.Int(0, bases - 1))]);
    }
    return {std::move(*graph), std::move(pattern), std::move(options)};
  }
}

}  // namespace choreokit::testing
