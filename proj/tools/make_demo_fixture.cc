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

// Writes the bundled demo inputs: a noiseless synthetic dance, its 120 bpm
// beat grid, a fabricated flow matrix and a pipeline config.

#include <cstdint>
#include <filesystem>
#include <iostream>

#include "choreokit/error.h"
#include "choreokit/io.h"
#include "choreokit/keyframe_graph.h"
#include "choreokit/solver.h"
#include "choreokit/synthetic.h"

int main(int argc, char** argv) {
  namespace ck = choreokit;
  const std::filesystem::path dir = argc > 1 ? argv[1] : "data/demo";

  ck::SyntheticSpec spec;
  spec.base_motion_count = 4;
  spec.segment_count = 8;
  spec.mirror_fraction = 0.5;
  spec.seed = 7;
  spec.fps = 25.0;
  spec.bpm = 120.0;
  const ck::SyntheticInstance inst = ck::GenerateSynthetic(spec);

  constexpr int kKeyframes = 6;
  std::uint64_t flow_seed = 11;
  for (;; ++flow_seed) {
    const ck::FlowMatrix flow = ck::FabricateFlow(kKeyframes, flow_seed);
    try {
      const ck::KeyframeGraph graph(flow);
      if (ck::Solve(graph, inst.truth).feasible()) break;
    } catch (const ck::Error&) {
    }
  }

  ck::WriteJsonFile(dir / "poses.json", ck::ToJson(inst.sequence));
  ck::WriteJsonFile(dir / "beats.json", ck::ToJson(inst.beats));
  ck::WriteJsonFile(dir / "flow.json", ck::ToJson(ck::FabricateFlow(kKeyframes, flow_seed)));
  ck::WriteJsonFile(dir / "truth_pattern.json", ck::ToJson(inst.truth));
  ck::WriteJsonFile(dir / "pipeline.json", ck::Json{{"poses", "poses.json"},
                                                    {"beats", "beats.json"},
                                                    {"flow", "flow.json"},
                                                    {"output_dir", "out"}});
  std::cout << "truth " << inst.truth.ToString() << ", flow seed " << flow_seed << '\n';
  return 0;
}
