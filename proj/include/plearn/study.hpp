// Copyright 2026 The plearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plearn/cb_sim.hpp"
#include "plearn/pattern_graph.hpp"

namespace plearn {

struct SuiteOptions {
  std::vector<int> depths = {2, 4, 8, 16, 32, 64, 128};
  int circuits = 30;
  int shots = 200;
  uint64_t seed = 1;
  EngineKind engine = EngineKind::kPauliFast;
  /// Add interleaved / cycle CB with local layers until the suite spans the
  /// non-trivial cycle space of each gate.
  bool complete = true;
};

/// Standard CB on every non-identity orbit of each gate, then interleaved or
/// cycle CB for local layers that add new directions, chosen greedily.
std::vector<CBConfig> plan_learnable_suite(const GateSet& gates, const SuiteOptions& opt);

/// Intercept CB on every non-identity Pauli of one gate.
CBConfig plan_intercept(const GateSet& gates, const std::string& gate, const std::vector<int>& ls, int circuits,
                        int shots, uint64_t seed, EngineKind engine);

CBDataset run_suite(const GateSet& gates, const Engine& engine, const std::vector<CBConfig>& configs);

}  // namespace plearn
