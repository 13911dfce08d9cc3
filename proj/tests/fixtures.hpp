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

// Shared gate sets and random noise models for tests.

#include <random>

#include "plearn/channel.hpp"
#include "plearn/clifford.hpp"

namespace fixture {

plearn::GateSet cnot();
plearn::GateSet swap();
plearn::GateSet cnot_swap();
/// CNOT12, CNOT23, CNOT31 on three qubits.
plearn::GateSet cnot_ring();
/// Cyclic qubit permutation on three qubits.
plearn::GateSet circ3();

/// Random Pauli channel with every error rate in [lo, hi] and p_I the rest.
plearn::PauliChannel random_channel(int n, std::mt19937_64& rng, double lo, double hi);
/// Strictly positive random model with independent SPAM and gate channels.
plearn::NoiseModel random_model(const plearn::GateSet& gs, std::mt19937_64& rng, double lo = 1e-4,
                                double hi = 2e-3);

}  // namespace fixture
