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

#include "fixtures.hpp"

namespace fixture {

using plearn::GateSet;
namespace gates = plearn::gates;

GateSet cnot() { return GateSet({gates::cnot()}); }

GateSet swap() { return GateSet({gates::swap()}); }

GateSet cnot_swap() { return GateSet({gates::cnot(), gates::swap()}); }

GateSet cnot_ring() {
  plearn::CliffordGate c = gates::cnot();
  return GateSet({plearn::embed(c, {0, 1}, 3).renamed("CNOT12"), plearn::embed(c, {1, 2}, 3).renamed("CNOT23"),
                  plearn::embed(c, {2, 0}, 3).renamed("CNOT31")});
}

GateSet circ3() { return GateSet({gates::permutation({1, 2, 0}, "CIRC3")}); }

plearn::PauliChannel random_channel(int n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p(plearn::num_paulis(n));
  double rest = 1.0;
  for (size_t i = 1; i < p.size(); ++i) rest -= (p[i] = u(rng));
  p[0] = rest;
  return plearn::PauliChannel::from_error_rates(n, p);
}

plearn::NoiseModel random_model(const GateSet& gs, std::mt19937_64& rng, double lo, double hi) {
  plearn::NoiseModel m;
  m.n = gs.n;
  m.sp = random_channel(gs.n, rng, lo, hi);
  m.meas = random_channel(gs.n, rng, lo, hi);
  for (const plearn::CliffordGate& g : gs.gates) m.gate_noise.emplace(g.name(), random_channel(gs.n, rng, lo, hi));
  return m;
}

}  // namespace fixture
