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

#include "plearn/study.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "plearn/estimator.hpp"

namespace plearn {

OrbitInfo orbit_info(const PatternGraph& g, const std::string& gate, const CliffordGate* interleave,
                     const PauliOp& start) {
  const int gi = g.gate_set().find(gate);
  if (gi < 0) throw std::invalid_argument("unknown gate '" + gate + "'");
  const CliffordGate& G = g.gate_set().gates[static_cast<size_t>(gi)];
  OrbitInfo info;
  PauliOp cur = start.unsigned_op();
  std::map<uint64_t, double> coeff;
  do {
    info.steps.push_back(cur);
    coeff[g.edge_index(static_cast<size_t>(gi), cur.index())] += 1.0;
    cur = G.conjugate(cur);
    if (interleave) cur = interleave->conjugate(cur);
    cur = cur.unsigned_op();
  } while (!cur.same_unsigned(start) && info.steps.size() <= g.paulis_per_gate());
  if (!cur.same_unsigned(start)) throw std::logic_error("orbit did not close");
  info.period = static_cast<int>(info.steps.size());
  for (const auto& [e, c] : coeff) info.functional.emplace_back(e, c / info.period);
  return info;
}

namespace {

std::vector<int> depths_for_period(const std::vector<int>& depths, int period) {
  std::set<int> out;
  for (int d : depths) out.insert(period * ((d + period - 1) / period));
  out.erase(0);
  return {out.begin(), out.end()};
}

const CliffordGate* find_layer(const CBDataset& ds, const std::string& name) {
  for (const CBConfig& c : ds.configs) {
    if (c.interleave && c.interleave->name() == name) return &*c.interleave;
  }
  return nullptr;
}

}  // namespace

std::vector<Observation> observations_from_fits(const std::vector<DecayFit>& fits, const CBDataset& ds,
                                                const PatternGraph& g) {
  std::vector<Observation> out;
  for (const DecayFit& f : fits) {
    if (!f.fittable || f.key.protocol == Protocol::kIntercept) continue;
    PauliOp start = PauliOp::from_str(f.key.orbit);
    if (start.is_identity()) continue;
    const CliffordGate* layer = nullptr;
    if (!f.key.interleave.empty()) {
      layer = find_layer(ds, f.key.interleave);
      if (!layer) throw std::invalid_argument("dataset lacks the definition of layer '" + f.key.interleave + "'");
    }
    OrbitInfo info = orbit_info(g, f.key.gate, layer, start);
    Observation o;
    o.label = f.key.str();
    o.functional = info.functional;
    o.value = std::log(f.rate);
    o.sigma = f.rate_se / f.rate;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<CBConfig> plan_learnable_suite(const GateSet& gates, const SuiteOptions& opt) {
  PatternGraph graph(gates);
  const int n = gates.n;
  std::vector<CBConfig> configs;
  for (size_t gi = 0; gi < gates.gates.size(); ++gi) {
    const CliffordGate& G = gates.gates[gi];
    SpanBuilder span(graph.num_edges());
    span.try_add(SparseFunctional{{graph.edge_index(gi, 0), 1.0}});
    // Non-trivial cycle-space dimension restricted to this gate's block.
    PatternGraph single(GateSet({G}));
    const size_t target = cycle_space(single).dim();

    auto add_orbits = [&](const CliffordGate* layer, int max_period) {
      std::map<int, std::vector<std::string>> by_period;
      std::vector<bool> seen(num_paulis(n), false);
      for (uint64_t a = 1; a < num_paulis(n); ++a) {
        if (seen[a]) continue;
        OrbitInfo info = orbit_info(graph, G.name(), layer, PauliOp::from_index(n, a));
        for (const PauliOp& p : info.steps) seen[p.index()] = true;
        if (info.period > max_period) continue;
        if (span.try_add(info.functional)) by_period[info.period].push_back(pauli_label(a, n));
      }
      for (auto& [period, paulis] : by_period) {
        CBConfig cfg;
        cfg.protocol = layer ? (period == 1 ? Protocol::kInterleaved : Protocol::kCycle) : Protocol::kStandard;
        cfg.gate = G.name();
        cfg.paulis = paulis;
        cfg.depths = depths_for_period(opt.depths, period);
        cfg.circuits = opt.circuits;
        cfg.shots = opt.shots;
        cfg.seed = opt.seed;
        cfg.engine = opt.engine;
        if (layer) cfg.interleave = *layer;
        configs.push_back(std::move(cfg));
      }
    };

    add_orbits(nullptr, static_cast<int>(num_paulis(n)));
    if (!opt.complete || span.size() >= target) continue;

    // Local layers from {I, S, SQRT_X, H} first, then all single-qubit
    // Cliffords; orbits closed by the layer (interleaved CB) before longer
    // cycles.
    const auto& singles = gates::single_qubit_cliffords();
    std::vector<CliffordGate> preferred = {gates::by_name("I"), gates::s(), gates::sqrt_x(), gates::h()};
    std::vector<std::vector<CliffordGate>> pools = {preferred};
    if (n <= 2) pools.push_back(singles);
    for (int max_period : {1, static_cast<int>(num_paulis(n))}) {
      for (const auto& pool : pools) {
        const uint64_t count = static_cast<uint64_t>(std::pow(pool.size(), n));
        for (uint64_t code = 1; code < count && span.size() < target; ++code) {
          std::vector<CliffordGate> per_qubit;
          uint64_t c = code;
          for (int j = 0; j < n; ++j) {
            per_qubit.push_back(pool[c % pool.size()]);
            c /= pool.size();
          }
          CliffordGate layer = gates::local_layer(per_qubit);
          if (layer.is_identity()) continue;
          add_orbits(&layer, max_period);
        }
      }
    }
  }
  return configs;
}

CBConfig plan_intercept(const GateSet& gates, const std::string& gate, const std::vector<int>& ls, int circuits,
                        int shots, uint64_t seed, EngineKind engine) {
  const CliffordGate& G = gates.at(gate);
  CBConfig cfg;
  cfg.protocol = Protocol::kIntercept;
  cfg.gate = gate;
  for (uint64_t a = 1; a < num_paulis(gates.n); ++a) cfg.paulis.push_back(pauli_label(a, gates.n));
  cfg.depths = intercept_depths(ls, gate_order(G));
  cfg.circuits = circuits;
  cfg.shots = shots;
  cfg.seed = seed;
  cfg.engine = engine;
  return cfg;
}

CBDataset run_suite(const GateSet& gates, const Engine& engine, const std::vector<CBConfig>& configs) {
  CBDataset out;
  for (const CBConfig& cfg : configs) out.append(run_cb(gates, engine, cfg));
  return out;
}

}  // namespace plearn
