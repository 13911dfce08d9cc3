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

#include "plearn/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "plearn/dense.hpp"
#include "plearn/kernels.hpp"
#include "plearn/pattern_graph.hpp"

namespace plearn {

GaugeTransform GaugeTransform::depolarizing(int qubit, double eta) {
  GaugeTransform t;
  t.kind = Kind::kDepolarizing;
  t.qubit = qubit;
  t.eta = eta;
  return t;
}

GaugeTransform GaugeTransform::cut(std::vector<uint32_t> v1, double eta) {
  GaugeTransform t;
  t.kind = Kind::kCut;
  t.v1 = std::move(v1);
  t.eta = eta;
  return t;
}

GaugeTransform GaugeTransform::composite(std::vector<GaugeTransform> parts) {
  GaugeTransform t;
  t.kind = Kind::kComposite;
  t.parts = std::move(parts);
  return t;
}

std::vector<double> gauge_multiplier(const GaugeTransform& t, int n) {
  const uint64_t nv = uint64_t{1} << n;
  std::vector<double> m(nv, 1.0);
  switch (t.kind) {
    case GaugeTransform::Kind::kDepolarizing:
      if (t.qubit < 0 || t.qubit >= n) throw std::invalid_argument("gauge qubit out of range");
      for (uint64_t u = 0; u < nv; ++u) {
        if ((u >> t.qubit) & 1) m[u] = t.eta;
      }
      break;
    case GaugeTransform::Kind::kCut: {
      std::vector<bool> in_v1(nv, false);
      for (uint32_t v : t.v1) {
        if (v >= nv) throw std::invalid_argument("cut vertex " + std::to_string(v) + " out of range");
        in_v1[v] = true;
      }
      for (uint64_t u = 0; u < nv; ++u) m[u] = in_v1[u] ? 1.0 : t.eta;
      const double base = m[0];
      for (double& v : m) v /= base;
      break;
    }
    case GaugeTransform::Kind::kComposite:
      for (const GaugeTransform& part : t.parts) {
        std::vector<double> pm = gauge_multiplier(part, n);
        for (uint64_t u = 0; u < nv; ++u) m[u] *= pm[u];
      }
      break;
  }
  return m;
}

std::pair<double, double> gauge_window(const NoiseModel& m) {
  const double p_min = m.min_error_rate();
  return {1.0 / (1.0 + p_min), 1.0 + p_min};
}

NoiseModel apply_gauge_unchecked(const NoiseModel& m, const GaugeTransform& t, const GateSet& gates) {
  const int n = m.n;
  const std::vector<double> mult = gauge_multiplier(t, n);
  const uint64_t size = num_paulis(n);
  std::vector<double> sp(size), meas(size);
  for (uint64_t a = 0; a < size; ++a) {
    double ma = mult[pattern_of_index(a, n)];
    sp[a] = m.sp.lambda(a) * ma;
    meas[a] = m.meas.lambda(a) / ma;
  }
  NoiseModel out;
  out.n = n;
  out.sp = PauliChannel(n, std::move(sp));
  out.meas = PauliChannel(n, std::move(meas));
  for (const CliffordGate& g : gates.gates) {
    const PauliChannel& ch = m.gate(g.name());
    std::vector<double> lambda(size);
    for (uint64_t a = 0; a < size; ++a) {
      uint64_t image = g.conjugate_index(a, nullptr);
      lambda[a] = ch.lambda(a) * mult[pattern_of_index(image, n)] / mult[pattern_of_index(a, n)];
    }
    out.gate_noise.emplace(g.name(), PauliChannel(n, std::move(lambda)));
  }
  return out;
}

NoiseModel apply_gauge(const NoiseModel& m, const GaugeTransform& t, const GateSet& gates) {
  if (t.kind == GaugeTransform::Kind::kComposite) {
    NoiseModel current = m;
    for (const GaugeTransform& part : t.parts) current = apply_gauge(current, part, gates);
    return current;
  }
  auto [lo, hi] = gauge_window(m);
  if (t.eta != 1.0 && !(t.eta > lo && t.eta < hi)) {
    std::ostringstream os;
    os << "gauge eta " << t.eta << " outside the validity window (" << lo << ", " << hi << ")";
    throw std::invalid_argument(os.str());
  }
  NoiseModel out = apply_gauge_unchecked(m, t, gates);
  ValidationReport report = out.validate(gates, ValidationMode::kStrictlyPositive);
  if (!report.ok) throw std::invalid_argument("gauged model is not strictly positive: " + report.summary(m.n));
  return out;
}

namespace {

struct Layer {
  int gate = -1;          // index into the gate set, or -1 for a local layer
  CliffordGate local;     // noiseless single-qubit layer
};

struct Experiment {
  std::vector<int> prep_axis;   // per qubit: 1 = X, 2 = Z, 3 = Y (canonical digit)
  std::vector<int> prep_sign;   // per qubit: +1 / -1
  std::vector<Layer> layers;
  std::vector<int> meas_axis;
  std::string label;
};

struct DenseModel {
  int n = 0;
  std::vector<double> sp;
  std::vector<double> meas;
  std::vector<dense::RowMatrix> gate_ptm;  // PTM(G) diag(lambda)
};

DenseModel to_dense_model(const NoiseModel& m, const GateSet& gates) {
  DenseModel d;
  d.n = m.n;
  d.sp = m.sp.lambdas();
  d.meas = m.meas.lambdas();
  for (const CliffordGate& g : gates.gates) {
    d.gate_ptm.push_back(dense::clifford_ptm(g) * dense::pauli_channel_ptm(m.gate(g.name())));
  }
  return d;
}

std::vector<double> outcome_distribution(const DenseModel& d, const Experiment& ex) {
  const int n = d.n;
  const uint64_t size = num_paulis(n);
  std::vector<double> r(size, 0.0), next(size);
  // Stabilizer group of the product state: every subset S of the qubits.
  for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) {
    uint64_t index = 0;
    double value = 1.0;
    for (int j = 0; j < n; ++j) {
      if ((s >> j) & 1) {
        index |= static_cast<uint64_t>(ex.prep_axis[j]) << (2 * j);
        value *= ex.prep_sign[j];
      }
    }
    r[index] = value * d.sp[index];
  }
  for (const Layer& layer : ex.layers) {
    if (layer.gate >= 0) {
      kernels::matvec(d.gate_ptm[static_cast<size_t>(layer.gate)].data(), r.data(), next.data(), size);
    } else {
      std::fill(next.begin(), next.end(), 0.0);
      for (uint64_t a = 0; a < size; ++a) {
        if (r[a] == 0.0) continue;
        int sign = 1;
        uint64_t b = layer.local.conjugate_index(a, &sign);
        next[b] += sign * r[a];
      }
    }
    r.swap(next);
  }
  for (uint64_t a = 0; a < size; ++a) r[a] *= d.meas[a];
  const uint64_t outcomes = uint64_t{1} << n;
  std::vector<double> probs(outcomes, 0.0);
  for (uint64_t o = 0; o < outcomes; ++o) {
    double acc = 0.0;
    for (uint64_t s = 0; s < outcomes; ++s) {
      uint64_t index = 0;
      for (int j = 0; j < n; ++j) {
        if ((s >> j) & 1) index |= static_cast<uint64_t>(ex.meas_axis[j]) << (2 * j);
      }
      acc += (std::popcount(o & s) & 1 ? -1.0 : 1.0) * r[index];
    }
    probs[o] = acc / static_cast<double>(outcomes);
  }
  return probs;
}

std::vector<Experiment> build_experiments(const GateSet& gates, int trials, uint64_t seed) {
  const int n = gates.n;
  const auto& locals = gates::single_qubit_cliffords();
  std::vector<Experiment> out;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(derive_seed(seed, {0x6761756765ull, static_cast<uint64_t>(t)}));
    Experiment ex;
    for (int j = 0; j < n; ++j) {
      ex.prep_axis.push_back(1 + static_cast<int>(rng.below(3)));
      ex.prep_sign.push_back(rng.below(2) ? -1 : 1);
      ex.meas_axis.push_back(1 + static_cast<int>(rng.below(3)));
    }
    int depth = 1 + static_cast<int>(rng.below(8));
    for (int k = 0; k < depth; ++k) {
      Layer layer;
      if (rng.below(2) == 0) {
        layer.gate = static_cast<int>(rng.below(gates.gates.size()));
      } else {
        std::vector<CliffordGate> per_qubit;
        for (int j = 0; j < n; ++j) per_qubit.push_back(locals[rng.below(locals.size())]);
        layer.local = gates::local_layer(per_qubit);
      }
      ex.layers.push_back(std::move(layer));
    }
    ex.label = "random#" + std::to_string(t);
    out.push_back(std::move(ex));
  }
  // CB-style circuits for every pattern-preserving Pauli of every gate.
  for (size_t gi = 0; gi < gates.gates.size(); ++gi) {
    const CliffordGate& g = gates.gates[gi];
    for (uint64_t a = 1; a < num_paulis(n); ++a) {
      PauliOp p = PauliOp::from_index(n, a);
      if (!learnable_individual(g, p)) continue;
      PauliOp image = p;
      for (int m = 1; m <= 8; ++m) {
        image = g.conjugate(image);
        Experiment ex;
        for (int j = 0; j < n; ++j) {
          int digit = static_cast<int>((a >> (2 * j)) & 3);
          ex.prep_axis.push_back(digit ? digit : 2);
          ex.prep_sign.push_back(1);
          int out_digit = static_cast<int>((image.index() >> (2 * j)) & 3);
          ex.meas_axis.push_back(out_digit ? out_digit : 2);
        }
        for (int k = 0; k < m; ++k) ex.layers.push_back(Layer{static_cast<int>(gi), {}});
        ex.label = "cb:" + g.name() + ":" + p.str(false) + ":m=" + std::to_string(m);
        out.push_back(std::move(ex));
      }
    }
  }
  return out;
}

}  // namespace

IndistinguishabilityReport certify_indistinguishable(const NoiseModel& m1, const NoiseModel& m2,
                                                     const GateSet& gates, int trials, uint64_t seed) {
  if (gates.n > dense::kMaxDenseQubits) {
    throw std::invalid_argument("certify_indistinguishable needs n <= " + std::to_string(dense::kMaxDenseQubits));
  }
  if (m1.n != gates.n || m2.n != gates.n) throw std::invalid_argument("model qubit count differs from gate set");
  DenseModel d1 = to_dense_model(m1, gates), d2 = to_dense_model(m2, gates);
  IndistinguishabilityReport report;
  for (const Experiment& ex : build_experiments(gates, trials, seed)) {
    std::vector<double> p1 = outcome_distribution(d1, ex), p2 = outcome_distribution(d2, ex);
    for (size_t o = 0; o < p1.size(); ++o) {
      double dev = std::abs(p1[o] - p2[o]);
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst = ex.label;
      }
    }
    ++report.experiments;
  }
  return report;
}

}  // namespace plearn
