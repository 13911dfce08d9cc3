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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "plearn/gauge.hpp"
#include "plearn/pattern_graph.hpp"

namespace plearn {
namespace {

double midpoint_eta(const NoiseModel& m, double frac) {
  auto [lo, hi] = gauge_window(m);
  return lo + frac * (hi - lo);
}

TEST(ApplyGauge, DepolarizingUpdateRules) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(1);
  NoiseModel m = fixture::random_model(gs, rng);
  const double eta = midpoint_eta(m, 0.2);
  NoiseModel g = apply_gauge(m, GaugeTransform::depolarizing(0, eta), gs);
  const PauliChannel &before = m.gate("CNOT"), &after = g.gate("CNOT");
  EXPECT_NEAR(after.lambda("IZ"), eta * before.lambda("IZ"), 1e-15);
  EXPECT_NEAR(after.lambda("ZZ"), before.lambda("ZZ") / eta, 1e-15);
  EXPECT_DOUBLE_EQ(after.lambda("IX"), before.lambda("IX"));
  EXPECT_DOUBLE_EQ(after.lambda("XZ"), before.lambda("XZ"));
  EXPECT_NEAR(g.sp.lambda("ZI"), eta * m.sp.lambda("ZI"), 1e-15);
  EXPECT_DOUBLE_EQ(g.sp.lambda("IZ"), m.sp.lambda("IZ"));
  EXPECT_NEAR(g.meas.lambda("ZI"), m.meas.lambda("ZI") / eta, 1e-15);
  EXPECT_DOUBLE_EQ(g.sp.lambda(0), 1.0);
  EXPECT_DOUBLE_EQ(after.lambda(0), 1.0);
}

TEST(ApplyGauge, CutAroundIdentityPatternChangesNothing) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(2);
  NoiseModel m = fixture::random_model(gs, rng);
  NoiseModel g = apply_gauge(m, GaugeTransform::cut({0}, midpoint_eta(m, 0.7)), gs);
  for (uint64_t a = 0; a < 16; ++a) EXPECT_NEAR(g.gate("CNOT").lambda(a), m.gate("CNOT").lambda(a), 1e-15);
}

TEST(ApplyGauge, UnitEtaIsIdentity) {
  GateSet gs = fixture::cnot_swap();
  std::mt19937_64 rng(3);
  NoiseModel m = fixture::random_model(gs, rng);
  NoiseModel g = apply_gauge(m, GaugeTransform::depolarizing(1, 1.0), gs);
  EXPECT_EQ(g.sp.lambdas(), m.sp.lambdas());
  EXPECT_EQ(g.meas.lambdas(), m.meas.lambdas());
  for (const CliffordGate& c : gs.gates) EXPECT_EQ(g.gate(c.name()).lambdas(), m.gate(c.name()).lambdas());
}

TEST(ApplyGauge, RejectsEtaOutsideWindow) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(4);
  NoiseModel m = fixture::random_model(gs, rng);
  auto [lo, hi] = gauge_window(m);
  EXPECT_LT(lo, 1.0);
  EXPECT_GT(hi, 1.0);
  EXPECT_THROW(apply_gauge(m, GaugeTransform::depolarizing(0, 0.5), gs), std::invalid_argument);
  EXPECT_THROW(apply_gauge(m, GaugeTransform::depolarizing(0, hi * 1.01), gs), std::invalid_argument);
  EXPECT_THROW(apply_gauge(m, GaugeTransform::depolarizing(5, 1.0), gs), std::invalid_argument);
  EXPECT_THROW(apply_gauge(m, GaugeTransform::cut({9}, 1.0), gs), std::invalid_argument);
}

TEST(ApplyGauge, CycleFunctionalsInvariant) {
  for (const GateSet& gs : {fixture::cnot(), fixture::swap(), fixture::cnot_swap(), fixture::circ3()}) {
    PatternGraph graph = build_graph(gs);
    SpaceBasis cyc = cycle_space(graph);
    std::mt19937_64 rng(5);
    NoiseModel m = fixture::random_model(gs, rng);
    GaugeTransform t = GaugeTransform::composite(
        {GaugeTransform::depolarizing(0, midpoint_eta(m, 0.3)), GaugeTransform::cut({1}, midpoint_eta(m, 0.9))});
    NoiseModel g = apply_gauge(m, t, gs);
    std::vector<double> l0 = flatten_log_fidelities(m, gs), l1 = flatten_log_fidelities(g, gs);
    for (const SparseFunctional& v : cyc.vectors) {
      double f0 = 0.0, f1 = 0.0;
      for (const auto& [e, c] : v) {
        f0 += c * l0[e];
        f1 += c * l1[e];
      }
      EXPECT_NEAR(f0, f1, 1e-10);
    }
  }
}

TEST(ApplyGauge, CutVectorShiftIsExact) {
  GateSet gs = fixture::cnot_ring();
  PatternGraph graph = build_graph(gs);
  std::mt19937_64 rng(6);
  NoiseModel m = fixture::random_model(gs, rng);
  const double eta = midpoint_eta(m, 0.8);
  const double tp = std::log(eta);
  for (uint32_t v = 1; v < graph.num_vertices(); ++v) {
    // Gauge along the vertex cut ({v}, rest).
    NoiseModel g = apply_gauge(m, GaugeTransform::cut({v}, eta), gs);
    std::vector<double> l0 = flatten_log_fidelities(m, gs), l1 = flatten_log_fidelities(g, gs);
    for (uint64_t e = 0; e < graph.num_edges(); ++e) {
      double expected = 0.0;
      if (graph.src(e) == v && graph.dst(e) != v) expected = tp;
      if (graph.dst(e) == v && graph.src(e) != v) expected = -tp;
      EXPECT_NEAR(l1[e] - l0[e], expected, 1e-12) << graph.edge_name(e) << " v=" << v;
    }
  }
}

TEST(ApplyGauge, CompositeEqualsSequential) {
  GateSet gs = fixture::cnot_swap();
  std::mt19937_64 rng(7);
  NoiseModel m = fixture::random_model(gs, rng);
  GaugeTransform a = GaugeTransform::depolarizing(0, midpoint_eta(m, 0.4));
  GaugeTransform b = GaugeTransform::depolarizing(1, midpoint_eta(m, 0.6));
  NoiseModel seq = apply_gauge(apply_gauge(m, a, gs), b, gs);
  NoiseModel comp = apply_gauge(m, GaugeTransform::composite({a, b}), gs);
  for (uint64_t i = 0; i < 16; ++i) {
    EXPECT_NEAR(seq.sp.lambda(i), comp.sp.lambda(i), 1e-15);
    EXPECT_NEAR(seq.meas.lambda(i), comp.meas.lambda(i), 1e-15);
    for (const CliffordGate& c : gs.gates) EXPECT_NEAR(seq.gate(c.name()).lambda(i), comp.gate(c.name()).lambda(i), 1e-15);
  }
}

TEST(ApplyGauge, OutputStaysStrictlyPositive) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    NoiseModel m = fixture::random_model(gs, rng);
    auto [lo, hi] = gauge_window(m);
    for (double eta : {lo + 1e-9, hi - 1e-9}) {
      NoiseModel g = apply_gauge(m, GaugeTransform::depolarizing(k % 2, eta), gs);
      EXPECT_TRUE(g.validate(gs, ValidationMode::kStrictlyPositive).ok);
    }
  }
}

TEST(Certify, GaugedModelIndistinguishable) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(9);
  NoiseModel m = fixture::random_model(gs, rng, 1e-3, 1e-2);
  NoiseModel g = apply_gauge(m, GaugeTransform::depolarizing(0, midpoint_eta(m, 0.1)), gs);
  IndistinguishabilityReport r = certify_indistinguishable(m, g, gs, 200, 11);
  EXPECT_GE(r.experiments, 200);
  EXPECT_TRUE(r.indistinguishable(1e-9)) << r.max_deviation << " " << r.worst;
}

TEST(Certify, LearnablePerturbationDistinguishable) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(10);
  NoiseModel m = fixture::random_model(gs, rng, 1e-3, 1e-2);
  NoiseModel m2 = m;
  std::vector<double> lam = m.gate("CNOT").lambdas();
  lam[index_from_label("XZ")] -= 0.01;
  m2.gate_noise.at("CNOT") = PauliChannel(2, lam);
  IndistinguishabilityReport r = certify_indistinguishable(m, m2, gs, 200, 11);
  EXPECT_GT(r.max_deviation, 1e-4);
  EXPECT_FALSE(r.indistinguishable());
}

TEST(Certify, SameModelZeroDeviation) {
  GateSet gs = fixture::cnot_ring();
  std::mt19937_64 rng(12);
  NoiseModel m = fixture::random_model(gs, rng);
  IndistinguishabilityReport r = certify_indistinguishable(m, m, gs, 20, 1);
  EXPECT_EQ(r.max_deviation, 0.0);
}

TEST(Certify, RefusesLargeRegisters) {
  GateSet gs({CliffordGate::identity(4)});
  NoiseModel m = NoiseModel::noiseless(gs);
  EXPECT_THROW(certify_indistinguishable(m, m, gs, 1, 1), std::invalid_argument);
}

}  // namespace
}  // namespace plearn
