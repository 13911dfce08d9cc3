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
#include <functional>
#include <random>

#include "fixtures.hpp"
#include "plearn/estimator.hpp"

namespace plearn {
namespace {

CBDataset synthetic(const std::vector<int>& depths, int circuits, const std::function<double(int, int)>& mean) {
  CBDataset ds;
  ds.n = 2;
  for (int d : depths) {
    for (int c = 0; c < circuits; ++c) {
      CBRecord r;
      r.gate = "CNOT";
      r.orbit = "IX";
      r.family = "main";
      r.prep = r.meas = "IX";
      r.depth = d;
      r.circuit = c;
      r.mean = mean(d, c);
      ds.records.push_back(r);
    }
  }
  return ds;
}

const OrbitKey kKey{Protocol::kStandard, "CNOT", "", "IX", "main"};

TEST(FitDecay, ExactExponentialRecovered) {
  CBDataset ds = synthetic({2, 4, 8, 16, 32, 64, 128}, 4, [](int d, int) { return 0.95 * std::pow(0.98, d); });
  for (bool nonlinear : {false, true}) {
    FitOptions opt;
    opt.nonlinear = nonlinear;
    DecayFit f = fit_decay(ds, kKey, opt);
    ASSERT_TRUE(f.fittable) << f.reason;
    EXPECT_NEAR(f.rate, 0.98, 1e-9);
    EXPECT_NEAR(f.amplitude, 0.95, 1e-9);
    EXPECT_NEAR(f.rate_se, 0.0, 1e-12);
    EXPECT_NEAR(f.amplitude_se, 0.0, 1e-12);
    ASSERT_EQ(f.points.size(), 7u);
    for (const DepthPoint& p : f.points) {
      EXPECT_TRUE(p.used);
      EXPECT_NEAR(p.residual, 0.0, 1e-12);
    }
  }
}

TEST(FitDecay, NoisyDataWithinBootstrapErrors) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise(0.0, 0.01);
  CBDataset ds = synthetic({2, 4, 8, 16, 32}, 30, [&](int d, int) { return 0.9 * std::pow(0.97, d) + noise(rng); });
  DecayFit f = fit_decay(ds, kKey);
  ASSERT_TRUE(f.fittable);
  EXPECT_GT(f.rate_se, 0.0);
  EXPECT_GT(f.amplitude_se, 0.0);
  EXPECT_LT(f.rate_se, 0.01);
  EXPECT_NEAR(f.rate, 0.97, 4 * f.rate_se);
  EXPECT_NEAR(f.amplitude, 0.9, 4 * f.amplitude_se);
}

TEST(FitDecay, BootstrapIsDeterministic) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.02);
  CBDataset ds = synthetic({2, 4, 8}, 10, [&](int d, int) { return std::pow(0.95, d) + noise(rng); });
  DecayFit a = fit_decay(ds, kKey), b = fit_decay(ds, kKey);
  EXPECT_EQ(a.rate_se, b.rate_se);
  FitOptions other;
  other.seed = 99;
  EXPECT_NE(fit_decay(ds, kKey, other).rate_se, a.rate_se);
}

TEST(FitDecay, NonPositiveOrAlternatingFlagged) {
  CBDataset neg = synthetic({2, 4, 8}, 3, [](int, int) { return -0.5; });
  DecayFit f = fit_decay(neg, kKey);
  EXPECT_FALSE(f.fittable);
  EXPECT_FALSE(f.reason.empty());
  CBDataset alt = synthetic({1, 2, 3, 4}, 3, [](int d, int) { return std::pow(-0.9, d); });
  EXPECT_FALSE(fit_decay(alt, kKey).fittable);
  CBDataset one = synthetic({4}, 3, [](int, int) { return 0.9; });
  EXPECT_FALSE(fit_decay(one, kKey).fittable);
  EXPECT_FALSE(fit_decay(one, OrbitKey{Protocol::kStandard, "CNOT", "", "ZZ", "main"}).fittable);
}

TEST(FitDecay, InsignificantDeepPointsDropped) {
  CBDataset ds = synthetic({2, 4, 200}, 3, [](int d, int c) { return d == 200 ? (c == 0 ? 0.01 : -0.01) : std::pow(0.9, d); });
  DecayFit f = fit_decay(ds, kKey);
  ASSERT_TRUE(f.fittable);
  EXPECT_NEAR(f.rate, 0.9, 1e-12);
  EXPECT_FALSE(f.points.back().used);
}

TEST(FitDecay, IzOrbitRateIsGeometricMean) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(4);
  NoiseModel m = fixture::random_model(gs, rng, 1e-3, 1e-2);
  CBConfig cfg;
  cfg.gate = "CNOT";
  cfg.paulis = {"IZ", "IX", "XZ"};
  cfg.depths = {2, 4, 8, 16};
  cfg.circuits = 3;
  cfg.shots = 0;
  CBDataset ds = run_standard_cb(gs, m, cfg);
  const PauliChannel& c = m.gate("CNOT");
  std::vector<DecayFit> fits = fit_all(ds);
  ASSERT_EQ(fits.size(), 3u);
  for (const DecayFit& f : fits) {
    ASSERT_TRUE(f.fittable);
    double expected = f.key.orbit == "IZ" ? std::sqrt(c.lambda("IZ") * c.lambda("ZZ"))
                      : f.key.orbit == "IX" ? c.lambda("IX")
                                            : std::sqrt(c.lambda("XZ") * c.lambda("YY"));
    EXPECT_NEAR(f.rate, expected, 1e-9) << f.key.str();
  }
}

TEST(FitDecay, AmplitudeDampingInterleavedXz) {
  GateSet gs = fixture::cnot();
  CPTPNoiseSpec spec = CPTPNoiseSpec::amplitude_damping(gs, 0.05, 0.003, 0.0);
  CBConfig cfg;
  cfg.protocol = Protocol::kInterleaved;
  cfg.gate = "CNOT";
  cfg.paulis = {"XZ"};
  cfg.depths = {2, 4, 8, 16, 32, 64, 128};
  cfg.circuits = 30;
  cfg.shots = 200;
  cfg.seed = 5;
  cfg.interleave = gates::local_layer({gates::s(), gates::sqrt_x()});
  cfg.engine = EngineKind::kPtmDense;
  CBDataset ds = run_ptm_dense(gs, spec, cfg);
  DecayFit f = fit_all(ds).front();
  ASSERT_TRUE(f.fittable);
  double truth = spec.twirled_model(gs).gate("CNOT").lambda("XZ");
  EXPECT_NEAR(f.rate, truth, 3 * f.rate_se);
}

TEST(OrbitKeys, FirstAppearanceOrder) {
  CBDataset ds = synthetic({2}, 1, [](int, int) { return 1.0; });
  CBRecord r = ds.records.front();
  r.orbit = "ZZ";
  ds.records.insert(ds.records.begin(), r);
  std::vector<OrbitKey> keys = orbit_keys(ds);
  ASSERT_EQ(keys.size(), 2u);
  EXPECT_EQ(keys[0].orbit, "ZZ");
  EXPECT_EQ(keys[1].str(), "standard:CNOT:IX");
  OrbitKey k{Protocol::kIntercept, "CNOT", "", "IZ", "a"};
  EXPECT_EQ(k.str(), "intercept:CNOT:IZ:a");
}

}  // namespace
}  // namespace plearn
