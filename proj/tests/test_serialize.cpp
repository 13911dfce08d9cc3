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
#include "plearn/serialize.hpp"

namespace plearn {
namespace {

TEST(ParseJson, ReportsLineAndContext) {
  const std::string text = "{\n  \"n\": 2,\n  \"gates\": [ oops ]\n}\n";
  try {
    parse_json(text, "gs.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("gs.json:3:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("\"gates\": [ oops ]"), std::string::npos) << msg;
  }
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST(Gates, TableauRoundTrip) {
  std::mt19937_64 rng(1);
  for (const CliffordGate& g : {gates::cnot(), gates::swap(), gates::permutation({1, 2, 0}, "CIRC3"),
                                embed(gates::h(), {2}, 3).renamed("H2")}) {
    CliffordGate back = gate_from_json(gate_to_json(g));
    EXPECT_TRUE(back.same_action(g));
    EXPECT_EQ(back.name(), g.name());
    EXPECT_EQ(back.support(), g.support());
  }
}

TEST(Gates, LibraryForm) {
  Json j = parse_json(R"({"library": "CNOT", "support": [2, 0], "name": "CNOT31"})", "t");
  CliffordGate g = gate_from_json(j, 3);
  EXPECT_TRUE(g.same_action(embed(gates::cnot(), {2, 0}, 3)));
  EXPECT_EQ(g.name(), "CNOT31");
  EXPECT_THROW(gate_from_json(parse_json(R"({"library": "TOFFOLI"})", "t")), ParseError);
  EXPECT_THROW(gate_from_json(parse_json(R"({"n": 1, "x_images": ["Z"], "z_images": ["Z"]})", "t")), ParseError);
  EXPECT_THROW(gate_from_json(parse_json(R"([1, 2])", "t")), ParseError);
}

TEST(GateSets, PresetsAndFiles) {
  for (const std::string& name : gate_set_presets()) {
    GateSet gs = gate_set_preset(name);
    GateSet back = gate_set_from_json(gate_set_to_json(gs));
    ASSERT_EQ(back.gates.size(), gs.gates.size());
    for (size_t i = 0; i < gs.gates.size(); ++i) EXPECT_TRUE(back.gates[i].same_action(gs.gates[i]));
  }
  EXPECT_EQ(gate_set_from_json(parse_json(R"({"preset": "cnot3ring"})", "t")).gates.size(), 3u);
  EXPECT_EQ(gate_set_from_json(parse_json(R"({"library": "SWAP"})", "t")).gates.front().name(), "SWAP");
  EXPECT_THROW(gate_set_preset("toffoli"), ParseError);
  EXPECT_THROW(gate_set_from_json(parse_json(R"({"n": 2, "gates": [{"library": "CNOT"}, {"library": "CNOT"}]})", "t")),
               ParseError);
}

TEST(Channels, RoundTripBothBases) {
  std::mt19937_64 rng(2);
  PauliChannel ch = fixture::random_channel(2, rng, 1e-3, 1e-2);
  for (bool p : {false, true}) {
    PauliChannel back = channel_from_json(parse_json(channel_to_json(ch, p).dump(), "t"));
    for (uint64_t a = 0; a < 16; ++a) EXPECT_NEAR(back.lambda(a), ch.lambda(a), 1e-15);
  }
  EXPECT_THROW(channel_from_json(parse_json(R"({"n": 1, "values": [1, 1, 1]})", "t")), ParseError);
  EXPECT_THROW(channel_from_json(parse_json(R"({"n": 1, "basis": "chi", "values": [1, 1, 1, 1]})", "t")), ParseError);
}

TEST(NoiseModels, RoundTrip) {
  GateSet gs = fixture::cnot_swap();
  std::mt19937_64 rng(3);
  NoiseModel m = fixture::random_model(gs, rng);
  NoiseModel back = noise_model_from_json(parse_json(noise_model_to_json(m).dump(2), "t"));
  EXPECT_EQ(back.n, 2);
  EXPECT_EQ(back.sp.lambdas(), m.sp.lambdas());
  EXPECT_EQ(back.gate("SWAP").lambdas(), m.gate("SWAP").lambdas());
}

TEST(CptpSpec, RoundTripAndDetection) {
  GateSet gs = fixture::cnot();
  CPTPNoiseSpec s = CPTPNoiseSpec::amplitude_damping(gs, 0.05, 0.003, 0.001);
  Json j = cptp_spec_to_json(s);
  EXPECT_TRUE(is_cptp_spec(j));
  EXPECT_FALSE(is_cptp_spec(noise_model_to_json(NoiseModel::noiseless(gs))));
  CPTPNoiseSpec back = cptp_spec_from_json(parse_json(j.dump(), "t"));
  EXPECT_EQ(back.meas_flip, s.meas_flip);
  EXPECT_EQ(back.sp_flip, s.sp_flip);
  dense::KrausSet a = s.kraus("CNOT"), b = back.kraus("CNOT");
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_LT((a[i] - b[i]).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gauges, RoundTripAndPatterns) {
  GaugeTransform t = GaugeTransform::composite(
      {GaugeTransform::depolarizing(1, 0.999), GaugeTransform::cut({1, 3}, 1.001)});
  GaugeTransform back = gauge_from_json(gauge_to_json(t), 2);
  ASSERT_EQ(back.parts.size(), 2u);
  EXPECT_EQ(back.parts[0].qubit, 1);
  EXPECT_EQ(back.parts[1].v1, (std::vector<uint32_t>{1, 3}));
  // Bit strings read with qubit 0 leftmost.
  GaugeTransform s = gauge_from_json(parse_json(R"({"kind": "cut", "v1": ["01", "11"]})", "t"), 2);
  EXPECT_EQ(s.v1, (std::vector<uint32_t>{2, 3}));
  EXPECT_TRUE(std::isnan(s.eta));
  EXPECT_THROW(gauge_from_json(parse_json(R"({"kind": "twist"})", "t"), 2), ParseError);
}

TEST(Configs, InterleaveForms) {
  Json j = parse_json(R"({"protocol": "interleaved", "gate": "CNOT", "paulis": ["XZ"], "depths": [1, 2],
                          "interleave": ["S", "SQRT_X"], "engine": "ptm_dense"})",
                      "t");
  CBConfig c = config_from_json(j, 2);
  ASSERT_TRUE(c.interleave.has_value());
  EXPECT_EQ(c.interleave->name(), "S.SQRT_X");
  EXPECT_EQ(c.engine, EngineKind::kPtmDense);
  CBConfig back = config_from_json(config_to_json(c), 2);
  EXPECT_TRUE(back.interleave->same_action(*c.interleave));
  EXPECT_EQ(back.depths, c.depths);
  EXPECT_THROW(config_from_json(parse_json(R"({"protocol": "rb", "gate": "CNOT", "paulis": [], "depths": []})", "t"), 2),
               ParseError);
}

TEST(Datasets, JsonRoundTripAndCsv) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(4);
  NoiseModel m = fixture::random_model(gs, rng, 1e-2, 2e-2);
  CBConfig cfg;
  cfg.gate = "CNOT";
  cfg.paulis = {"IZ", "XX"};
  cfg.depths = {2, 4};
  cfg.circuits = 3;
  cfg.shots = 0;
  CBDataset ds = run_standard_cb(gs, m, cfg);
  CBDataset back = dataset_from_json(parse_json(dataset_to_json(ds).dump(), "t"));
  ASSERT_EQ(back.records.size(), ds.records.size());
  for (size_t i = 0; i < ds.records.size(); ++i) {
    EXPECT_EQ(back.records[i].mean, ds.records[i].mean);
    EXPECT_EQ(back.records[i].meas, ds.records[i].meas);
  }
  std::string csv = dataset_to_csv(ds);
  EXPECT_EQ(csv.rfind("protocol,gate,interleave,orbit,family,prep,meas,depth,l,circuit,sign,shots,mean\n", 0), 0u);
  EXPECT_EQ(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')), ds.records.size() + 1);
  EXPECT_EQ(csv, dataset_to_csv(back));
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5, 0.9879}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Reports, AnalysisJsonHasCounts) {
  PatternGraph g(fixture::cnot());
  Json j = report_to_json(g, learnable_basis_report(g));
  EXPECT_EQ(j.at("udf").get<int>(), 2);
  EXPECT_EQ(j.at("ldf").get<int>(), 14);
}

}  // namespace
}  // namespace plearn
