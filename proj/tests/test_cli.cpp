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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_commands.hpp"
#include "fixtures.hpp"
#include "plearn/serialize.hpp"
#include "plearn/study.hpp"

namespace plearn {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "plearn");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("plearn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, AnalyzeCounts) {
  struct Case {
    std::string preset;
    int udf;
    int edges;
  };
  for (const Case& c : {Case{"cnot", 2, 16}, Case{"circ3", 4, 64}, Case{"cnot+swap", 2, 32}}) {
    const std::string out = path(c.preset);
    Result r = run_cli({"analyze", "--gateset", c.preset, "--out", out});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    Json j = read_json_file(out + "/report.json");
    EXPECT_EQ(j.at("udf").get<int>(), c.udf) << c.preset;
    EXPECT_EQ(j.at("num_edges").get<int>(), c.edges) << c.preset;
    EXPECT_TRUE(fs::exists(out + "/report.md"));
    EXPECT_TRUE(fs::exists(out + "/graph.dot"));
  }
}

TEST_F(CliTest, FormatSelection) {
  Result r = run_cli({"analyze", "--gateset", "cnot", "--out", path("a"), "--format", "md"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(path("a/report.md")));
  EXPECT_FALSE(fs::exists(path("a/report.json")));
}

TEST_F(CliTest, ParseErrorsExitFourWithLineContext) {
  {
    std::ofstream f(path("bad.json"));
    f << "{\n  \"n\": 2,\n  \"gates\": [\n    {\"library\": \"CNOT\",}\n  ]\n}\n";
  }
  Result r = run_cli({"analyze", "--gateset", path("bad.json"), "--out", path("o")});
  EXPECT_EQ(r.code, cli::kExitParse);
  EXPECT_NE(r.err.find("bad.json:4:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("{\"library\": \"CNOT\",}"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"analyze", "--bogus"}).code, cli::kExitParse);
  EXPECT_EQ(run_cli({"analyze"}).code, cli::kExitParse);
  EXPECT_EQ(run_cli({"analyze", "--gateset", "toffoli"}).code, cli::kExitParse);
}

TEST_F(CliTest, SimulateIsByteReproducible) {
  std::vector<std::string> base = {"simulate", "--gateset", "cnot", "--noise", "depol:0.02:0.01",
                                   "--depths", "2,4,8", "--circuits", "4", "--shots", "50", "--seed", "11"};
  std::vector<std::string> a = base, b = base, c = base;
  a.insert(a.end(), {"--out", path("a")});
  b.insert(b.end(), {"--out", path("b")});
  c.insert(c.end(), {"--out", path("c")});
  c[c.size() - 3] = "12";
  ASSERT_EQ(run_cli(a).code, cli::kExitOk);
  ASSERT_EQ(run_cli(b).code, cli::kExitOk);
  ASSERT_EQ(run_cli(c).code, cli::kExitOk);
  EXPECT_EQ(slurp(path("a/dataset.csv")), slurp(path("b/dataset.csv")));
  EXPECT_EQ(slurp(path("a/dataset.json")), slurp(path("b/dataset.json")));
  EXPECT_NE(slurp(path("a/dataset.csv")), slurp(path("c/dataset.csv")));
  EXPECT_EQ(read_json_file(path("a/dataset.json")).at("seed").get<int>(), 11);
}

TEST_F(CliTest, EngineNoiseMismatchIsValidationFailure) {
  Result r = run_cli({"simulate", "--gateset", "cnot", "--noise", "ad:0.05", "--engine", "pauli_fast", "--out", path("o"),
                      "--depths", "2,4", "--circuits", "2"});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, FitWarnsAboutMissingDirections) {
  ASSERT_EQ(run_cli({"simulate", "--gateset", "cnot", "--noise", "depol:0.02", "--suite", "standard", "--depths",
                     "2,4,8", "--circuits", "3", "--shots", "0", "--out", path("sim")})
                .code,
            cli::kExitOk);
  Result r = run_cli({"fit", "--gateset", "cnot", "--dataset", path("sim/dataset.json"), "--out", path("fit")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.err.find("learnable directions"), std::string::npos) << r.err;
  Json est = read_json_file(path("fit/estimates.json"));
  EXPECT_FALSE(est.at("complete").get<bool>());
  // The feasible region needs complete coverage.
  Result f = run_cli({"feasible", "--gateset", "cnot", "--dataset", path("sim/dataset.json"), "--out", path("feas")});
  EXPECT_EQ(f.code, cli::kExitValidation);
}

TEST_F(CliTest, FitAndFeasibleOnExactData) {
  ASSERT_EQ(run_cli({"simulate", "--gateset", "cnot", "--noise", "depol:0.02:0.01", "--depths", "2,4,8", "--circuits",
                     "2", "--shots", "0", "--out", path("sim")})
                .code,
            cli::kExitOk);
  Result r = run_cli({"fit", "--gateset", "cnot", "--dataset", path("sim/dataset.json"), "--out", path("fit")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* f : {"fits.json", "estimates.json", "decays.csv", "fidelities.csv", "decays.svg", "fidelities.svg"}) {
    EXPECT_TRUE(fs::exists(path(std::string("fit/") + f))) << f;
  }
  EXPECT_TRUE(read_json_file(path("fit/estimates.json")).at("complete").get<bool>());
  Result f = run_cli({"feasible", "--gateset", "cnot", "--dataset", path("sim/dataset.json"), "--noise",
                      "depol:0.02:0.01", "--grid", "2601", "--out", path("feas")});
  ASSERT_EQ(f.code, cli::kExitOk) << f.err;
  Json region = read_json_file(path("feas/region.json"));
  EXPECT_TRUE(region.at("truth_inside").get<bool>());
  EXPECT_TRUE(fs::exists(path("feas/boundary.csv")));
  EXPECT_TRUE(fs::exists(path("feas/region.svg")));
}

TEST_F(CliTest, EmptyRegionExitsThree) {
  GateSet gs = fixture::cnot();
  SuiteOptions so;
  so.depths = {2, 4, 8};
  so.circuits = 2;
  so.shots = 0;
  CBDataset ds = run_suite(gs, PauliFastEngine(gs, NoiseModel::noiseless(gs)), plan_learnable_suite(gs, so));
  // Make one learnable fidelity exceed 1.
  for (CBRecord& r : ds.records) {
    if (r.protocol == Protocol::kInterleaved && r.orbit == "XZ") r.mean = std::pow(1.1, r.depth);
  }
  bool touched = false;
  for (const CBRecord& r : ds.records) touched |= r.protocol == Protocol::kInterleaved && r.orbit == "XZ";
  ASSERT_TRUE(touched);
  write_text_file(path("ds.json"), dataset_to_json(ds).dump());
  Result r = run_cli({"feasible", "--gateset", "cnot", "--dataset", path("ds.json"), "--eps", "0", "--grid", "441",
                      "--out", path("feas")});
  EXPECT_EQ(r.code, cli::kExitInfeasible) << r.err;
  Json region = read_json_file(path("feas/region.json"));
  EXPECT_TRUE(region.at("empty").get<bool>());
  EXPECT_GT(region.at("min_eps").get<double>(), 0.0);
}

TEST_F(CliTest, GaugeCheckVerdicts) {
  GateSet gs = fixture::cnot();
  std::mt19937_64 rng(5);
  NoiseModel m = fixture::random_model(gs, rng, 1e-3, 1e-2);
  write_text_file(path("m.json"), noise_model_to_json(m).dump(2));
  write_text_file(path("g.json"), R"({"kind": "depolarizing", "qubit": 0})");
  Result ok = run_cli({"gauge-check", "--gateset", "cnot", "--noise", path("m.json"), "--gauge", path("g.json"),
                       "--trials", "50", "--out", path("o1")});
  ASSERT_EQ(ok.code, cli::kExitOk) << ok.err;
  EXPECT_EQ(ok.out.rfind("indistinguishable", 0), 0u) << ok.out;
  EXPECT_TRUE(fs::exists(path("o1/gauged_model.json")));
  Json gj = read_json_file(path("o1/gauge_check.json"));
  EXPECT_TRUE(std::isfinite(gj.at("gauge").at("eta").get<double>()));

  NoiseModel m2 = m;
  std::vector<double> lam = m.gate("CNOT").lambdas();
  lam[index_from_label("XZ")] -= 0.01;
  m2.gate_noise.at("CNOT") = PauliChannel(2, lam);
  write_text_file(path("m2.json"), noise_model_to_json(m2).dump(2));
  Result bad = run_cli({"gauge-check", "--gateset", "cnot", "--noise", path("m.json"), "--noise2", path("m2.json"),
                        "--trials", "50", "--out", path("o2")});
  EXPECT_EQ(bad.code, cli::kExitValidation);
  EXPECT_EQ(bad.out.rfind("distinguishable", 0), 0u) << bad.out;

  write_text_file(path("far.json"), R"({"kind": "depolarizing", "qubit": 0, "eta": 0.5})");
  EXPECT_EQ(run_cli({"gauge-check", "--gateset", "cnot", "--noise", path("m.json"), "--gauge", path("far.json"),
                     "--out", path("o3")})
                .code,
            cli::kExitValidation);
}

TEST_F(CliTest, ReportWritesSummary) {
  Result r = run_cli({"report", "--gateset", "cnot", "--noise", "ad:0.05:0.003", "--depths", "2,4,8,16", "--ls",
                      "0,1,2", "--circuits", "6", "--shots", "100", "--seed", "3", "--out", path("rep")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::string md = slurp(path("rep/summary.md"));
  EXPECT_NE(md.find("UDF"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("rep/report.json")));
  EXPECT_TRUE(fs::exists(path("rep/dataset.csv")));
}

}  // namespace
}  // namespace plearn
