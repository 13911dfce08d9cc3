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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plearn/channel.hpp"
#include "plearn/clifford.hpp"
#include "plearn/dense.hpp"

namespace plearn {

enum class Protocol { kStandard, kInterleaved, kIntercept, kCycle };
enum class EngineKind { kPauliFast, kPtmDense };

std::string to_string(Protocol p);
std::string to_string(EngineKind e);
Protocol protocol_from_string(const std::string& s);
EngineKind engine_from_string(const std::string& s);

/// One CB experiment family.
///
/// kStandard repeats the noisy gate. kInterleaved adds the noiseless local
/// layer `interleave` after every gate and requires U(G(P)) = +-P. kCycle is
/// the same circuit without that closure requirement: the orbit of P under
/// U G may take several steps, and depths must be multiples of its length.
/// kIntercept runs the two families l*m0 (prepare and measure G(P)) and
/// l*m0 + 1 (prepare P, measure G(P)).
struct CBConfig {
  Protocol protocol = Protocol::kStandard;
  std::string gate;
  std::vector<std::string> paulis;
  std::vector<int> depths;
  int circuits = 30;
  /// 0 selects infinite-shot mode: records hold exact expectations.
  int shots = 200;
  uint64_t seed = 1;
  std::optional<CliffordGate> interleave;
  EngineKind engine = EngineKind::kPauliFast;
};

struct CBRecord {
  Protocol protocol = Protocol::kStandard;
  std::string gate;
  std::string interleave;  // layer name, empty if none
  std::string orbit;       // start Pauli label
  std::string family;      // "main", or "a" / "b" for intercept
  std::string prep;
  std::string meas;
  int depth = 0;
  int l = -1;              // intercept repetition count
  int circuit = 0;
  int sign = 1;
  int shots = 0;
  double mean = 0.0;       // sign-corrected
};

struct CBDataset {
  int n = 0;
  uint64_t seed = 0;
  std::string engine;
  std::vector<CBConfig> configs;
  std::vector<CBRecord> records;

  void append(const CBDataset& other);
};

/// General CPTP gate noise for the dense engine. SPAM bit flips act on the
/// outcome of each qubit in the prepared / measured basis.
struct KrausComponent {
  std::string type;  // "amplitude_damping", "bit_flip", "kraus"
  int qubit = 0;
  double param = 0.0;
  dense::KrausSet custom;  // full n-qubit operators for "kraus"
};

struct CPTPNoiseSpec {
  int n = 0;
  std::map<std::string, std::vector<KrausComponent>> gate_noise;
  std::vector<double> sp_flip;
  std::vector<double> meas_flip;

  /// Amplitude damping of rate gamma on every qubit of every gate, plus
  /// SPAM flips.
  static CPTPNoiseSpec amplitude_damping(const GateSet& gates, double gamma, double meas_flip, double sp_flip);

  dense::KrausSet kraus(const std::string& gate) const;
  /// Checks completeness of every Kraus set to 1e-10.
  void validate(const GateSet& gates) const;
  /// Pauli model seen after randomized compiling: twirled gate noise and
  /// the SPAM flips as Pauli channels.
  NoiseModel twirled_model(const GateSet& gates) const;
};

/// Circuit on the Pauli-transfer level: a Pauli layer, a noisy gate from the
/// gate set, or a noiseless local Clifford layer.
struct CircuitOp {
  enum class Kind { kPauli, kNoisyGate, kLocal };
  Kind kind = Kind::kPauli;
  uint64_t pauli = 0;
  int gate = 0;
  std::shared_ptr<const CliffordGate> local;
  /// Optional cached inverse of `local`.
  std::shared_ptr<const CliffordGate> local_inverse;
};

/// The prepared state is a product state: every qubit in the support of
/// `prep` is in the +1 eigenstate of its factor (the sign, if negative, is
/// carried by the first such qubit), the other qubits are in |0>.
struct Circuit {
  PauliOp prep;
  std::vector<CircuitOp> ops;
  PauliOp measure;  // unsigned observable
};

class Engine {
 public:
  virtual ~Engine() = default;
  /// Exact <measure> at the end of the circuit, without sign correction.
  virtual double expectation(const Circuit& c) const = 0;
  virtual EngineKind kind() const = 0;
};

/// Propagates the measured Pauli backwards (Heisenberg picture) and reads its
/// coefficient in the prepared product state.
class PauliFastEngine : public Engine {
 public:
  PauliFastEngine(const GateSet& gates, const NoiseModel& model);
  double expectation(const Circuit& c) const override;
  EngineKind kind() const override { return EngineKind::kPauliFast; }

 private:
  GateSet gates_;
  std::vector<CliffordGate> inverses_;
  NoiseModel model_;
};

/// Dense PTM propagation of the full Pauli vector of a product state.
class PtmDenseEngine : public Engine {
 public:
  PtmDenseEngine(const GateSet& gates, const NoiseModel& model);
  PtmDenseEngine(const GateSet& gates, const CPTPNoiseSpec& spec);
  double expectation(const Circuit& c) const override;
  EngineKind kind() const override { return EngineKind::kPtmDense; }

  /// PTM(G) PTM(E) of a gate.
  const dense::RowMatrix& noisy_gate_ptm(int gate) const { return gate_ptm_[static_cast<size_t>(gate)]; }

 private:
  void init(const GateSet& gates, std::vector<dense::RowMatrix> noise);

  int n_ = 0;
  std::vector<double> sp_;
  std::vector<double> meas_;
  std::vector<dense::RowMatrix> gate_ptm_;
};

/// Smallest k >= 1 with (U G)^k (P) = +-P, unsigned comparison.
int orbit_period(const CliffordGate& g, const CliffordGate* interleave, const PauliOp& p);

/// [l*m0, l*m0 + 1] for each l, sorted.
std::vector<int> intercept_depths(const std::vector<int>& ls, int m0);

CBDataset run_cb(const GateSet& gates, const Engine& engine, const CBConfig& cfg);
CBDataset run_standard_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg);
CBDataset run_interleaved_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg);
CBDataset run_intercept_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg);
CBDataset run_cycle_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg);
/// Any protocol on the dense engine with CPTP gate noise.
CBDataset run_ptm_dense(const GateSet& gates, const CPTPNoiseSpec& spec, const CBConfig& cfg);

}  // namespace plearn
