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
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plearn/clifford.hpp"

namespace plearn {

/// lambda_b = sum_a p_a (-1)^{<a,b>}.
std::vector<double> wht_p_to_lambda(const std::vector<double>& p);
/// p_a = 4^-n sum_b lambda_b (-1)^{<a,b>}.
std::vector<double> wht_lambda_to_p(const std::vector<double>& lambda);

/// Number of qubits n for a vector of length 4^n; throws otherwise.
int qubits_for_length(size_t length);

/// Pauli channel stored by its fidelities. Error rates are derived on first
/// use and shared between copies.
class PauliChannel {
 public:
  PauliChannel() : PauliChannel(0, {1.0}) {}
  /// Requires lambda_0 = 1 to 1e-10; the stored value is set to exactly 1.
  PauliChannel(int n, std::vector<double> lambdas);

  static PauliChannel identity(int n);
  static PauliChannel from_error_rates(int n, const std::vector<double>& p);

  int num_qubits() const { return n_; }
  size_t size() const { return lambdas_.size(); }
  const std::vector<double>& lambdas() const { return lambdas_; }
  double lambda(uint64_t index) const { return lambdas_[index]; }
  double lambda(const std::string& label) const;
  const std::vector<double>& error_rates() const;
  /// log lambda; throws if some fidelity is not positive.
  std::vector<double> log_fidelities() const;

  /// Channel applied after this one; fidelities multiply.
  PauliChannel then(const PauliChannel& other) const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<double> p;
  };

  int n_ = 0;
  std::vector<double> lambdas_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Fidelities of the tensor product, a on the first qubits.
PauliChannel tensor(const PauliChannel& a, const PauliChannel& b);

enum class ValidationMode { kCptp, kStrictlyPositive };

struct ValidationIssue {
  std::string constraint;  // "p>=0", "p>0", "lambda>0", "lambda0=1"
  uint64_t index = 0;
  double value = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  std::string summary(int n) const;
};

/// CPTP: all p_a >= -1e-10. Strict mode additionally needs every p_a > 0 and
/// every lambda_a > 0.
ValidationReport validate(const PauliChannel& ch, ValidationMode mode);

/// Diagonal of a Pauli transfer matrix, which equals its Pauli twirl.
PauliChannel pauli_twirl_diagonal(const Eigen::MatrixXd& ptm);

namespace channels {

/// lambda_b = 1 - q for every non-identity b.
PauliChannel depolarizing(int n, double q);
/// Bit flip of each qubit's outcome in the basis being prepared or read:
/// lambda_P = prod over supp(P) of (1 - 2 q_j).
PauliChannel readout_flip(const std::vector<double>& q);
/// Pauli twirl of independent amplitude damping: per qubit (1, s, s, 1-g)
/// in the order I, X, Y, Z with s = sqrt(1-g).
PauliChannel twirled_amplitude_damping(const std::vector<double>& gamma);

}  // namespace channels

/// E^S, E^M and the gate noise, which acts before the ideal gate.
struct NoiseModel {
  int n = 0;
  PauliChannel sp;
  PauliChannel meas;
  std::map<std::string, PauliChannel> gate_noise;

  static NoiseModel noiseless(const GateSet& gs);
  const PauliChannel& gate(const std::string& name) const;
  /// Checks shared n, presence of every gate, and the given mode on all channels.
  ValidationReport validate(const GateSet& gs, ValidationMode mode) const;
  /// Smallest error rate over SPAM and gate channels.
  double min_error_rate() const;
};

/// Log fidelities of all gates, gate-major and Pauli-minor.
std::vector<double> flatten_log_fidelities(const NoiseModel& m, const GateSet& gs);

}  // namespace plearn
