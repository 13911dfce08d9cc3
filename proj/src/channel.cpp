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

#include "plearn/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "plearn/kernels.hpp"

namespace plearn {

int qubits_for_length(size_t length) {
  for (int n = 0; n <= 16; ++n) {
    if (num_paulis(n) == length) return n;
  }
  throw std::invalid_argument("vector length " + std::to_string(length) + " is not a power of 4");
}

std::vector<double> wht_p_to_lambda(const std::vector<double>& p) {
  std::vector<double> out = p;
  kernels::wht_inplace(out.data(), qubits_for_length(p.size()));
  return out;
}

std::vector<double> wht_lambda_to_p(const std::vector<double>& lambda) {
  std::vector<double> out = lambda;
  kernels::wht_inplace(out.data(), qubits_for_length(lambda.size()));
  const double scale = 1.0 / static_cast<double>(lambda.size());
  for (double& v : out) v *= scale;
  return out;
}

PauliChannel::PauliChannel(int n, std::vector<double> lambdas) : n_(n), lambdas_(std::move(lambdas)) {
  if (n < 0 || n > 12) throw std::invalid_argument("Pauli channel qubit count out of range");
  if (lambdas_.size() != num_paulis(n)) {
    throw std::invalid_argument("expected " + std::to_string(num_paulis(n)) + " fidelities, got " +
                                std::to_string(lambdas_.size()));
  }
  for (double v : lambdas_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite Pauli fidelity");
  }
  if (std::abs(lambdas_[0] - 1.0) > 1e-10) {
    throw std::invalid_argument("identity fidelity must be 1 (trace preservation), got " +
                                std::to_string(lambdas_[0]));
  }
  lambdas_[0] = 1.0;
}

PauliChannel PauliChannel::identity(int n) { return PauliChannel(n, std::vector<double>(num_paulis(n), 1.0)); }

PauliChannel PauliChannel::from_error_rates(int n, const std::vector<double>& p) {
  if (p.size() != num_paulis(n)) throw std::invalid_argument("error-rate vector has wrong length");
  return PauliChannel(n, wht_p_to_lambda(p));
}

double PauliChannel::lambda(const std::string& label) const {
  PauliOp p = PauliOp::from_str(label);
  if (p.num_qubits() != n_) throw std::invalid_argument("label '" + label + "' has wrong qubit count");
  return lambdas_[p.index()];
}

const std::vector<double>& PauliChannel::error_rates() const {
  std::call_once(cache_->once, [this] { cache_->p = wht_lambda_to_p(lambdas_); });
  return cache_->p;
}

std::vector<double> PauliChannel::log_fidelities() const {
  std::vector<double> out(lambdas_.size());
  for (size_t i = 0; i < out.size(); ++i) {
    if (!(lambdas_[i] > 0.0)) {
      throw std::domain_error("log fidelity of non-positive lambda_" + pauli_label(i, n_));
    }
    out[i] = std::log(lambdas_[i]);
  }
  return out;
}

PauliChannel PauliChannel::then(const PauliChannel& other) const {
  if (other.n_ != n_) throw std::invalid_argument("channel qubit count mismatch");
  std::vector<double> out(lambdas_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = lambdas_[i] * other.lambdas_[i];
  return PauliChannel(n_, std::move(out));
}

PauliChannel tensor(const PauliChannel& a, const PauliChannel& b) {
  const uint64_t da = a.size(), db = b.size();
  std::vector<double> out(da * db);
  for (uint64_t j = 0; j < db; ++j) {
    for (uint64_t i = 0; i < da; ++i) out[i + j * da] = a.lambda(i) * b.lambda(j);
  }
  return PauliChannel(a.num_qubits() + b.num_qubits(), std::move(out));
}

std::string ValidationReport::summary(int n) const {
  if (ok) return "ok";
  std::ostringstream os;
  size_t shown = 0;
  for (const ValidationIssue& issue : issues) {
    if (shown++ == 8) {
      os << " ... (" << issues.size() << " issues)";
      break;
    }
    os << (shown > 1 ? "; " : "") << issue.constraint << " violated at " << pauli_label(issue.index, n) << " ("
       << issue.value << ")";
  }
  return os.str();
}

ValidationReport validate(const PauliChannel& ch, ValidationMode mode) {
  constexpr double kSlack = 1e-10;
  ValidationReport report;
  const std::vector<double>& p = ch.error_rates();
  for (uint64_t a = 0; a < p.size(); ++a) {
    if (p[a] < -kSlack) report.issues.push_back({"p>=0", a, p[a]});
    if (mode == ValidationMode::kStrictlyPositive) {
      if (p[a] <= 0.0 && p[a] >= -kSlack) report.issues.push_back({"p>0", a, p[a]});
      if (ch.lambda(a) <= 0.0) report.issues.push_back({"lambda>0", a, ch.lambda(a)});
    }
  }
  report.ok = report.issues.empty();
  return report;
}

PauliChannel pauli_twirl_diagonal(const Eigen::MatrixXd& ptm) {
  if (ptm.rows() != ptm.cols()) throw std::invalid_argument("PTM must be square");
  int n = qubits_for_length(static_cast<size_t>(ptm.rows()));
  std::vector<double> diag(static_cast<size_t>(ptm.rows()));
  for (Eigen::Index i = 0; i < ptm.rows(); ++i) diag[static_cast<size_t>(i)] = ptm(i, i);
  return PauliChannel(n, std::move(diag));
}

namespace channels {

PauliChannel depolarizing(int n, double q) {
  std::vector<double> lambda(num_paulis(n), 1.0 - q);
  lambda[0] = 1.0;
  return PauliChannel(n, std::move(lambda));
}

PauliChannel readout_flip(const std::vector<double>& q) {
  int n = static_cast<int>(q.size());
  std::vector<double> lambda(num_paulis(n), 1.0);
  for (uint64_t a = 0; a < lambda.size(); ++a) {
    uint64_t pattern = pattern_of_index(a, n);
    for (int j = 0; j < n; ++j) {
      if ((pattern >> j) & 1) lambda[a] *= 1.0 - 2.0 * q[static_cast<size_t>(j)];
    }
  }
  return PauliChannel(n, std::move(lambda));
}

PauliChannel twirled_amplitude_damping(const std::vector<double>& gamma) {
  PauliChannel out = PauliChannel::identity(0);
  for (double g : gamma) {
    double s = std::sqrt(1.0 - g);
    // Canonical digit order is I, X, Z, Y.
    out = tensor(out, PauliChannel(1, {1.0, s, 1.0 - g, s}));
  }
  return out;
}

}  // namespace channels

NoiseModel NoiseModel::noiseless(const GateSet& gs) {
  NoiseModel m;
  m.n = gs.n;
  m.sp = PauliChannel::identity(gs.n);
  m.meas = PauliChannel::identity(gs.n);
  for (const CliffordGate& g : gs.gates) m.gate_noise.emplace(g.name(), PauliChannel::identity(gs.n));
  return m;
}

const PauliChannel& NoiseModel::gate(const std::string& name) const {
  auto it = gate_noise.find(name);
  if (it == gate_noise.end()) throw std::invalid_argument("noise model has no channel for gate '" + name + "'");
  return it->second;
}

ValidationReport NoiseModel::validate(const GateSet& gs, ValidationMode mode) const {
  ValidationReport out;
  auto merge = [&](const PauliChannel& ch, const std::string& where) {
    if (ch.num_qubits() != n) {
      out.ok = false;
      out.issues.push_back({where + ": qubit count", 0, static_cast<double>(ch.num_qubits())});
      return;
    }
    ValidationReport r = plearn::validate(ch, mode);
    for (ValidationIssue& issue : r.issues) {
      issue.constraint = where + ": " + issue.constraint;
      out.issues.push_back(issue);
    }
  };
  merge(sp, "sp");
  merge(meas, "meas");
  for (const CliffordGate& g : gs.gates) {
    auto it = gate_noise.find(g.name());
    if (it == gate_noise.end()) {
      out.issues.push_back({"missing channel for gate " + g.name(), 0, 0.0});
      continue;
    }
    merge(it->second, g.name());
  }
  out.ok = out.issues.empty();
  return out;
}

double NoiseModel::min_error_rate() const {
  double best = 1.0;
  auto scan = [&](const PauliChannel& ch) {
    for (double v : ch.error_rates()) best = std::min(best, v);
  };
  scan(sp);
  scan(meas);
  for (const auto& [name, ch] : gate_noise) scan(ch);
  return best;
}

std::vector<double> flatten_log_fidelities(const NoiseModel& m, const GateSet& gs) {
  std::vector<double> out;
  out.reserve(gs.gates.size() * num_paulis(gs.n));
  for (const CliffordGate& g : gs.gates) {
    std::vector<double> l = m.gate(g.name()).log_fidelities();
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

}  // namespace plearn
