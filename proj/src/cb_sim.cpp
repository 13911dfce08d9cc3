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

#include "plearn/cb_sim.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "plearn/kernels.hpp"
#include "plearn/rng.hpp"

namespace plearn {

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::kStandard:
      return "standard";
    case Protocol::kInterleaved:
      return "interleaved";
    case Protocol::kIntercept:
      return "intercept";
    case Protocol::kCycle:
      return "cycle";
  }
  return "unknown";
}

std::string to_string(EngineKind e) { return e == EngineKind::kPauliFast ? "pauli_fast" : "ptm_dense"; }

Protocol protocol_from_string(const std::string& s) {
  if (s == "standard") return Protocol::kStandard;
  if (s == "interleaved") return Protocol::kInterleaved;
  if (s == "intercept") return Protocol::kIntercept;
  if (s == "cycle") return Protocol::kCycle;
  throw std::invalid_argument("unknown protocol '" + s + "'");
}

EngineKind engine_from_string(const std::string& s) {
  if (s == "pauli_fast") return EngineKind::kPauliFast;
  if (s == "ptm_dense") return EngineKind::kPtmDense;
  throw std::invalid_argument("unknown engine '" + s + "'");
}

void CBDataset::append(const CBDataset& other) {
  if (records.empty() && configs.empty()) {
    n = other.n;
    seed = other.seed;
    engine = other.engine;
  }
  configs.insert(configs.end(), other.configs.begin(), other.configs.end());
  records.insert(records.end(), other.records.begin(), other.records.end());
}

CPTPNoiseSpec CPTPNoiseSpec::amplitude_damping(const GateSet& gates, double gamma, double meas_flip,
                                               double sp_flip) {
  CPTPNoiseSpec spec;
  spec.n = gates.n;
  for (const CliffordGate& g : gates.gates) {
    for (int j = 0; j < gates.n; ++j) spec.gate_noise[g.name()].push_back({"amplitude_damping", j, gamma, {}});
  }
  spec.sp_flip.assign(static_cast<size_t>(gates.n), sp_flip);
  spec.meas_flip.assign(static_cast<size_t>(gates.n), meas_flip);
  return spec;
}

dense::KrausSet CPTPNoiseSpec::kraus(const std::string& gate) const {
  const dense::ComplexMatrix id = dense::ComplexMatrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  dense::KrausSet out = {id};
  auto it = gate_noise.find(gate);
  if (it == gate_noise.end()) return out;
  for (const KrausComponent& c : it->second) {
    dense::KrausSet step;
    if (c.type == "amplitude_damping") {
      step = dense::kraus::on_qubit(dense::kraus::amplitude_damping(c.param), c.qubit, n);
    } else if (c.type == "bit_flip") {
      step = dense::kraus::on_qubit(dense::kraus::bit_flip(c.param), c.qubit, n);
    } else if (c.type == "kraus") {
      step = c.custom;
    } else {
      throw std::invalid_argument("unknown noise component type '" + c.type + "'");
    }
    out = dense::kraus::then(out, step);
  }
  return out;
}

void CPTPNoiseSpec::validate(const GateSet& gates) const {
  if (n != gates.n) throw std::invalid_argument("noise spec qubit count differs from gate set");
  if (n > dense::kMaxDenseQubits) throw std::invalid_argument("CPTP noise specs need the dense engine (n <= 3)");
  if (sp_flip.size() != static_cast<size_t>(n) || meas_flip.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument("SPAM flip vectors need one rate per qubit");
  }
  for (const auto& [name, comps] : gate_noise) {
    if (gates.find(name) < 0) throw std::invalid_argument("noise spec names unknown gate '" + name + "'");
    double err = dense::kraus_completeness_error(kraus(name));
    if (err > 1e-10) {
      throw std::invalid_argument("Kraus set for gate '" + name + "' is incomplete (deviation " +
                                  std::to_string(err) + ")");
    }
  }
}

NoiseModel CPTPNoiseSpec::twirled_model(const GateSet& gates) const {
  validate(gates);
  NoiseModel m;
  m.n = n;
  m.sp = channels::readout_flip(sp_flip);
  m.meas = channels::readout_flip(meas_flip);
  for (const CliffordGate& g : gates.gates) {
    m.gate_noise.emplace(g.name(), pauli_twirl_diagonal(dense::ptm_from_kraus(kraus(g.name()), n)));
  }
  return m;
}

namespace {

// Per-qubit axis (canonical digit) and sign of the prepared product state.
void prep_axes(const PauliOp& prep, std::vector<int>& axis, std::vector<int>& sign) {
  const int n = prep.num_qubits();
  axis.assign(static_cast<size_t>(n), 2);
  sign.assign(static_cast<size_t>(n), 1);
  const uint64_t index = prep.index();
  bool sign_placed = !prep.negative();
  for (int j = 0; j < n; ++j) {
    int digit = static_cast<int>((index >> (2 * j)) & 3);
    if (digit) {
      axis[j] = digit;
      if (!sign_placed) {
        sign[j] = -1;
        sign_placed = true;
      }
    }
  }
  if (!sign_placed) throw std::invalid_argument("cannot prepare the -1 eigenstate of the identity");
}

}  // namespace

PauliFastEngine::PauliFastEngine(const GateSet& gates, const NoiseModel& model) : gates_(gates), model_(model) {
  if (model.n != gates.n) throw std::invalid_argument("noise model qubit count differs from gate set");
  for (const CliffordGate& g : gates_.gates) {
    model_.gate(g.name());
    inverses_.push_back(inverse(g));
  }
}

double PauliFastEngine::expectation(const Circuit& c) const {
  const int n = gates_.n;
  PauliOp cur = c.measure.unsigned_op();
  double coef = model_.meas.lambda(cur.index());
  for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
    switch (it->kind) {
      case CircuitOp::Kind::kPauli: {
        uint64_t x, z;
        xz_from_index(it->pauli, n, x, z);
        if (symplectic_product(x, z, cur.x_bits(), cur.z_bits())) cur = -cur;
        break;
      }
      case CircuitOp::Kind::kNoisyGate: {
        const size_t gi = static_cast<size_t>(it->gate);
        cur = inverses_[gi].conjugate(cur);
        coef *= model_.gate(gates_.gates[gi].name()).lambda(cur.index());
        break;
      }
      case CircuitOp::Kind::kLocal:
        cur = it->local_inverse ? it->local_inverse->conjugate(cur) : inverse(*it->local).conjugate(cur);
        break;
    }
  }
  std::vector<int> axis, sign;
  prep_axes(c.prep, axis, sign);
  const uint64_t index = cur.index();
  double value = cur.sign();
  for (int j = 0; j < n; ++j) {
    int digit = static_cast<int>((index >> (2 * j)) & 3);
    if (digit == 0) continue;
    if (digit != axis[j]) return 0.0;
    value *= sign[j];
  }
  return value * coef * model_.sp.lambda(index);
}

PtmDenseEngine::PtmDenseEngine(const GateSet& gates, const NoiseModel& model) {
  if (model.n != gates.n) throw std::invalid_argument("noise model qubit count differs from gate set");
  sp_ = model.sp.lambdas();
  meas_ = model.meas.lambdas();
  std::vector<dense::RowMatrix> noise;
  for (const CliffordGate& g : gates.gates) noise.push_back(dense::pauli_channel_ptm(model.gate(g.name())));
  init(gates, std::move(noise));
}

PtmDenseEngine::PtmDenseEngine(const GateSet& gates, const CPTPNoiseSpec& spec) {
  spec.validate(gates);
  sp_ = channels::readout_flip(spec.sp_flip).lambdas();
  meas_ = channels::readout_flip(spec.meas_flip).lambdas();
  std::vector<dense::RowMatrix> noise;
  for (const CliffordGate& g : gates.gates) noise.push_back(dense::ptm_from_kraus(spec.kraus(g.name()), gates.n));
  init(gates, std::move(noise));
}

void PtmDenseEngine::init(const GateSet& gates, std::vector<dense::RowMatrix> noise) {
  n_ = gates.n;
  if (n_ > dense::kMaxDenseQubits) {
    throw std::invalid_argument("ptm_dense engine supports at most " + std::to_string(dense::kMaxDenseQubits) +
                                " qubits");
  }
  const size_t dim = num_paulis(n_);
  for (size_t i = 0; i < gates.gates.size(); ++i) {
    dense::RowMatrix g = dense::clifford_ptm(gates.gates[i]);
    dense::RowMatrix product(dim, dim);
    kernels::matmul(g.data(), noise[i].data(), product.data(), dim);
    gate_ptm_.push_back(std::move(product));
  }
}

double PtmDenseEngine::expectation(const Circuit& c) const {
  const uint64_t size = num_paulis(n_);
  std::vector<int> axis, sign;
  prep_axes(c.prep, axis, sign);
  std::vector<double> r(size, 0.0), next(size);
  for (uint64_t s = 0; s < (uint64_t{1} << n_); ++s) {
    uint64_t index = 0;
    double value = 1.0;
    for (int j = 0; j < n_; ++j) {
      if ((s >> j) & 1) {
        index |= static_cast<uint64_t>(axis[j]) << (2 * j);
        value *= sign[j];
      }
    }
    r[index] = value * sp_[index];
  }
  for (const CircuitOp& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::kPauli: {
        for (uint64_t a = 0; a < size; ++a) {
          if (symplectic_product_index(op.pauli, a, n_)) r[a] = -r[a];
        }
        break;
      }
      case CircuitOp::Kind::kNoisyGate:
        kernels::matvec(gate_ptm_[static_cast<size_t>(op.gate)].data(), r.data(), next.data(), size);
        r.swap(next);
        break;
      case CircuitOp::Kind::kLocal: {
        std::fill(next.begin(), next.end(), 0.0);
        for (uint64_t a = 0; a < size; ++a) {
          int s = 1;
          uint64_t b = op.local->conjugate_index(a, &s);
          next[b] += s * r[a];
        }
        r.swap(next);
        break;
      }
    }
  }
  const uint64_t q = c.measure.index();
  return meas_[q] * r[q];
}

int orbit_period(const CliffordGate& g, const CliffordGate* interleave, const PauliOp& p) {
  PauliOp cur = p.unsigned_op();
  for (int k = 1; k <= 4 * static_cast<int>(num_paulis(std::min(p.num_qubits(), 8))); ++k) {
    cur = g.conjugate(cur);
    if (interleave) cur = interleave->conjugate(cur);
    if (cur.same_unsigned(p)) return k;
  }
  throw std::logic_error("orbit period not found");
}

std::vector<int> intercept_depths(const std::vector<int>& ls, int m0) {
  std::set<int> out;
  for (int l : ls) {
    out.insert(l * m0);
    out.insert(l * m0 + 1);
  }
  return {out.begin(), out.end()};
}

namespace {

uint64_t key_of(const std::string& s) { return hash_string(s.data(), s.size()); }

struct Family {
  std::string name;
  PauliOp prep;
  std::vector<int> depths;
};

}  // namespace

CBDataset run_cb(const GateSet& gates, const Engine& engine, const CBConfig& cfg) {
  const int n = gates.n;
  if (cfg.depths.empty()) throw std::invalid_argument("CB config needs at least one depth");
  for (size_t i = 0; i < cfg.depths.size(); ++i) {
    if (cfg.depths[i] < 0 || (i > 0 && cfg.depths[i] <= cfg.depths[i - 1])) {
      throw std::invalid_argument("CB depths must be non-negative and strictly ascending");
    }
  }
  if (cfg.circuits < 1) throw std::invalid_argument("CB config needs at least one circuit per depth");
  if (cfg.shots < 0) throw std::invalid_argument("shots must be >= 0");
  if (cfg.paulis.empty()) throw std::invalid_argument("CB config lists no Paulis");
  const int gi = gates.find(cfg.gate);
  if (gi < 0) throw std::invalid_argument("CB config names unknown gate '" + cfg.gate + "'");
  const CliffordGate& g = gates.gates[static_cast<size_t>(gi)];

  std::shared_ptr<const CliffordGate> layer, layer_inverse;
  const bool wants_layer = cfg.protocol == Protocol::kInterleaved || cfg.protocol == Protocol::kCycle;
  if (wants_layer) {
    if (!cfg.interleave) throw std::invalid_argument(to_string(cfg.protocol) + " CB needs an interleaving layer");
    if (cfg.interleave->num_qubits() != n) throw std::invalid_argument("interleaving layer has wrong qubit count");
    layer = std::make_shared<const CliffordGate>(*cfg.interleave);
    layer_inverse = std::make_shared<const CliffordGate>(inverse(*cfg.interleave));
  } else if (cfg.interleave) {
    throw std::invalid_argument(to_string(cfg.protocol) + " CB takes no interleaving layer");
  }
  const std::string layer_name = layer ? layer->name() : "";
  const int m0 = cfg.protocol == Protocol::kIntercept ? gate_order(g) : 1;

  CBDataset ds;
  ds.n = n;
  ds.seed = cfg.seed;
  ds.engine = to_string(engine.kind());
  ds.configs.push_back(cfg);

  for (const std::string& label : cfg.paulis) {
    PauliOp p = PauliOp::from_str(label).unsigned_op();
    if (p.num_qubits() != n) throw std::invalid_argument("Pauli '" + label + "' has wrong qubit count");
    std::vector<Family> families;
    switch (cfg.protocol) {
      case Protocol::kStandard:
      case Protocol::kCycle: {
        int period = orbit_period(g, layer.get(), p);
        for (int d : cfg.depths) {
          if (d % period != 0) {
            throw std::invalid_argument("depth " + std::to_string(d) + " leaves " + label + " on a different Pauli (orbit length " +
                                        std::to_string(period) + "); prepared and measured patterns would not match");
          }
        }
        families.push_back({"main", p, cfg.depths});
        break;
      }
      case Protocol::kInterleaved: {
        PauliOp image = layer->conjugate(g.conjugate(p));
        if (!image.same_unsigned(p)) {
          throw std::invalid_argument("interleaving layer " + layer_name + " does not close the orbit of " + label +
                                      ": U(G(P)) = " + image.str());
        }
        families.push_back({"main", p, cfg.depths});
        break;
      }
      case Protocol::kIntercept: {
        PauliOp b = g.conjugate(p).unsigned_op();
        Family fb{"b", b, {}}, fa{"a", p, {}};
        std::set<int> all(cfg.depths.begin(), cfg.depths.end());
        for (int d : cfg.depths) {
          if (d % m0 == 0) {
            if (m0 == 1 && !all.count(d + 1)) continue;
            if (!all.count(d + 1)) {
              throw std::invalid_argument("intercept depth " + std::to_string(d) + " has no partner depth " +
                                          std::to_string(d + 1));
            }
            fb.depths.push_back(d);
          }
          if (d % m0 == 1 % m0 && d >= 1) fa.depths.push_back(d);
          if (m0 > 1 && d % m0 != 0 && d % m0 != 1) {
            throw std::invalid_argument("intercept depth " + std::to_string(d) + " is not of the form l*" +
                                        std::to_string(m0) + " or l*" + std::to_string(m0) + "+1");
          }
        }
        families.push_back(std::move(fb));
        families.push_back(std::move(fa));
        break;
      }
    }

    for (const Family& fam : families) {
      for (int d : fam.depths) {
        for (int c = 0; c < cfg.circuits; ++c) {
          const uint64_t key = derive_seed(cfg.seed, {key_of(to_string(cfg.protocol)), key_of(cfg.gate),
                                                      key_of(layer_name), key_of(label), key_of(fam.name),
                                                      static_cast<uint64_t>(d), static_cast<uint64_t>(c)});
          CounterRng rng(key);
          Circuit circuit;
          circuit.prep = fam.prep;
          PauliOp frame = fam.prep;
          circuit.ops.reserve(static_cast<size_t>(d) * (layer ? 3 : 2));
          for (int k = 0; k < d; ++k) {
            uint64_t r = rng.top_bits(2 * n);
            uint64_t rx, rz;
            xz_from_index(r, n, rx, rz);
            if (symplectic_product(rx, rz, frame.x_bits(), frame.z_bits())) frame = -frame;
            circuit.ops.push_back({CircuitOp::Kind::kPauli, r, 0, nullptr, nullptr});
            circuit.ops.push_back({CircuitOp::Kind::kNoisyGate, 0, gi, nullptr, nullptr});
            frame = g.conjugate(frame);
            if (layer) {
              circuit.ops.push_back({CircuitOp::Kind::kLocal, 0, 0, layer, layer_inverse});
              frame = layer->conjugate(frame);
            }
          }
          circuit.measure = frame.unsigned_op();
          const double expect = engine.expectation(circuit);
          CBRecord rec;
          rec.protocol = cfg.protocol;
          rec.gate = cfg.gate;
          rec.interleave = layer_name;
          rec.orbit = label;
          rec.family = fam.name;
          rec.prep = fam.prep.str(false);
          rec.meas = circuit.measure.str(false);
          rec.depth = d;
          rec.l = cfg.protocol == Protocol::kIntercept ? (fam.name == "b" ? d / m0 : (d - 1) / m0) : -1;
          rec.circuit = c;
          rec.sign = frame.sign();
          rec.shots = cfg.shots;
          if (cfg.shots == 0) {
            rec.mean = rec.sign * expect;
          } else {
            CounterRng shot_rng(derive_seed(key, {0x73686f7473ull}));
            const double p_plus = std::clamp((1.0 + expect) / 2.0, 0.0, 1.0);
            int64_t plus = 0;
            for (int s = 0; s < cfg.shots; ++s) plus += shot_rng.uniform() < p_plus ? 1 : 0;
            rec.mean = rec.sign * static_cast<double>(2 * plus - cfg.shots) / cfg.shots;
          }
          ds.records.push_back(std::move(rec));
        }
      }
    }
  }
  return ds;
}

namespace {

CBDataset run_with_model(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg, Protocol expected) {
  if (cfg.protocol != expected) {
    throw std::invalid_argument("config protocol is " + to_string(cfg.protocol) + ", expected " + to_string(expected));
  }
  if (cfg.engine == EngineKind::kPtmDense) return run_cb(gates, PtmDenseEngine(gates, m), cfg);
  return run_cb(gates, PauliFastEngine(gates, m), cfg);
}

}  // namespace

CBDataset run_standard_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg) {
  return run_with_model(gates, m, cfg, Protocol::kStandard);
}

CBDataset run_interleaved_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg) {
  return run_with_model(gates, m, cfg, Protocol::kInterleaved);
}

CBDataset run_intercept_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg) {
  return run_with_model(gates, m, cfg, Protocol::kIntercept);
}

CBDataset run_cycle_cb(const GateSet& gates, const NoiseModel& m, const CBConfig& cfg) {
  return run_with_model(gates, m, cfg, Protocol::kCycle);
}

CBDataset run_ptm_dense(const GateSet& gates, const CPTPNoiseSpec& spec, const CBConfig& cfg) {
  return run_cb(gates, PtmDenseEngine(gates, spec), cfg);
}

}  // namespace plearn
