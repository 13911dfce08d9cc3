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

#include "plearn/clifford.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace plearn {

namespace {

void check_same_n(const CliffordGate& a, const CliffordGate& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("gate qubit count mismatch");
}

PauliOp pauli(std::string_view s) { return PauliOp::from_str(s); }

}  // namespace

CliffordGate::CliffordGate(std::vector<PauliOp> x_images, std::vector<PauliOp> z_images,
                           std::string name, std::vector<int> support)
    : n_(static_cast<int>(x_images.size())),
      x_images_(std::move(x_images)),
      z_images_(std::move(z_images)),
      name_(std::move(name)),
      support_(std::move(support)) {
  if (z_images_.size() != x_images_.size()) throw std::invalid_argument("x/z image count mismatch");
  if (n_ > kMaxQubits) throw std::invalid_argument("too many qubits");
  for (int j = 0; j < n_; ++j) {
    if (x_images_[j].num_qubits() != n_ || z_images_[j].num_qubits() != n_) {
      throw std::invalid_argument("generator image has wrong qubit count");
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      bool ok = symplectic_product(x_images_[i], x_images_[j]) == 0 &&
                symplectic_product(z_images_[i], z_images_[j]) == 0 &&
                symplectic_product(x_images_[i], z_images_[j]) == (i == j ? 1 : 0);
      if (!ok) {
        throw std::invalid_argument("tableau '" + name_ + "' violates the symplectic condition at generators " +
                                    std::to_string(i) + "," + std::to_string(j));
      }
    }
  }
}

CliffordGate CliffordGate::identity(int n, std::string name) {
  std::vector<PauliOp> xs, zs;
  for (int j = 0; j < n; ++j) {
    xs.emplace_back(n, uint64_t{1} << j, 0);
    zs.emplace_back(n, 0, uint64_t{1} << j);
  }
  return CliffordGate(std::move(xs), std::move(zs), std::move(name));
}

PauliOp CliffordGate::conjugate(const PauliOp& p) const {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("cannot conjugate a " + std::to_string(p.num_qubits()) +
                                "-qubit Pauli by a " + std::to_string(n_) + "-qubit gate");
  }
  // P = sign * i^{|x&z|} X^x Z^z, and conjugation is multiplicative.
  PhasedPauli acc{0, 0, (std::popcount(p.x_bits() & p.z_bits()) + (p.negative() ? 2 : 0)) & 3};
  for (int j = 0; j < n_; ++j) {
    if ((p.x_bits() >> j) & 1) acc *= PhasedPauli::from_op(x_images_[j]);
  }
  for (int j = 0; j < n_; ++j) {
    if ((p.z_bits() >> j) & 1) acc *= PhasedPauli::from_op(z_images_[j]);
  }
  return acc.to_op(n_);
}

uint64_t CliffordGate::conjugate_index(uint64_t index, int* sign) const {
  PauliOp out = conjugate(PauliOp::from_index(n_, index));
  if (sign) *sign = out.sign();
  return out.index();
}

bool CliffordGate::is_identity() const { return same_action(identity(n_)); }

CliffordGate CliffordGate::renamed(std::string name) const {
  CliffordGate out = *this;
  out.name_ = std::move(name);
  return out;
}

PauliOp conjugate(const CliffordGate& g, const PauliOp& p) { return g.conjugate(p); }

CliffordGate compose(const CliffordGate& g1, const CliffordGate& g2) {
  check_same_n(g1, g2);
  std::vector<PauliOp> xs, zs;
  for (int j = 0; j < g1.num_qubits(); ++j) {
    xs.push_back(g1.conjugate(g2.x_image(j)));
    zs.push_back(g1.conjugate(g2.z_image(j)));
  }
  std::string name = g1.name().empty() || g2.name().empty() ? "" : g1.name() + "*" + g2.name();
  return CliffordGate(std::move(xs), std::move(zs), std::move(name));
}

CliffordGate inverse(const CliffordGate& g) {
  int n = g.num_qubits();
  // The preimage R of a generator Q has x_k = <Q, G(Z_k)> and z_k = <Q, G(X_k)>,
  // since the symplectic form is invariant under G.
  auto preimage = [&](const PauliOp& q) {
    uint64_t x = 0, z = 0;
    for (int k = 0; k < n; ++k) {
      x |= static_cast<uint64_t>(symplectic_product(q, g.z_image(k))) << k;
      z |= static_cast<uint64_t>(symplectic_product(q, g.x_image(k))) << k;
    }
    PauliOp r(n, x, z);
    PauliOp image = g.conjugate(r);
    return image.negative() ? -r : r;
  };
  std::vector<PauliOp> xs, zs;
  for (int j = 0; j < n; ++j) {
    xs.push_back(preimage(PauliOp(n, uint64_t{1} << j, 0)));
    zs.push_back(preimage(PauliOp(n, 0, uint64_t{1} << j)));
  }
  return CliffordGate(std::move(xs), std::move(zs), g.name().empty() ? "" : g.name() + "^-1");
}

int gate_order(const CliffordGate& g) {
  int n = g.num_qubits();
  // Group order of the n-qubit Clifford group modulo phases bounds the
  // element order; 4^(2n) is a loose cap that is cheap to state.
  uint64_t cap = n >= 16 ? ~uint64_t{0} : uint64_t{1} << (4 * n);
  CliffordGate power = g;
  for (uint64_t m = 1; m <= cap; ++m) {
    if (power.is_identity()) return static_cast<int>(m);
    power = compose(g, power);
  }
  throw std::logic_error("gate order exceeds 4^(2n)");
}

CliffordGate embed(const CliffordGate& g, const std::vector<int>& support, int n) {
  int k = g.num_qubits();
  if (static_cast<int>(support.size()) != k) throw std::invalid_argument("support size differs from gate size");
  if (n > kMaxQubits) throw std::invalid_argument("too many qubits");
  uint64_t seen = 0;
  for (int q : support) {
    if (q < 0 || q >= n) throw std::invalid_argument("support index " + std::to_string(q) + " out of range");
    if ((seen >> q) & 1) throw std::invalid_argument("duplicate support index " + std::to_string(q));
    seen |= uint64_t{1} << q;
  }
  auto lift = [&](const PauliOp& p) {
    uint64_t x = 0, z = 0;
    for (int j = 0; j < k; ++j) {
      x |= ((p.x_bits() >> j) & 1) << support[j];
      z |= ((p.z_bits() >> j) & 1) << support[j];
    }
    return PauliOp(n, x, z, p.negative());
  };
  CliffordGate id = CliffordGate::identity(n);
  std::vector<PauliOp> xs = id.x_images(), zs = id.z_images();
  for (int j = 0; j < k; ++j) {
    xs[support[j]] = lift(g.x_image(j));
    zs[support[j]] = lift(g.z_image(j));
  }
  return CliffordGate(std::move(xs), std::move(zs), g.name(), support);
}

CliffordGate tensor(const CliffordGate& g1, const CliffordGate& g2) {
  int n1 = g1.num_qubits(), n = n1 + g2.num_qubits();
  std::vector<int> s1(n1), s2(g2.num_qubits());
  for (int j = 0; j < n1; ++j) s1[j] = j;
  for (int j = 0; j < g2.num_qubits(); ++j) s2[j] = n1 + j;
  CliffordGate out = compose(embed(g1, s1, n), embed(g2, s2, n));
  return out.renamed(g1.name() + "." + g2.name());
}

ConjugationTable::ConjugationTable(const CliffordGate& g) {
  int n = g.num_qubits();
  if (n > 12) throw std::invalid_argument("conjugation table limited to 12 qubits");
  uint64_t size = num_paulis(n);
  image.resize(size);
  sign.resize(size);
  for (uint64_t a = 0; a < size; ++a) {
    int s = 1;
    image[a] = g.conjugate_index(a, &s);
    sign[a] = static_cast<int8_t>(s);
  }
}

GateSet::GateSet(std::vector<CliffordGate> gs) : gates(std::move(gs)) {
  if (gates.empty()) throw std::invalid_argument("gate set is empty");
  n = gates.front().num_qubits();
  for (size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].num_qubits() != n) throw std::invalid_argument("gates in a set must share the qubit count");
    if (gates[i].name().empty()) gates[i] = gates[i].renamed("G" + std::to_string(i));
    for (size_t j = 0; j < i; ++j) {
      if (gates[j].name() == gates[i].name()) throw std::invalid_argument("duplicate gate name " + gates[i].name());
    }
  }
}

int GateSet::find(const std::string& name) const {
  for (size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].name() == name) return static_cast<int>(i);
  }
  return -1;
}

const CliffordGate& GateSet::at(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw std::invalid_argument("no gate named '" + name + "' in gate set");
  return gates[static_cast<size_t>(i)];
}

namespace gates {

namespace {

CliffordGate from_strings(std::initializer_list<const char*> xs, std::initializer_list<const char*> zs,
                          std::string name) {
  std::vector<PauliOp> xi, zi;
  for (const char* s : xs) xi.push_back(pauli(s));
  for (const char* s : zs) zi.push_back(pauli(s));
  return CliffordGate(std::move(xi), std::move(zi), std::move(name));
}

}  // namespace

CliffordGate cnot() { return from_strings({"+XX", "+IX"}, {"+ZI", "+ZZ"}, "CNOT"); }
CliffordGate cz() { return from_strings({"+XZ", "+ZX"}, {"+ZI", "+IZ"}, "CZ"); }
CliffordGate swap() { return from_strings({"+IX", "+XI"}, {"+IZ", "+ZI"}, "SWAP"); }
CliffordGate h() { return from_strings({"+Z"}, {"+X"}, "H"); }
CliffordGate s() { return from_strings({"+Y"}, {"+Z"}, "S"); }
CliffordGate sqrt_x() { return from_strings({"+X"}, {"-Y"}, "SQRT_X"); }
CliffordGate pauli_x() { return from_strings({"+X"}, {"-Z"}, "X"); }
CliffordGate pauli_y() { return from_strings({"-X"}, {"-Z"}, "Y"); }
CliffordGate pauli_z() { return from_strings({"-X"}, {"+Z"}, "Z"); }

CliffordGate permutation(const std::vector<int>& perm, std::string name) {
  int n = static_cast<int>(perm.size());
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < n; ++j) {
    if (sorted[j] != j) throw std::invalid_argument("not a permutation of 0..n-1");
  }
  std::vector<PauliOp> xs, zs;
  for (int j = 0; j < n; ++j) {
    xs.emplace_back(n, uint64_t{1} << perm[j], 0);
    zs.emplace_back(n, 0, uint64_t{1} << perm[j]);
  }
  if (name.empty()) name = "PERM" + std::to_string(n);
  return CliffordGate(std::move(xs), std::move(zs), std::move(name));
}

CliffordGate by_name(const std::string& name) {
  if (name == "I") return CliffordGate::identity(1);
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") return h();
  if (name == "S") return s();
  if (name == "SQRT_X") return sqrt_x();
  if (name == "CNOT" || name == "CX") return cnot().renamed(name);
  if (name == "CZ") return cz();
  if (name == "SWAP") return swap();
  for (const CliffordGate& c : single_qubit_cliffords()) {
    if (c.name() == name) return c;
  }
  throw std::invalid_argument("unknown library gate '" + name + "'");
}

const std::vector<CliffordGate>& single_qubit_cliffords() {
  static const std::vector<CliffordGate> group = [] {
    std::vector<CliffordGate> named = {CliffordGate::identity(1), pauli_x(), pauli_y(), pauli_z(),
                                       h(), s(), sqrt_x()};
    std::vector<CliffordGate> out;
    std::deque<CliffordGate> queue = {CliffordGate::identity(1)};
    auto known = [&](const CliffordGate& g) {
      return std::any_of(out.begin(), out.end(), [&](const CliffordGate& o) { return o.same_action(g); });
    };
    while (!queue.empty()) {
      CliffordGate g = queue.front();
      queue.pop_front();
      if (known(g)) continue;
      std::string name = "C" + std::to_string(out.size());
      for (const CliffordGate& lib : named) {
        if (lib.same_action(g)) name = lib.name();
      }
      out.push_back(g.renamed(name));
      queue.push_back(compose(h(), g));
      queue.push_back(compose(s(), g));
    }
    if (out.size() != 24) throw std::logic_error("single-qubit Clifford enumeration is not 24");
    return out;
  }();
  return group;
}

CliffordGate local_layer(const std::vector<CliffordGate>& per_qubit, std::string name) {
  int n = static_cast<int>(per_qubit.size());
  CliffordGate out = CliffordGate::identity(n);
  std::string auto_name;
  for (int j = 0; j < n; ++j) {
    if (per_qubit[j].num_qubits() != 1) throw std::invalid_argument("local layer expects single-qubit gates");
    out = compose(embed(per_qubit[j], {j}, n), out);
    auto_name += (j ? "." : "") + per_qubit[j].name();
  }
  return out.renamed(name.empty() ? auto_name : name);
}

CliffordGate random_clifford(int n, CounterRng& rng, int length) {
  if (length <= 0) length = 8 * n * n + 8;
  CliffordGate out = CliffordGate::identity(n);
  for (int step = 0; step < length; ++step) {
    uint64_t kind = n > 1 ? rng.below(3) : rng.below(2);
    int q = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    CliffordGate layer;
    if (kind == 0) {
      layer = embed(h(), {q}, n);
    } else if (kind == 1) {
      layer = embed(s(), {q}, n);
    } else {
      int t = static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
      if (t >= q) ++t;
      layer = embed(cnot(), {q, t}, n);
    }
    out = compose(layer, out);
  }
  // Random Pauli frame so that signs are exercised as well.
  uint64_t idx = rng.below(num_paulis(n));
  PauliOp frame = PauliOp::from_index(n, idx);
  std::vector<PauliOp> xs, zs;
  for (int j = 0; j < n; ++j) {
    PauliOp xj(n, uint64_t{1} << j, 0), zj(n, 0, uint64_t{1} << j);
    xs.push_back(commutes(frame, xj) ? xj : -xj);
    zs.push_back(commutes(frame, zj) ? zj : -zj);
  }
  out = compose(CliffordGate(xs, zs), out);
  return out.renamed("RAND" + std::to_string(n));
}

}  // namespace gates

}  // namespace plearn
