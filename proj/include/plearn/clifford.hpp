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
#include <string>
#include <vector>

#include "plearn/pauli.hpp"
#include "plearn/rng.hpp"

namespace plearn {

/// Clifford gate stored as the signed images of the 2n Pauli generators.
///
/// The gate acts by conjugation, P -> G P G^dagger. Construction checks the
/// symplectic condition so every instance is a valid Clifford.
class CliffordGate {
 public:
  CliffordGate() = default;
  CliffordGate(std::vector<PauliOp> x_images, std::vector<PauliOp> z_images, std::string name = "",
               std::vector<int> support = {});

  static CliffordGate identity(int n, std::string name = "I");

  int num_qubits() const { return n_; }
  const std::string& name() const { return name_; }
  /// Qubits the gate was embedded on, empty when it was built directly.
  const std::vector<int>& support() const { return support_; }
  const PauliOp& x_image(int qubit) const { return x_images_[static_cast<size_t>(qubit)]; }
  const PauliOp& z_image(int qubit) const { return z_images_[static_cast<size_t>(qubit)]; }
  const std::vector<PauliOp>& x_images() const { return x_images_; }
  const std::vector<PauliOp>& z_images() const { return z_images_; }

  PauliOp conjugate(const PauliOp& p) const;
  /// Conjugates the unsigned Pauli with the given canonical index.
  /// Returns the image index and stores its sign in *sign.
  uint64_t conjugate_index(uint64_t index, int* sign) const;

  bool is_identity() const;
  CliffordGate renamed(std::string name) const;

  /// Tableau equality, ignoring the name and support.
  bool same_action(const CliffordGate& other) const {
    return x_images_ == other.x_images_ && z_images_ == other.z_images_;
  }

 private:
  int n_ = 0;
  std::vector<PauliOp> x_images_;
  std::vector<PauliOp> z_images_;
  std::string name_;
  std::vector<int> support_;
};

PauliOp conjugate(const CliffordGate& g, const PauliOp& p);

/// Smallest m >= 1 with g^m equal to the identity tableau, signs included.
int gate_order(const CliffordGate& g);

/// g1 after g2.
CliffordGate compose(const CliffordGate& g1, const CliffordGate& g2);
CliffordGate inverse(const CliffordGate& g);
CliffordGate embed(const CliffordGate& g, const std::vector<int>& support, int n);
/// g1 on the first qubits, g2 on the following ones.
CliffordGate tensor(const CliffordGate& g1, const CliffordGate& g2);

/// Precomputed signed permutation of the 4^n Paulis under one gate.
struct ConjugationTable {
  std::vector<uint64_t> image;
  std::vector<int8_t> sign;

  explicit ConjugationTable(const CliffordGate& g);
  ConjugationTable() = default;
};

/// Named collection of gates acting on the same number of qubits.
struct GateSet {
  int n = 0;
  std::vector<CliffordGate> gates;

  GateSet() = default;
  explicit GateSet(std::vector<CliffordGate> gates);

  /// Index of the gate with this name, or -1.
  int find(const std::string& name) const;
  const CliffordGate& at(const std::string& name) const;
};

namespace gates {

CliffordGate cnot();
CliffordGate cz();
CliffordGate swap();
CliffordGate h();
CliffordGate s();
CliffordGate sqrt_x();
CliffordGate pauli_x();
CliffordGate pauli_y();
CliffordGate pauli_z();
/// Qubit j is moved to qubit perm[j].
CliffordGate permutation(const std::vector<int>& perm, std::string name = "");

/// Library gate by name: I, X, Y, Z, H, S, SQRT_X, CNOT, CX, CZ, SWAP.
CliffordGate by_name(const std::string& name);

/// The 24 single-qubit Cliffords (signed tableaux), identity first.
const std::vector<CliffordGate>& single_qubit_cliffords();

/// Layer of single-qubit gates, one per qubit.
CliffordGate local_layer(const std::vector<CliffordGate>& per_qubit, std::string name = "");

/// Random n-qubit Clifford from a word of random H, S and CNOT gates.
CliffordGate random_clifford(int n, CounterRng& rng, int length = 0);

}  // namespace gates

}  // namespace plearn
