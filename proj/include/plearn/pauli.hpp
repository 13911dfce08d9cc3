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

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace plearn {

inline constexpr int kMaxQubits = 31;

/// Number of n-qubit Paulis modulo phase, 4^n.
inline constexpr uint64_t num_paulis(int n) { return uint64_t{1} << (2 * n); }

/// Canonical Pauli index: per qubit a 2-bit digit (z_j x_j), qubit 0 in the
/// least significant digit. Digit values are 0 = I, 1 = X, 2 = Z, 3 = Y.
uint64_t index_from_xz(uint64_t x, uint64_t z, int n);
void xz_from_index(uint64_t index, int n, uint64_t& x, uint64_t& z);

/// Bit j of the pattern is set iff qubit j carries a non-identity factor.
uint64_t pattern_of_index(uint64_t index, int n);

/// Unsigned label of a canonical index, qubit 0 leftmost ("IZ" = Z on qubit 1).
std::string pauli_label(uint64_t index, int n);
uint64_t index_from_label(std::string_view label);

/// Hermitian n-qubit Pauli operator with a +1/-1 sign.
///
/// Stored as bit-packed x and z words. The operator is
/// sign * prod_j i^{x_j z_j} X_j^{x_j} Z_j^{z_j}, so x = z = 1 is Y.
class PauliOp {
 public:
  PauliOp() = default;
  PauliOp(int n, uint64_t x, uint64_t z, bool negative = false);

  static PauliOp identity(int n) { return PauliOp(n, 0, 0); }
  static PauliOp from_index(int n, uint64_t index, bool negative = false);
  /// Parses an optional "+"/"-" followed by characters from {I, X, Y, Z}
  /// ("_" is accepted for I).
  static PauliOp from_str(std::string_view text);

  int num_qubits() const { return n_; }
  uint64_t x_bits() const { return x_; }
  uint64_t z_bits() const { return z_; }
  bool negative() const { return negative_; }
  int sign() const { return negative_ ? -1 : 1; }
  uint64_t index() const { return index_from_xz(x_, z_, n_); }
  uint64_t pattern() const { return x_ | z_; }
  int weight() const { return std::popcount(x_ | z_); }
  bool is_identity() const { return (x_ | z_) == 0; }
  char at(int qubit) const;

  PauliOp unsigned_op() const { return PauliOp(n_, x_, z_, false); }
  PauliOp operator-() const { return PauliOp(n_, x_, z_, !negative_); }

  bool same_unsigned(const PauliOp& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }
  bool operator==(const PauliOp& other) const = default;

  std::string str(bool with_sign = true) const;

 private:
  int n_ = 0;
  uint64_t x_ = 0;
  uint64_t z_ = 0;
  bool negative_ = false;
};

/// <a,b> = x_a.z_b + z_a.x_b mod 2; zero iff the operators commute.
inline int symplectic_product(uint64_t xa, uint64_t za, uint64_t xb, uint64_t zb) {
  return std::popcount((xa & zb) ^ (za & xb)) & 1;
}
int symplectic_product(const PauliOp& a, const PauliOp& b);
int symplectic_product_index(uint64_t a, uint64_t b, int n);
inline bool commutes(const PauliOp& a, const PauliOp& b) { return symplectic_product(a, b) == 0; }

/// Pauli operator with an arbitrary phase i^log_i in front of X^x Z^z.
/// Used internally when multiplying images of generators.
struct PhasedPauli {
  uint64_t x = 0;
  uint64_t z = 0;
  int log_i = 0;

  static PhasedPauli from_op(const PauliOp& p);
  /// Returns the Hermitian operator; throws if the phase is imaginary.
  PauliOp to_op(int n) const;
  PhasedPauli& operator*=(const PhasedPauli& rhs);
};

}  // namespace plearn
