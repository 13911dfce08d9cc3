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

#include "plearn/pauli.hpp"

#include <stdexcept>

namespace plearn {

namespace {

void check_qubits(int n) {
  if (n < 0 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

uint64_t low_mask(int n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

}  // namespace

uint64_t index_from_xz(uint64_t x, uint64_t z, int n) {
  uint64_t index = 0;
  for (int j = 0; j < n; ++j) {
    uint64_t digit = ((x >> j) & 1) | (((z >> j) & 1) << 1);
    index |= digit << (2 * j);
  }
  return index;
}

void xz_from_index(uint64_t index, int n, uint64_t& x, uint64_t& z) {
  x = 0;
  z = 0;
  for (int j = 0; j < n; ++j) {
    uint64_t digit = (index >> (2 * j)) & 3;
    x |= (digit & 1) << j;
    z |= ((digit >> 1) & 1) << j;
  }
}

uint64_t pattern_of_index(uint64_t index, int n) {
  uint64_t pattern = 0;
  for (int j = 0; j < n; ++j) {
    if ((index >> (2 * j)) & 3) pattern |= uint64_t{1} << j;
  }
  return pattern;
}

std::string pauli_label(uint64_t index, int n) {
  static constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
  std::string out(static_cast<size_t>(n), 'I');
  for (int j = 0; j < n; ++j) out[static_cast<size_t>(j)] = kChars[(index >> (2 * j)) & 3];
  return out;
}

uint64_t index_from_label(std::string_view label) {
  return PauliOp::from_str(label).index();
}

PauliOp::PauliOp(int n, uint64_t x, uint64_t z, bool negative)
    : n_(n), x_(x), z_(z), negative_(negative) {
  check_qubits(n);
  if ((x | z) & ~low_mask(n)) throw std::invalid_argument("Pauli bits exceed qubit count");
}

PauliOp PauliOp::from_index(int n, uint64_t index, bool negative) {
  check_qubits(n);
  if (index >= num_paulis(n)) throw std::invalid_argument("Pauli index out of range");
  uint64_t x, z;
  xz_from_index(index, n, x, z);
  return PauliOp(n, x, z, negative);
}

PauliOp PauliOp::from_str(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("empty Pauli label");
  int n = static_cast<int>(text.size());
  check_qubits(n);
  uint64_t x = 0, z = 0;
  for (int j = 0; j < n; ++j) {
    switch (text[static_cast<size_t>(j)]) {
      case 'I':
      case '_':
        break;
      case 'X':
        x |= uint64_t{1} << j;
        break;
      case 'Y':
        x |= uint64_t{1} << j;
        z |= uint64_t{1} << j;
        break;
      case 'Z':
        z |= uint64_t{1} << j;
        break;
      default:
        throw std::invalid_argument("bad Pauli character in '" + std::string(text) + "'");
    }
  }
  return PauliOp(n, x, z, negative);
}

char PauliOp::at(int qubit) const {
  static constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
  return kChars[((x_ >> qubit) & 1) | (((z_ >> qubit) & 1) << 1)];
}

std::string PauliOp::str(bool with_sign) const {
  std::string out;
  if (with_sign) out.push_back(negative_ ? '-' : '+');
  for (int j = 0; j < n_; ++j) out.push_back(at(j));
  return out;
}

int symplectic_product(const PauliOp& a, const PauliOp& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  return symplectic_product(a.x_bits(), a.z_bits(), b.x_bits(), b.z_bits());
}

int symplectic_product_index(uint64_t a, uint64_t b, int n) {
  uint64_t xa, za, xb, zb;
  xz_from_index(a, n, xa, za);
  xz_from_index(b, n, xb, zb);
  return symplectic_product(xa, za, xb, zb);
}

PhasedPauli PhasedPauli::from_op(const PauliOp& p) {
  return PhasedPauli{p.x_bits(), p.z_bits(),
                     (std::popcount(p.x_bits() & p.z_bits()) + (p.negative() ? 2 : 0)) & 3};
}

PauliOp PhasedPauli::to_op(int n) const {
  int residual = (log_i - std::popcount(x & z)) & 3;
  if (residual & 1) throw std::logic_error("Pauli product has an imaginary phase");
  return PauliOp(n, x, z, residual == 2);
}

PhasedPauli& PhasedPauli::operator*=(const PhasedPauli& rhs) {
  // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
  log_i = (log_i + rhs.log_i + 2 * std::popcount(z & rhs.x)) & 3;
  x ^= rhs.x;
  z ^= rhs.z;
  return *this;
}

}  // namespace plearn
