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

#include "plearn/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace plearn::dense {

namespace {

using Complex = std::complex<double>;

void check_dense(int n) {
  if (n < 0 || n > kMaxDenseQubits) {
    throw std::invalid_argument("dense evaluation supports at most " + std::to_string(kMaxDenseQubits) +
                                " qubits, got " + std::to_string(n));
  }
}

ComplexMatrix single_pauli(char c) {
  ComplexMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (c) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -i, i, 0;
      break;
    default:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

ComplexMatrix pauli_matrix(const PauliOp& p) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int j = 0; j < p.num_qubits(); ++j) out = kron(out, single_pauli(p.at(j)));
  return static_cast<double>(p.sign()) * out;
}

RowMatrix ptm_from_kraus(const KrausSet& kraus, int n) {
  check_dense(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  const uint64_t size = num_paulis(n);
  for (const ComplexMatrix& k : kraus) {
    if (k.rows() != dim || k.cols() != dim) throw std::invalid_argument("Kraus operator has wrong dimension");
  }
  std::vector<ComplexMatrix> paulis;
  for (uint64_t a = 0; a < size; ++a) paulis.push_back(pauli_matrix(PauliOp::from_index(n, a)));
  RowMatrix out(size, size);
  for (uint64_t c = 0; c < size; ++c) {
    ComplexMatrix image = ComplexMatrix::Zero(dim, dim);
    for (const ComplexMatrix& k : kraus) image += k * paulis[c] * k.adjoint();
    for (uint64_t b = 0; b < size; ++b) {
      out(b, c) = (paulis[b] * image).trace().real() / static_cast<double>(dim);
    }
  }
  return out;
}

RowMatrix clifford_ptm(const CliffordGate& g) {
  const int n = g.num_qubits();
  if (n > 6) throw std::invalid_argument("Clifford PTM limited to 6 qubits");
  const uint64_t size = num_paulis(n);
  RowMatrix out = RowMatrix::Zero(size, size);
  for (uint64_t c = 0; c < size; ++c) {
    int sign = 1;
    uint64_t b = g.conjugate_index(c, &sign);
    out(b, c) = sign;
  }
  return out;
}

RowMatrix pauli_channel_ptm(const PauliChannel& ch) {
  const uint64_t size = ch.size();
  RowMatrix out = RowMatrix::Zero(size, size);
  for (uint64_t a = 0; a < size; ++a) out(a, a) = ch.lambda(a);
  return out;
}

double kraus_completeness_error(const KrausSet& kraus) {
  if (kraus.empty()) return 1.0;
  ComplexMatrix sum = ComplexMatrix::Zero(kraus[0].cols(), kraus[0].cols());
  for (const ComplexMatrix& k : kraus) sum += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

namespace kraus {

KrausSet amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("amplitude damping rate outside [0, 1]");
  ComplexMatrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  return {k0, k1};
}

KrausSet bit_flip(double q) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("bit-flip rate outside [0, 1]");
  return {std::sqrt(1.0 - q) * single_pauli('I'), std::sqrt(q) * single_pauli('X')};
}

KrausSet phase_rotation(double theta) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = std::exp(Complex(0.0, -theta / 2));
  u(1, 1) = std::exp(Complex(0.0, theta / 2));
  return {u};
}

KrausSet on_qubit(const KrausSet& single, int qubit, int n) {
  check_dense(n);
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("Kraus target qubit out of range");
  KrausSet out;
  for (const ComplexMatrix& k : single) {
    if (k.rows() != 2 || k.cols() != 2) throw std::invalid_argument("expected single-qubit Kraus operators");
    ComplexMatrix full = ComplexMatrix::Identity(1, 1);
    for (int j = 0; j < n; ++j) full = kron(full, j == qubit ? k : ComplexMatrix(ComplexMatrix::Identity(2, 2)));
    out.push_back(full);
  }
  return out;
}

KrausSet then(const KrausSet& first, const KrausSet& second) {
  KrausSet out;
  for (const ComplexMatrix& b : second) {
    for (const ComplexMatrix& a : first) out.push_back(b * a);
  }
  return out;
}

}  // namespace kraus

}  // namespace plearn::dense
