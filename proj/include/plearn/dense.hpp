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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "plearn/channel.hpp"
#include "plearn/clifford.hpp"

namespace plearn::dense {

using ComplexMatrix = Eigen::MatrixXcd;
/// Row-major so the SIMD kernels can read rows directly.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using KrausSet = std::vector<ComplexMatrix>;

inline constexpr int kMaxDenseQubits = 3;

/// 2^n x 2^n matrix of the Pauli, qubit 0 as the leftmost tensor factor.
ComplexMatrix pauli_matrix(const PauliOp& p);

/// R_bc = 2^-n Tr(P_b E(P_c)), rows and columns in canonical Pauli order.
RowMatrix ptm_from_kraus(const KrausSet& kraus, int n);
/// Signed permutation matrix of the Clifford action.
RowMatrix clifford_ptm(const CliffordGate& g);
RowMatrix pauli_channel_ptm(const PauliChannel& ch);

/// Max deviation of sum K^dagger K from the identity.
double kraus_completeness_error(const KrausSet& kraus);

namespace kraus {

KrausSet amplitude_damping(double gamma);
KrausSet bit_flip(double q);
KrausSet phase_rotation(double theta);
/// Lifts a single-qubit Kraus set onto qubit j of n.
KrausSet on_qubit(const KrausSet& single, int qubit, int n);
/// Kraus set of "second after first".
KrausSet then(const KrausSet& first, const KrausSet& second);

}  // namespace kraus

}  // namespace plearn::dense
