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

// Brute-force reference implementations used only by tests. They work on
// dense matrices and label strings and share no code paths with the library
// beyond the data types.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "plearn/clifford.hpp"

namespace oracle {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

/// Label of a canonical index (digits 0 = I, 1 = X, 2 = Z, 3 = Y; qubit 0 is
/// the least significant digit and the leftmost character).
std::string label(uint64_t index, int n);
std::vector<std::string> all_labels(int n);

/// Tensor product with the first character as the leftmost factor.
CMat pauli(const std::string& label);

/// 1-qubit: I X Y Z H S SQRT_X; 2-qubit: CNOT (control = qubit 0), CZ, SWAP.
CMat unitary(const std::string& name);
/// Lifts a k-qubit unitary onto `support` of an n-qubit register.
CMat embed(const CMat& u, const std::vector<int>& support, int n);

/// U P U^dagger = sign * Q; returns (Q, sign). Fails if not a signed Pauli.
std::pair<std::string, int> conjugate(const CMat& u, const std::string& p);

/// lambda_b = sum_a p_a (-1)^{<a,b>} as a double sum.
std::vector<double> naive_wht(const std::vector<double>& p, int n);
int symplectic(const std::string& a, const std::string& b);

/// R_bc = 2^-n Tr(P_b E(P_c)) from Kraus operators.
RMat ptm(const std::vector<CMat>& kraus, int n);
/// (1 / 4^n) sum_a PTM(P_a) R PTM(P_a).
RMat twirl_average(const RMat& r, int n);

/// Density matrix of the product state with each qubit of `prep` in the +1
/// eigenstate of its factor (I means |0>), and a leading sign flip of the first
/// non-identity qubit when negative.
CMat product_state(const std::string& prep, bool negative);
double expectation(const CMat& rho, const std::string& p);

struct RandomClifford {
  plearn::CliffordGate gate;
  CMat u;
};
/// Random word in H, S and CNOT tracked both as a tableau and a unitary.
RandomClifford random_clifford(int n, std::mt19937_64& rng, int length);

}  // namespace oracle
