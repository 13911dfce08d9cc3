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

#include <gtest/gtest.h>

#include <bit>
#include <complex>

#include "oracles.hpp"
#include "plearn/pauli.hpp"

namespace plearn {
namespace {

TEST(PauliOp, LabelsRoundTripAndQubitZeroIsLeftmost) {
  EXPECT_EQ(index_from_label("IZ"), 8u);
  EXPECT_EQ(pauli_label(8, 2), "IZ");
  for (int n = 1; n <= 3; ++n) {
    for (uint64_t i = 0; i < num_paulis(n); ++i) {
      EXPECT_EQ(pauli_label(i, n), oracle::label(i, n));
      EXPECT_EQ(index_from_label(pauli_label(i, n)), i);
    }
  }
}

TEST(PauliOp, ParsesSignsAndRejectsJunk) {
  PauliOp p = PauliOp::from_str("-XZ");
  EXPECT_TRUE(p.negative());
  EXPECT_EQ(p.str(), "-XZ");
  EXPECT_EQ(PauliOp::from_str("+YI").str(), "+YI");
  EXPECT_EQ(PauliOp::from_str("X_Z").str(false), "XIZ");
  EXPECT_THROW(PauliOp::from_str("XQ"), std::invalid_argument);
  EXPECT_THROW(PauliOp::from_str(""), std::invalid_argument);
}

TEST(PauliOp, PatternMarksNonIdentityQubits) {
  for (uint64_t i = 0; i < num_paulis(3); ++i) {
    PauliOp p = PauliOp::from_index(3, i);
    const std::string s = oracle::label(i, 3);
    uint64_t expect = 0;
    for (int j = 0; j < 3; ++j) {
      if (s[static_cast<size_t>(j)] != 'I') expect |= uint64_t{1} << j;
    }
    EXPECT_EQ(p.pattern(), expect) << s;
    EXPECT_EQ(pattern_of_index(i, 3), expect);
    EXPECT_EQ((-p).pattern(), expect);
  }
  EXPECT_EQ(PauliOp::identity(2).sign(), 1);
}

TEST(Symplectic, MatchesMatrixCommutation) {
  for (int n = 1; n <= 2; ++n) {
    for (uint64_t a = 0; a < num_paulis(n); ++a) {
      for (uint64_t b = 0; b < num_paulis(n); ++b) {
        const auto pa = oracle::pauli(oracle::label(a, n)), pb = oracle::pauli(oracle::label(b, n));
        const bool commute = (pa * pb - pb * pa).norm() < 1e-12;
        EXPECT_EQ(symplectic_product_index(a, b, n), commute ? 0 : 1);
        EXPECT_EQ(commutes(PauliOp::from_index(n, a), PauliOp::from_index(n, b)), commute);
      }
    }
  }
}

TEST(PhasedPauli, ProductMatchesMatrices) {
  static const std::complex<double> kPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int n = 2;
  for (uint64_t a = 0; a < num_paulis(n); ++a) {
    for (uint64_t b = 0; b < num_paulis(n); ++b) {
      PhasedPauli prod = PhasedPauli::from_op(PauliOp::from_index(n, a));
      prod *= PhasedPauli::from_op(PauliOp::from_index(n, b));
      const oracle::CMat m = oracle::pauli(oracle::label(a, n)) * oracle::pauli(oracle::label(b, n));
      const std::string q = pauli_label(index_from_xz(prod.x, prod.z, n), n);
      // i^log_i X^x Z^z = i^(log_i - |x & z|) times the Hermitian Pauli q.
      const std::complex<double> ratio = (oracle::pauli(q).adjoint() * m).trace() / 4.0;
      const int k = ((prod.log_i - std::popcount(prod.x & prod.z)) % 4 + 4) % 4;
      EXPECT_NEAR(std::abs(ratio - kPow[k]), 0.0, 1e-12) << oracle::label(a, n) << " * " << oracle::label(b, n);
      if (k % 2 == 0) {
        EXPECT_EQ(prod.to_op(n).negative(), k == 2);
      } else {
        EXPECT_THROW(prod.to_op(n), std::logic_error);
      }
    }
  }
}

}  // namespace
}  // namespace plearn
