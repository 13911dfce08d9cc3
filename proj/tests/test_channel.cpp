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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "plearn/channel.hpp"
#include "plearn/dense.hpp"

namespace plearn {
namespace {

std::vector<double> random_distribution(size_t size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(size);
  double total = 0.0;
  for (double& x : p) total += (x = u(rng));
  for (double& x : p) x /= total;
  return p;
}

TEST(Wht, PointMassOnIdentityGivesUnitFidelities) {
  std::vector<double> p(16, 0.0);
  p[0] = 1.0;
  for (double l : wht_p_to_lambda(p)) EXPECT_DOUBLE_EQ(l, 1.0);
  std::vector<double> back = wht_lambda_to_p(std::vector<double>(16, 1.0));
  EXPECT_DOUBLE_EQ(back[0], 1.0);
  for (size_t i = 1; i < back.size(); ++i) EXPECT_DOUBLE_EQ(back[i], 0.0);
}

TEST(Wht, SingleQubitDepolarizingMatchesDirectSum) {
  const double q = 0.12;
  std::vector<double> p = {1 - 3 * q / 4, q / 4, q / 4, q / 4};
  std::vector<double> lam = wht_p_to_lambda(p);
  std::vector<double> direct = oracle::naive_wht(p, 1);
  for (size_t b = 0; b < 4; ++b) EXPECT_NEAR(lam[b], direct[b], 1e-15);
  EXPECT_NEAR(lam[0], 1.0, 1e-15);
  for (size_t b = 1; b < 4; ++b) EXPECT_NEAR(lam[b], 1 - q, 1e-15);
}

TEST(Wht, RoundTripAndNaiveAgreement) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 3; ++n) {
    std::vector<double> p = random_distribution(num_paulis(n), rng);
    std::vector<double> lam = wht_p_to_lambda(p), naive = oracle::naive_wht(p, n), back = wht_lambda_to_p(lam);
    double sum = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(lam[i], naive[i], 1e-12);
      EXPECT_NEAR(back[i], p[i], 1e-12);
      sum += back[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_THROW(wht_p_to_lambda(std::vector<double>(5, 0.0)), std::invalid_argument);
}

TEST(Validate, Examples) {
  PauliChannel id = PauliChannel::identity(2);
  EXPECT_TRUE(validate(id, ValidationMode::kCptp).ok);
  EXPECT_FALSE(validate(id, ValidationMode::kStrictlyPositive).ok);

  PauliChannel dep = channels::depolarizing(2, 0.01);
  EXPECT_TRUE(validate(dep, ValidationMode::kCptp).ok);
  EXPECT_TRUE(validate(dep, ValidationMode::kStrictlyPositive).ok);

  std::vector<double> lam(16, 1.0);
  lam[index_from_label("XX")] = 1.2;
  ValidationReport r = validate(PauliChannel(2, lam), ValidationMode::kCptp);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.issues.empty());
  std::vector<double> p = wht_lambda_to_p(lam);
  for (const ValidationIssue& issue : r.issues) {
    EXPECT_EQ(issue.constraint, "p>=0");
    EXPECT_NEAR(issue.value, p[issue.index], 1e-15);
    EXPECT_LT(issue.value, 0.0);
  }

  std::vector<double> bad(4, 1.0);
  bad[1] = -1.5;
  EXPECT_FALSE(validate(PauliChannel(1, bad), ValidationMode::kCptp).ok);
  EXPECT_THROW(PauliChannel(1, {0.9, 1, 1, 1}), std::invalid_argument);
}

TEST(Composition, FidelitiesMultiply) {
  std::mt19937_64 rng(4);
  PauliChannel a = PauliChannel::from_error_rates(2, random_distribution(16, rng));
  PauliChannel b = PauliChannel::from_error_rates(2, random_distribution(16, rng));
  PauliChannel ab = a.then(b);
  // Dense check: PTM of b after a.
  dense::RowMatrix r = dense::pauli_channel_ptm(b) * dense::pauli_channel_ptm(a);
  for (uint64_t i = 0; i < 16; ++i) {
    EXPECT_NEAR(ab.lambda(i), a.lambda(i) * b.lambda(i), 1e-15);
    EXPECT_NEAR(ab.lambda(i), r(i, i), 1e-15);
  }
}

TEST(Twirl, DiagonalEqualsTwirlAverageExhaustively) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n = 1; n <= 2; ++n) {
    // Random CPTP map from two random Kraus operators, normalised.
    const Eigen::Index d = Eigen::Index{1} << n;
    oracle::CMat k0(d, d), k1(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        k0(i, j) = {g(rng), g(rng)};
        k1(i, j) = {g(rng), g(rng)};
      }
    }
    oracle::CMat s = k0.adjoint() * k0 + k1.adjoint() * k1;
    Eigen::SelfAdjointEigenSolver<oracle::CMat> es(s);
    oracle::CMat inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                            es.eigenvectors().adjoint();
    std::vector<oracle::CMat> kraus = {k0 * inv_sqrt, k1 * inv_sqrt};
    oracle::RMat r = oracle::ptm(kraus, n);
    oracle::RMat avg = oracle::twirl_average(r, n);
    PauliChannel ch = pauli_twirl_diagonal(r);
    for (Eigen::Index a = 0; a < r.rows(); ++a) {
      EXPECT_NEAR(ch.lambda(static_cast<uint64_t>(a)), avg(a, a), 1e-12);
      for (Eigen::Index b = 0; b < r.rows(); ++b) {
        if (a != b) {
          EXPECT_NEAR(avg(a, b), 0.0, 1e-12);
        }
      }
    }
    // The library PTM agrees with the oracle PTM.
    dense::RowMatrix lib = dense::ptm_from_kraus(kraus, n);
    EXPECT_LT((lib - r).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(pauli_twirl_diagonal(Eigen::MatrixXd::Identity(4, 3)), std::invalid_argument);
}

TEST(Twirl, PauliChannelIsItsOwnDiagonal) {
  PauliChannel dep = channels::depolarizing(1, 0.3);
  PauliChannel t = pauli_twirl_diagonal(dense::pauli_channel_ptm(dep));
  for (uint64_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(t.lambda(i), dep.lambda(i));
}

TEST(Twirl, AmplitudeDamping) {
  const double gamma = 0.07, s = std::sqrt(1 - gamma);
  oracle::CMat k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, s;
  k1 << 0, std::sqrt(gamma), 0, 0;
  PauliChannel ch = pauli_twirl_diagonal(oracle::ptm({k0, k1}, 1));
  EXPECT_NEAR(ch.lambda("X"), s, 1e-12);
  EXPECT_NEAR(ch.lambda("Y"), s, 1e-12);
  EXPECT_NEAR(ch.lambda("Z"), 1 - gamma, 1e-12);
  PauliChannel lib = channels::twirled_amplitude_damping({gamma});
  for (uint64_t i = 0; i < 4; ++i) EXPECT_NEAR(lib.lambda(i), ch.lambda(i), 1e-12);
  PauliChannel libk = pauli_twirl_diagonal(dense::ptm_from_kraus(dense::kraus::amplitude_damping(gamma), 1));
  for (uint64_t i = 0; i < 4; ++i) EXPECT_NEAR(libk.lambda(i), ch.lambda(i), 1e-12);
}

TEST(Twirl, ZRotation) {
  const double theta = 0.3;
  oracle::CMat u(2, 2);
  u << std::exp(std::complex<double>(0, -theta / 2)), 0, 0, std::exp(std::complex<double>(0, theta / 2));
  PauliChannel ch = pauli_twirl_diagonal(oracle::ptm({u}, 1));
  EXPECT_NEAR(ch.lambda("X"), std::cos(theta), 1e-12);
  EXPECT_NEAR(ch.lambda("Y"), std::cos(theta), 1e-12);
  EXPECT_NEAR(ch.lambda("Z"), 1.0, 1e-12);
}

TEST(Channels, ReadoutFlipProductOverSupport) {
  PauliChannel r = channels::readout_flip({0.01, 0.1});
  EXPECT_NEAR(r.lambda("ZI"), 0.98, 1e-15);
  EXPECT_NEAR(r.lambda("IZ"), 0.8, 1e-15);
  EXPECT_NEAR(r.lambda("XY"), 0.98 * 0.8, 1e-15);
  EXPECT_TRUE(validate(r, ValidationMode::kCptp).ok);
}

TEST(Channels, TensorOrdersQubits) {
  PauliChannel a = channels::depolarizing(1, 0.1), b = channels::depolarizing(1, 0.3);
  PauliChannel ab = tensor(a, b);
  EXPECT_NEAR(ab.lambda("XI"), 0.9, 1e-15);
  EXPECT_NEAR(ab.lambda("IZ"), 0.7, 1e-15);
  EXPECT_NEAR(ab.lambda("YZ"), 0.63, 1e-15);
}

TEST(Channels, ErrorRatesCachedAndShared) {
  PauliChannel a = channels::depolarizing(2, 0.2);
  const std::vector<double>* first = &a.error_rates();
  PauliChannel copy = a;
  EXPECT_EQ(first, &copy.error_rates());
  EXPECT_NEAR(a.error_rates()[0], 1 - 15 * 0.2 / 16, 1e-15);
}

}  // namespace
}  // namespace plearn
