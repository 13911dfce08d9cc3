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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plearn/channel.hpp"
#include "plearn/estimator.hpp"

namespace plearn {

namespace {

constexpr double kRankTol = 1e-9;

bool is_identity_edge(const PatternGraph& g, uint64_t e) { return g.pauli_of(e) == 0; }

// Orthonormal basis of the cycle space orthogonal to every identity edge.
Eigen::MatrixXd reduced_cycle_basis(const PatternGraph& g, const std::vector<BasisElement>& basis) {
  const Eigen::Index ne = static_cast<Eigen::Index>(g.num_edges());
  Eigen::MatrixXd z(ne, static_cast<Eigen::Index>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) z.col(static_cast<Eigen::Index>(k)) = to_dense(basis[k].vec, g.num_edges());
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (is_identity_edge(g, e)) z.row(static_cast<Eigen::Index>(e)).setZero();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(z, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  const double cutoff = kRankTol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

LearnableEstimates reconstruct_learnable(const std::vector<Observation>& obs, const PatternGraph& g) {
  LearnableEstimates est;
  est.basis = human_cycle_basis(g);
  est.coords = reduced_cycle_basis(g, est.basis);
  const Eigen::Index k = est.coords.cols();
  const Eigen::Index m = static_cast<Eigen::Index>(obs.size());
  est.needed = static_cast<size_t>(k);

  double min_sigma = 0.0;
  for (const Observation& o : obs) {
    if (o.sigma > 0.0 && (min_sigma == 0.0 || o.sigma < min_sigma)) min_sigma = o.sigma;
  }
  const bool weighted = min_sigma > 0.0;

  Eigen::MatrixXd a(m, k);
  Eigen::VectorXd y(m), w(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Observation& o = obs[static_cast<size_t>(i)];
    Learnability check = is_learnable(g, to_dense(o.functional, g.num_edges()));
    if (!check.learnable) {
      throw std::invalid_argument("observation '" + o.label + "' is not a learnable functional");
    }
    a.row(i) = to_dense(o.functional, g.num_edges()).transpose() * est.coords;
    y(i) = o.value;
    w(i) = weighted ? 1.0 / std::max(o.sigma, min_sigma) : 1.0;
  }

  Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd null_space;
  est.coord_covariance = Eigen::MatrixXd::Zero(k, k);
  if (m > 0 && k > 0) {
    Eigen::MatrixXd aw = w.asDiagonal() * a;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(aw, Eigen::ComputeFullV | Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = kRankTol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cutoff) ++r;
    est.rank = static_cast<size_t>(r);
    const Eigen::MatrixXd& v = svd.matrixV();
    const Eigen::MatrixXd& u = svd.matrixU();
    Eigen::VectorXd yw = w.cwiseProduct(y);
    for (Eigen::Index j = 0; j < r; ++j) {
      c += v.col(j) * (u.col(j).dot(yw) / sv(j));
      if (weighted) est.coord_covariance += v.col(j) * v.col(j).transpose() / (sv(j) * sv(j));
    }
    null_space = v.rightCols(k - r);
  } else {
    null_space = Eigen::MatrixXd::Identity(k, k);
  }
  est.complete = est.rank == est.needed;

  est.point = est.coords * c;
  Eigen::VectorXd fitted = a * c;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double r = y(i) - fitted(i);
    const double scaled = weighted ? r * w(i) : r;
    est.residuals.push_back(scaled);
    est.chi2 += scaled * scaled;
  }
  est.dof = static_cast<int>(m) - static_cast<int>(est.rank);

  const size_t nb = est.basis.size();
  Eigen::MatrixXd zq(static_cast<Eigen::Index>(nb), k);
  for (size_t b = 0; b < nb; ++b) {
    zq.row(static_cast<Eigen::Index>(b)) = to_dense(est.basis[b].vec, g.num_edges()).transpose() * est.coords;
  }
  est.values = zq * c;
  est.covariance = zq * est.coord_covariance * zq.transpose();
  est.identified.resize(nb);
  for (size_t b = 0; b < nb; ++b) {
    const double leak = null_space.cols() ? (zq.row(static_cast<Eigen::Index>(b)) * null_space).norm() : 0.0;
    est.identified[b] = leak <= 1e-7 * std::max(1.0, zq.row(static_cast<Eigen::Index>(b)).norm());
  }

  if (!est.complete) {
    // Name the missing directions with human basis elements that extend the
    // observed span.
    SpanBuilder span(static_cast<uint64_t>(k));
    for (Eigen::Index i = 0; i < m; ++i) span.try_add(Eigen::VectorXd(a.row(i).transpose()));
    for (size_t b = 0; b < nb && span.size() < est.needed; ++b) {
      // Rows of orthonormal coordinates; roundoff-sized rows are fixed directions.
      if (zq.row(static_cast<Eigen::Index>(b)).norm() <= kRankTol) continue;
      if (span.try_add(Eigen::VectorXd(zq.row(static_cast<Eigen::Index>(b)).transpose()))) {
        est.missing.push_back(est.basis[b].text);
      }
    }
  }
  return est;
}

std::pair<double, double> evaluate_functional(const LearnableEstimates& est, const PatternGraph& g,
                                              const SparseFunctional& f) {
  Eigen::VectorXd v = to_dense(f, g.num_edges());
  if (!is_learnable(g, v).learnable) throw std::invalid_argument("functional is not learnable");
  Eigen::VectorXd q = est.coords.transpose() * v;
  const double value = v.dot(est.point);
  const double var = q.dot(est.coord_covariance * q);
  return {value, std::sqrt(std::max(0.0, var))};
}

ErrorEstimates reconstruct_errors(const std::vector<double>& lambda) {
  ErrorEstimates out;
  out.exact = wht_lambda_to_p(lambda);
  std::vector<double> lin(lambda.size());
  for (size_t i = 0; i < lambda.size(); ++i) {
    lin[i] = lambda[i] > 0.0 ? 1.0 + std::log(lambda[i]) : std::numeric_limits<double>::quiet_NaN();
  }
  out.first_order = wht_lambda_to_p(lin);
  for (size_t i = 0; i < lambda.size(); ++i) out.max_gap = std::max(out.max_gap, std::abs(out.exact[i] - out.first_order[i]));
  return out;
}

}  // namespace plearn
