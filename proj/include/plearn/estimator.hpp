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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plearn/basis_report.hpp"
#include "plearn/cb_sim.hpp"
#include "plearn/pattern_graph.hpp"

namespace plearn {

// ---------------------------------------------------------------- fitting

/// Identifies one decay curve inside a dataset.
struct OrbitKey {
  Protocol protocol = Protocol::kStandard;
  std::string gate;
  std::string interleave;
  std::string orbit;
  std::string family = "main";

  std::string str() const;
  auto operator<=>(const OrbitKey&) const = default;
};

std::vector<OrbitKey> orbit_keys(const CBDataset& ds);

struct FitOptions {
  int bootstrap = 200;
  uint64_t seed = 0x5eed;
  /// Gauss-Newton refinement of A f^x after the log-domain fit.
  bool nonlinear = false;
  /// Depths whose mean is below this many standard errors are not used.
  double significance = 3.0;
};

struct DepthPoint {
  int x = 0;  // depth, or l for intercept families
  int circuits = 0;
  double mean = 0.0;
  double se = 0.0;
  bool used = false;
  double residual = 0.0;  // log(mean) - log(A f^x), used points only
};

/// A f^x fitted to the circuit means of one orbit.
struct DecayFit {
  OrbitKey key;
  bool fittable = false;
  std::string reason;
  double rate = 0.0;
  double amplitude = 0.0;
  double rate_se = 0.0;
  double amplitude_se = 0.0;
  std::vector<DepthPoint> points;
};

DecayFit fit_decay(const CBDataset& ds, const OrbitKey& key, const FitOptions& opt = {});
std::vector<DecayFit> fit_all(const CBDataset& ds, const FitOptions& opt = {});

// ------------------------------------------------------ orbit functionals

struct OrbitInfo {
  int period = 1;
  /// Paulis entering the noisy gate along one period.
  std::vector<PauliOp> steps;
  /// log(rate per layer) = (1 / period) sum of the step log fidelities.
  SparseFunctional functional;
};

OrbitInfo orbit_info(const PatternGraph& g, const std::string& gate, const CliffordGate* interleave,
                     const PauliOp& start);

/// Linear measurement of log fidelities, y = f . l with standard error sigma.
struct Observation {
  std::string label;
  SparseFunctional functional;
  double value = 0.0;
  double sigma = 0.0;
};

/// Turns standard, interleaved and cycle fits into observations. Intercept
/// families and unfittable orbits are skipped.
std::vector<Observation> observations_from_fits(const std::vector<DecayFit>& fits, const CBDataset& ds,
                                                const PatternGraph& g);

// --------------------------------------------------------- reconstruction

struct LearnableEstimates {
  std::vector<BasisElement> basis;
  /// Estimate of every basis functional; identity fidelities are fixed at 0.
  Eigen::VectorXd values;
  Eigen::MatrixXd covariance;
  std::vector<bool> identified;
  /// Gauge-fixed point: the cycle-space component of log lambda.
  Eigen::VectorXd point;
  size_t rank = 0;
  size_t needed = 0;
  bool complete = false;
  /// Human form of directions no observation constrains.
  std::vector<std::string> missing;
  double chi2 = 0.0;
  int dof = 0;
  std::vector<double> residuals;  // per observation, in sigma units when sigma > 0
  /// Orthonormal basis of the cycle space with the identity fidelities
  /// removed; point = coords * c.
  Eigen::MatrixXd coords;
  Eigen::MatrixXd coord_covariance;

  double sigma(size_t k) const { return std::sqrt(std::max(0.0, covariance(k, k))); }
};

LearnableEstimates reconstruct_learnable(const std::vector<Observation>& obs, const PatternGraph& g);

/// Estimate and standard error of an arbitrary cycle-space functional.
std::pair<double, double> evaluate_functional(const LearnableEstimates& est, const PatternGraph& g,
                                              const SparseFunctional& f);

// ---------------------------------------------------------- intercept CB

struct InterceptEstimate {
  std::string gate;
  std::string pauli;  // a
  std::string image;  // b = G(a)
  bool ok = false;
  std::string warning;
  /// A_a / A_b, an estimate of lambda_a lambda^S_a / lambda^S_b.
  double value = 0.0;
  double sigma = 0.0;
  /// Ratio of the l = 0 means (depth 1 over depth 0).
  double direct = 0.0;
  double direct_sigma = 0.0;
  DecayFit fit_a;
  DecayFit fit_b;
};

InterceptEstimate intercept_estimate(const CBDataset& ds, const std::string& gate, const std::string& pauli,
                                     const FitOptions& opt = {});
std::vector<InterceptEstimate> intercept_estimates(const CBDataset& ds, const FitOptions& opt = {});

// ------------------------------------------------------- feasible region

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
};

struct FeasibleOptions {
  double eps = 0.0;
  /// Total grid size; each of the k axes gets round(points^(1/k)) points.
  int grid_points = 401 * 401;
  double refine_tol = 1e-5;
  /// Edge names (as in PatternGraph::edge_name) used as coordinates; the
  /// coordinates are their log fidelities. Empty selects a default.
  std::vector<std::string> coordinates;
};

/// Gauge-parameter region where every unlearnable-direction error rate is
/// at least -eps.
struct FeasibleRegion {
  bool empty = false;
  double eps = 0.0;
  /// Smallest eps with a nonempty region, filled when empty.
  double min_eps = 0.0;
  /// max over the region of min_a p_a, the margin of the most central point.
  double best_margin = 0.0;

  std::vector<std::string> coord_names;
  std::vector<uint64_t> coord_edges;  // filled for fidelity coordinates
  /// True when the coordinates are fidelities lambda of coord_names, false
  /// for raw cut-basis parameters t.
  bool fidelity_coords = false;
  std::vector<Interval> axes;          // grid extent per coordinate
  int points_per_axis = 0;
  std::vector<uint8_t> mask;           // first coordinate fastest
  std::vector<std::vector<double>> boundary;  // refined boundary points

  std::vector<bool> constrained;       // per edge
  std::vector<Interval> lambda_intervals;  // per edge
  std::vector<Interval> p_intervals;       // per edge
  bool rectangular = false;

  // Parametrisation: l(u) = l0 + V C^{-1} (u - u0).
  Eigen::VectorXd l0;
  Eigen::MatrixXd cut;
  Eigen::MatrixXd coord_matrix;
  Eigen::VectorXd coord_origin;

  /// Coordinates of a full log-fidelity vector.
  std::vector<double> coordinates_of(const Eigen::VectorXd& log_lambda) const;
  Eigen::VectorXd log_lambda_at(const std::vector<double>& coords) const;
  /// min over constrained p_a at the coordinates.
  double margin(const std::vector<double>& coords) const;
  bool contains(const std::vector<double>& coords) const { return margin(coords) >= -eps; }
  /// Feasible grid points followed by the refined boundary points.
  std::vector<std::vector<double>> feasible_points() const;

  int num_qubits = 0;
  uint64_t paulis_per_gate = 0;
};

/// Default coordinates: (XX, ZZ) when the gate set is a single CNOT,
/// otherwise the cut-basis parameters t.
std::vector<std::string> default_coordinates(const PatternGraph& g);

FeasibleRegion feasible_region(const Eigen::VectorXd& point, const PatternGraph& g, const FeasibleOptions& opt);

/// Range of sum_e w_e p_e over the region.
Interval combination_range(const FeasibleRegion& r, const SparseFunctional& w);

// ------------------------------------------------------------- SP bound

struct SPBound {
  std::string a, b;
  double lo = 0.0, hi = 0.0;
  double lo_sigma = 0.0, hi_sigma = 0.0;
  bool nontrivial = false;
  int qubit = -1;
  double flip_bound = 0.0;
  double flip_sigma = 0.0;
  std::string note;
};

/// Bit-flip SP model: lambda^S_P = prod_{j in supp P} (1 - 2 eps_j). Needs a
/// and b to differ in the support of exactly one qubit.
SPBound sp_bound_from_ratio(const std::string& a, const std::string& b, double lo, double hi, double lo_sigma,
                            double hi_sigma);
/// lambda^S_a / lambda^S_b lies in [icb / lambda_max, icb / lambda_min].
SPBound sp_lower_bound(const InterceptEstimate& icb, const Interval& lambda_a, const std::string& b);

// ----------------------------------------------------------- error rates

struct ErrorEstimates {
  std::vector<double> exact;
  /// 4^-n sum_b (-1)^{<a,b>} (1 + log lambda_b).
  std::vector<double> first_order;
  double max_gap = 0.0;
};

ErrorEstimates reconstruct_errors(const std::vector<double>& lambda);

}  // namespace plearn
