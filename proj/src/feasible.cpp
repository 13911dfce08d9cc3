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

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plearn/estimator.hpp"
#include "plearn/kernels.hpp"

namespace plearn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Error rates of every gate block at the log fidelities l.
std::vector<double> error_rates_of(const Eigen::VectorXd& l, int n, uint64_t ppg) {
  std::vector<double> p(static_cast<size_t>(l.size()));
  const double scale = 1.0 / static_cast<double>(ppg);
  for (Eigen::Index i = 0; i < l.size(); ++i) p[static_cast<size_t>(i)] = std::exp(l(i));
  for (size_t off = 0; off < p.size(); off += ppg) {
    kernels::wht_inplace(p.data() + off, n);
    for (size_t i = off; i < off + ppg; ++i) p[i] *= scale;
  }
  return p;
}

struct NmContext {
  const FeasibleRegion* region;
  size_t k;
};

double nm_objective(const gsl_vector* x, void* params) {
  const auto* ctx = static_cast<const NmContext*>(params);
  std::vector<double> c(ctx->k);
  for (size_t i = 0; i < ctx->k; ++i) c[i] = gsl_vector_get(x, i);
  const double m = ctx->region->margin(c);
  return std::isfinite(m) ? -m : 1e300;
}

// Maximises the margin with Nelder-Mead restarts from start.
std::vector<double> maximise_margin(const FeasibleRegion& r, std::vector<double> start, std::vector<double> step) {
  const size_t k = start.size();
  NmContext ctx{&r, k};
  gsl_multimin_function fn{&nm_objective, k, &ctx};
  for (int restart = 0; restart < 4; ++restart) {
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, k);
    gsl_vector* x = gsl_vector_alloc(k);
    gsl_vector* ss = gsl_vector_alloc(k);
    for (size_t i = 0; i < k; ++i) {
      gsl_vector_set(x, i, start[i]);
      gsl_vector_set(ss, i, step[i]);
    }
    gsl_multimin_fminimizer_set(s, &fn, x, ss);
    for (int iter = 0; iter < 5000; ++iter) {
      if (gsl_multimin_fminimizer_iterate(s)) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
    }
    for (size_t i = 0; i < k; ++i) start[i] = gsl_vector_get(s->x, i);
    gsl_vector_free(x);
    gsl_vector_free(ss);
    gsl_multimin_fminimizer_free(s);
    for (double& v : step) v *= 0.1;
  }
  return start;
}

// Largest feasible offset from c along axis i in direction dir, or +inf.
double axis_reach(const FeasibleRegion& r, std::vector<double> c, size_t i, double dir, double scale, double tol) {
  const double origin = c[i];
  auto feasible_at = [&](double s) {
    c[i] = origin + dir * s;
    return r.contains(c);
  };
  double good = 0.0, step = scale;
  int doublings = 0;
  while (feasible_at(step)) {
    good = step;
    step *= 2.0;
    if (++doublings > 80) return kInf;
  }
  double bad = step;
  while (bad - good > tol) {
    const double mid = 0.5 * (good + bad);
    (feasible_at(mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace

std::vector<double> FeasibleRegion::coordinates_of(const Eigen::VectorXd& log_lambda) const {
  if (log_lambda.size() != l0.size()) throw std::invalid_argument("log-fidelity vector has wrong length");
  const size_t k = static_cast<size_t>(cut.cols());
  if (fidelity_coords) {
    std::vector<double> out(k);
    for (size_t i = 0; i < k; ++i) out[i] = std::exp(log_lambda(static_cast<Eigen::Index>(coord_edges[i])));
    return out;
  }
  return to_std((cut.transpose() * cut).ldlt().solve(cut.transpose() * (log_lambda - l0)));
}

Eigen::VectorXd FeasibleRegion::log_lambda_at(const std::vector<double>& coords) const {
  const Eigen::Index k = cut.cols();
  if (static_cast<Eigen::Index>(coords.size()) != k) throw std::invalid_argument("coordinate vector has wrong length");
  Eigen::VectorXd t(k);
  if (fidelity_coords) {
    Eigen::VectorXd u(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double v = coords[static_cast<size_t>(i)];
      u(i) = v > 0.0 ? std::log(v) : -kInf;
    }
    t = coord_matrix.partialPivLu().solve(u - coord_origin);
  } else {
    t = to_eigen(coords);
  }
  return l0 + cut * t;
}

double FeasibleRegion::margin(const std::vector<double>& coords) const {
  if (fidelity_coords) {
    for (double v : coords) {
      if (!(v > 0.0)) return -kInf;
    }
  }
  Eigen::VectorXd l = log_lambda_at(coords);
  std::vector<double> p = error_rates_of(l, num_qubits, paulis_per_gate);
  double m = kInf;
  for (size_t e = 0; e < p.size(); ++e) {
    if (constrained[e]) m = std::min(m, p[e]);
  }
  return m;
}

std::vector<std::vector<double>> FeasibleRegion::feasible_points() const {
  std::vector<std::vector<double>> out;
  const size_t k = axes.size();
  const size_t per = static_cast<size_t>(points_per_axis);
  for (size_t idx = 0; idx < mask.size(); ++idx) {
    if (!mask[idx]) continue;
    std::vector<double> c(k);
    size_t rem = idx;
    for (size_t i = 0; i < k; ++i) {
      const size_t j = rem % per;
      rem /= per;
      c[i] = per > 1 ? axes[i].lo + (axes[i].hi - axes[i].lo) * static_cast<double>(j) / static_cast<double>(per - 1)
                     : axes[i].lo;
    }
    out.push_back(std::move(c));
  }
  out.insert(out.end(), boundary.begin(), boundary.end());
  return out;
}

std::vector<std::string> default_coordinates(const PatternGraph& g) {
  const GateSet& gs = g.gate_set();
  if (gs.n == 2 && gs.gates.size() == 1 && gs.gates[0].same_action(gates::cnot())) return {"XX", "ZZ"};
  return {};
}

FeasibleRegion feasible_region(const Eigen::VectorXd& point, const PatternGraph& g, const FeasibleOptions& opt) {
  if (point.size() != static_cast<Eigen::Index>(g.num_edges())) throw std::invalid_argument("point has wrong length");
  if (opt.eps < 0.0) throw std::invalid_argument("eps must be non-negative");
  FeasibleRegion r;
  r.eps = opt.eps;
  r.num_qubits = g.num_qubits();
  r.paulis_per_gate = g.paulis_per_gate();
  r.l0 = point;
  SpaceBasis cuts = cut_space(g);
  r.cut = cuts.dense(g.num_edges());
  const size_t k = cuts.dim();
  const Eigen::Index ki = static_cast<Eigen::Index>(k);

  // Error rates whose first-order log-fidelity functional leaves the cycle space.
  r.constrained.assign(g.num_edges(), false);
  const double inv = 1.0 / static_cast<double>(g.paulis_per_gate());
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.num_edges()));
    unit(static_cast<Eigen::Index>(e)) = 1.0;
    Eigen::VectorXd f = blockwise_wht(g, unit) * inv;
    r.constrained[e] = !is_learnable(g, f, 1e-9).learnable;
  }

  std::vector<std::string> names = opt.coordinates.empty() ? default_coordinates(g) : opt.coordinates;
  if (!names.empty()) {
    if (names.size() != k) {
      throw std::invalid_argument("need " + std::to_string(k) + " coordinates, one per gauge direction; got " +
                                  std::to_string(names.size()));
    }
    r.fidelity_coords = true;
    r.coord_matrix.resize(ki, ki);
    r.coord_origin.resize(ki);
    for (size_t i = 0; i < k; ++i) {
      uint64_t e;
      const std::string& nm = names[i];
      const size_t caret = nm.find('^');
      if (caret == std::string::npos) {
        if (g.gate_set().gates.size() != 1) throw std::invalid_argument("coordinate '" + nm + "' must name its gate as PAULI^GATE");
        e = g.edge_index(0, PauliOp::from_str(nm).index());
      } else {
        e = g.edge_of(nm.substr(caret + 1), nm.substr(0, caret));
      }
      r.coord_matrix.row(static_cast<Eigen::Index>(i)) = r.cut.row(static_cast<Eigen::Index>(e));
      r.coord_origin(static_cast<Eigen::Index>(i)) = point(static_cast<Eigen::Index>(e));
      r.coord_names.push_back(g.edge_name(e));
      r.coord_edges.push_back(e);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(r.coord_matrix);
    if (lu.rank() < ki) throw std::invalid_argument("chosen coordinates do not parametrise every gauge direction");
  } else {
    for (size_t i = 0; i < k; ++i) r.coord_names.push_back("t" + std::to_string(i));
  }

  const size_t ne = g.num_edges();
  if (k == 0) {
    r.points_per_axis = 1;
    r.best_margin = r.margin({});
    r.empty = r.best_margin < -opt.eps;
    if (r.empty) {
      r.min_eps = -r.best_margin;
      return r;
    }
    r.mask = {1};
    std::vector<double> p = error_rates_of(point, r.num_qubits, r.paulis_per_gate);
    for (size_t e = 0; e < ne; ++e) {
      const double lam = std::exp(point(static_cast<Eigen::Index>(e)));
      r.lambda_intervals.push_back({lam, lam});
      r.p_intervals.push_back({p[e], p[e]});
    }
    r.rectangular = true;
    return r;
  }

  // Most central point.
  std::vector<double> start(k), step(k);
  if (r.fidelity_coords) {
    for (size_t i = 0; i < k; ++i) {
      start[i] = std::exp(r.coord_origin(static_cast<Eigen::Index>(i)));
      step[i] = 0.01 * start[i];
    }
  } else {
    std::fill(step.begin(), step.end(), 0.01);
  }
  std::vector<double> best = maximise_margin(r, start, step);
  r.best_margin = r.margin(best);
  if (!(r.best_margin >= -opt.eps)) {
    r.empty = true;
    r.min_eps = std::isfinite(r.best_margin) ? -r.best_margin : kInf;
    return r;
  }

  // Axis box from line searches through the central point.
  const double scale = 1e-3;
  r.axes.resize(k);
  for (size_t i = 0; i < k; ++i) {
    const double up = axis_reach(r, best, i, +1.0, scale, opt.refine_tol * 0.1);
    const double down = axis_reach(r, best, i, -1.0, scale, opt.refine_tol * 0.1);
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw std::runtime_error("feasible region is unbounded along " + r.coord_names[i]);
    }
    double lo = best[i] - down, hi = best[i] + up;
    const double pad = std::max(1e-9, 0.02 * (hi - lo));
    lo -= pad;
    hi += pad;
    if (r.fidelity_coords) lo = std::max(lo, 1e-300);
    r.axes[i] = {lo, hi};
  }

  const int per = std::max(2, static_cast<int>(std::lround(std::pow(static_cast<double>(opt.grid_points), 1.0 / static_cast<double>(k)))));
  r.points_per_axis = per;
  size_t total = 1;
  for (size_t i = 0; i < k; ++i) total *= static_cast<size_t>(per);

  auto coord_at = [&](size_t i, size_t j) {
    return r.axes[i].lo + (r.axes[i].hi - r.axes[i].lo) * static_cast<double>(j) / static_cast<double>(per - 1);
  };
  auto decode = [&](size_t idx, std::vector<size_t>& jdx) {
    for (size_t i = 0; i < k; ++i) {
      jdx[i] = idx % static_cast<size_t>(per);
      idx /= static_cast<size_t>(per);
    }
  };

  // Grid scan; grow any face that still touches the region.
  std::vector<size_t> jdx(k);
  std::vector<double> c(k);
  for (int round = 0; round < 12; ++round) {
    r.mask.assign(total, 0);
    std::vector<bool> touch_lo(k, false), touch_hi(k, false);
    for (size_t idx = 0; idx < total; ++idx) {
      decode(idx, jdx);
      for (size_t i = 0; i < k; ++i) c[i] = coord_at(i, jdx[i]);
      if (!r.contains(c)) continue;
      r.mask[idx] = 1;
      for (size_t i = 0; i < k; ++i) {
        if (jdx[i] == 0) touch_lo[i] = true;
        if (jdx[i] == static_cast<size_t>(per) - 1) touch_hi[i] = true;
      }
    }
    bool grew = false;
    for (size_t i = 0; i < k; ++i) {
      const double w = r.axes[i].hi - r.axes[i].lo;
      const bool can_lower = !(r.fidelity_coords && r.axes[i].lo <= 1e-300);
      if (touch_lo[i] && can_lower) {
        r.axes[i].lo -= 0.5 * w;
        if (r.fidelity_coords) r.axes[i].lo = std::max(r.axes[i].lo, 1e-300);
        grew = true;
      }
      if (touch_hi[i]) {
        r.axes[i].hi += 0.5 * w;
        grew = true;
      }
    }
    if (!grew) break;
  }

  // Boundary refinement between feasible and infeasible grid neighbours.
  std::vector<size_t> stride(k, 1);
  for (size_t i = 1; i < k; ++i) stride[i] = stride[i - 1] * static_cast<size_t>(per);
  for (size_t idx = 0; idx < total; ++idx) {
    if (!r.mask[idx]) continue;
    decode(idx, jdx);
    for (size_t i = 0; i < k; ++i) {
      for (int dir : {-1, 1}) {
        const long nj = static_cast<long>(jdx[i]) + dir;
        if (nj < 0 || nj >= per) continue;
        if (r.mask[dir > 0 ? idx + stride[i] : idx - stride[i]]) continue;
        for (size_t q = 0; q < k; ++q) c[q] = coord_at(q, jdx[q]);
        double good = c[i], bad = coord_at(i, static_cast<size_t>(nj));
        while (std::abs(bad - good) > opt.refine_tol) {
          const double mid = 0.5 * (good + bad);
          c[i] = mid;
          (r.contains(c) ? good : bad) = mid;
        }
        c[i] = good;
        r.boundary.push_back(c);
      }
    }
  }

  // Extremes over the region.
  r.lambda_intervals.assign(ne, {kInf, -kInf});
  r.p_intervals.assign(ne, {kInf, -kInf});
  for (const std::vector<double>& pt : r.feasible_points()) {
    Eigen::VectorXd l = r.log_lambda_at(pt);
    std::vector<double> p = error_rates_of(l, r.num_qubits, r.paulis_per_gate);
    for (size_t e = 0; e < ne; ++e) {
      const double lam = std::exp(l(static_cast<Eigen::Index>(e)));
      r.lambda_intervals[e].lo = std::min(r.lambda_intervals[e].lo, lam);
      r.lambda_intervals[e].hi = std::max(r.lambda_intervals[e].hi, lam);
      r.p_intervals[e].lo = std::min(r.p_intervals[e].lo, p[e]);
      r.p_intervals[e].hi = std::max(r.p_intervals[e].hi, p[e]);
    }
  }

  // Rectangle test: every cell at least one step inside the bounding box of
  // the mask is feasible.
  std::vector<size_t> lo_j(k, static_cast<size_t>(per)), hi_j(k, 0);
  bool any = false;
  for (size_t idx = 0; idx < total; ++idx) {
    if (!r.mask[idx]) continue;
    any = true;
    decode(idx, jdx);
    for (size_t i = 0; i < k; ++i) {
      lo_j[i] = std::min(lo_j[i], jdx[i]);
      hi_j[i] = std::max(hi_j[i], jdx[i]);
    }
  }
  r.rectangular = any;
  for (size_t idx = 0; any && idx < total && r.rectangular; ++idx) {
    decode(idx, jdx);
    bool inner = true;
    for (size_t i = 0; i < k; ++i) inner = inner && jdx[i] > lo_j[i] && jdx[i] < hi_j[i];
    if (inner && !r.mask[idx]) r.rectangular = false;
  }
  return r;
}

Interval combination_range(const FeasibleRegion& r, const SparseFunctional& w) {
  Interval out{kInf, -kInf};
  for (const std::vector<double>& pt : r.feasible_points()) {
    Eigen::VectorXd l = r.log_lambda_at(pt);
    double v = 0.0;
    for (const auto& [e, c] : w) v += c * l(static_cast<Eigen::Index>(e));
    out.lo = std::min(out.lo, v);
    out.hi = std::max(out.hi, v);
  }
  return out;
}

}  // namespace plearn
