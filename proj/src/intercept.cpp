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

#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "plearn/estimator.hpp"

namespace plearn {

namespace {

struct Moments {
  double mean = 0.0;
  double se = 0.0;
  bool present = false;
};

Moments l0_moments(const DecayFit& f) {
  for (const DepthPoint& p : f.points) {
    if (p.x == 0) return {p.mean, p.se, true};
  }
  return {};
}

const CBConfig* find_intercept_config(const CBDataset& ds, const std::string& gate) {
  for (const CBConfig& c : ds.configs) {
    if (c.protocol == Protocol::kIntercept && c.gate == gate) return &c;
  }
  return nullptr;
}

}  // namespace

InterceptEstimate intercept_estimate(const CBDataset& ds, const std::string& gate, const std::string& pauli,
                                     const FitOptions& opt) {
  InterceptEstimate est;
  est.gate = gate;
  est.pauli = PauliOp::from_str(pauli).unsigned_op().str(false);
  std::string image;
  for (const CBRecord& r : ds.records) {
    if (r.protocol == Protocol::kIntercept && r.gate == gate && r.orbit == pauli && r.family == "b") {
      image = r.prep;
      break;
    }
  }
  if (image.empty()) {
    est.warning = "no intercept records for " + gate + " on " + pauli;
    return est;
  }
  est.image = image;
  est.fit_a = fit_decay(ds, OrbitKey{Protocol::kIntercept, gate, "", pauli, "a"}, opt);
  est.fit_b = fit_decay(ds, OrbitKey{Protocol::kIntercept, gate, "", pauli, "b"}, opt);

  Moments ma = l0_moments(est.fit_a), mb = l0_moments(est.fit_b);
  if (ma.present && mb.present && mb.mean != 0.0) {
    est.direct = ma.mean / mb.mean;
    est.direct_sigma = std::abs(est.direct) * std::hypot(ma.mean != 0.0 ? ma.se / ma.mean : 0.0, mb.se / mb.mean);
  }
  if (!est.fit_a.fittable || !est.fit_b.fittable) {
    est.warning = "unfittable family: " + (est.fit_a.fittable ? est.fit_b.reason : est.fit_a.reason);
    return est;
  }
  est.ok = true;
  est.value = est.fit_a.amplitude / est.fit_b.amplitude;
  est.sigma = est.value * std::hypot(est.fit_a.amplitude_se / est.fit_a.amplitude,
                                     est.fit_b.amplitude_se / est.fit_b.amplitude);
  const double gap = std::abs(est.fit_a.rate - est.fit_b.rate);
  const double gap_sigma = std::hypot(est.fit_a.rate_se, est.fit_b.rate_se);
  if (gap > 3.0 * gap_sigma && gap > 1e-9) {
    std::ostringstream os;
    os << "family decay rates differ by " << gap << " (" << (gap_sigma > 0 ? gap / gap_sigma : 0.0)
       << " sigma); noise model assumptions may be violated";
    est.warning = os.str();
  }
  return est;
}

std::vector<InterceptEstimate> intercept_estimates(const CBDataset& ds, const FitOptions& opt) {
  std::vector<InterceptEstimate> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const CBRecord& r : ds.records) {
    if (r.protocol != Protocol::kIntercept) continue;
    if (!seen.insert({r.gate, r.orbit}).second) continue;
    if (!find_intercept_config(ds, r.gate)) continue;
    out.push_back(intercept_estimate(ds, r.gate, r.orbit, opt));
  }
  return out;
}

SPBound sp_bound_from_ratio(const std::string& a, const std::string& b, double lo, double hi, double lo_sigma,
                            double hi_sigma) {
  if (lo > hi) throw std::invalid_argument("ratio bounds must satisfy lo <= hi");
  SPBound out;
  out.a = a;
  out.b = b;
  out.lo = lo;
  out.hi = hi;
  out.lo_sigma = lo_sigma;
  out.hi_sigma = hi_sigma;
  PauliOp pa = PauliOp::from_str(a), pb = PauliOp::from_str(b);
  if (pa.num_qubits() != pb.num_qubits()) throw std::invalid_argument("Pauli pair has mixed qubit counts");
  const uint32_t sa = pa.pattern(), sb = pb.pattern();
  const uint32_t only_a = sa & ~sb, only_b = sb & ~sa;
  // Bit-flip preparation: lambda^S_P = prod over supp(P) of (1 - 2 q_j), so
  // the ratio is 1 - 2q for a one-qubit surplus on a and 1 / (1 - 2q) for
  // a one-qubit surplus on b.
  if (only_b == 0 && std::popcount(only_a) == 1) {
    out.qubit = std::countr_zero(only_a);
    out.flip_bound = (1.0 - hi) / 2.0;
    out.flip_sigma = hi_sigma / 2.0;
  } else if (only_a == 0 && std::popcount(only_b) == 1) {
    out.qubit = std::countr_zero(only_b);
    out.flip_bound = lo > 0.0 ? (1.0 - 1.0 / lo) / 2.0 : 0.0;
    out.flip_sigma = lo > 0.0 ? lo_sigma / (2.0 * lo * lo) : 0.0;
  } else {
    out.note = "bit-flip conversion needs supports that differ by exactly one qubit";
  }
  if (lo <= 1.0 && hi >= 1.0) {
    out.note = "ratio interval contains 1: no nontrivial bound";
    out.flip_bound = 0.0;
    out.flip_sigma = 0.0;
    return out;
  }
  out.nontrivial = out.qubit >= 0 && out.flip_bound > 0.0;
  if (out.qubit >= 0 && !out.nontrivial) out.note = "ratio bound is consistent with a noiseless preparation";
  return out;
}

SPBound sp_lower_bound(const InterceptEstimate& icb, const Interval& lambda_a, const std::string& b) {
  if (!icb.ok) throw std::invalid_argument("intercept estimate is not usable: " + icb.warning);
  if (!(lambda_a.lo > 0.0) || lambda_a.hi < lambda_a.lo) throw std::invalid_argument("fidelity interval must be positive");
  const double lo = icb.value / lambda_a.hi, hi = icb.value / lambda_a.lo;
  return sp_bound_from_ratio(icb.pauli, b, lo, hi, icb.sigma / lambda_a.hi, icb.sigma / lambda_a.lo);
}

}  // namespace plearn
