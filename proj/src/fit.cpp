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
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "plearn/estimator.hpp"
#include "plearn/rng.hpp"

namespace plearn {

std::string OrbitKey::str() const {
  std::string s = to_string(protocol) + ":" + gate;
  if (!interleave.empty()) s += "+" + interleave;
  s += ":" + orbit;
  if (family != "main") s += ":" + family;
  return s;
}

std::vector<OrbitKey> orbit_keys(const CBDataset& ds) {
  std::set<OrbitKey> seen;
  std::vector<OrbitKey> out;
  for (const CBRecord& r : ds.records) {
    OrbitKey k{r.protocol, r.gate, r.interleave, r.orbit, r.family};
    if (seen.insert(k).second) out.push_back(k);
  }
  return out;
}

namespace {

struct Series {
  std::vector<int> xs;
  std::vector<std::vector<double>> values;  // per x, circuit means in circuit order
};

Series collect(const CBDataset& ds, const OrbitKey& key) {
  std::map<int, std::vector<std::pair<int, double>>> by_x;
  for (const CBRecord& r : ds.records) {
    if (r.protocol != key.protocol || r.gate != key.gate || r.interleave != key.interleave ||
        r.orbit != key.orbit || r.family != key.family) {
      continue;
    }
    int x = key.protocol == Protocol::kIntercept ? r.l : r.depth;
    by_x[x].emplace_back(r.circuit, r.mean);
  }
  Series s;
  for (auto& [x, vals] : by_x) {
    std::sort(vals.begin(), vals.end());
    s.xs.push_back(x);
    std::vector<double> v;
    for (const auto& [c, m] : vals) v.push_back(m);
    s.values.push_back(std::move(v));
  }
  return s;
}

struct Core {
  bool ok = false;
  std::string reason;
  double log_a = 0.0;
  double log_f = 0.0;
  std::vector<DepthPoint> points;
};

Core fit_core(const Series& s, const FitOptions& opt) {
  Core out;
  for (size_t i = 0; i < s.xs.size(); ++i) {
    const std::vector<double>& v = s.values[i];
    DepthPoint p;
    p.x = s.xs[i];
    p.circuits = static_cast<int>(v.size());
    p.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() > 1) {
      double ss = 0.0;
      for (double m : v) ss += (m - p.mean) * (m - p.mean);
      p.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    }
    p.used = p.mean > 0.0 && (p.se == 0.0 || p.mean > opt.significance * p.se);
    out.points.push_back(p);
  }
  // A significant negative mean before the signal has decayed means the rate
  // itself is non-positive; negatives past the last positive point are noise.
  int last_positive = -1;
  for (const DepthPoint& p : out.points) {
    if (p.used) last_positive = std::max(last_positive, p.x);
  }
  for (const DepthPoint& p : out.points) {
    if (p.x < last_positive && p.mean < 0.0 && (p.se == 0.0 || -p.mean > opt.significance * p.se)) {
      out.reason = "sign change at x=" + std::to_string(p.x) + "; rate consistent with <= 0";
      return out;
    }
  }
  std::vector<size_t> used;
  double min_se = 0.0;
  bool any_positive = false;
  for (size_t i = 0; i < out.points.size(); ++i) {
    if (!out.points[i].used) continue;
    used.push_back(i);
    if (out.points[i].se > 0.0) {
      min_se = any_positive ? std::min(min_se, out.points[i].se) : out.points[i].se;
      any_positive = true;
    }
  }
  if (used.size() < 2) {
    out.reason = "fewer than two depths with significantly positive mean";
    return out;
  }
  // Weights 1 / var(log m) = m^2 / se^2; unweighted for exact data.
  auto weight = [&](const DepthPoint& p) {
    if (!any_positive) return 1.0;
    double se = p.se > 0.0 ? p.se : min_se;
    return p.mean * p.mean / (se * se);
  };
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i : used) {
    const DepthPoint& p = out.points[i];
    double w = weight(p), x = p.x, y = std::log(p.mean);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  double det = sw * sxx - sx * sx;
  if (!(std::abs(det) > 0.0)) {
    out.reason = "degenerate depth set";
    return out;
  }
  out.log_f = (sw * sxy - sx * sy) / det;
  out.log_a = (sy - out.log_f * sx) / sw;

  if (opt.nonlinear) {
    double a = std::exp(out.log_a), f = std::exp(out.log_f);
    for (int iter = 0; iter < 50; ++iter) {
      Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
      Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
      for (size_t i : used) {
        const DepthPoint& p = out.points[i];
        double w = any_positive ? 1.0 / std::pow(p.se > 0.0 ? p.se : min_se, 2) : 1.0;
        double fx = std::pow(f, p.x);
        Eigen::Vector2d j(fx, p.x == 0 ? 0.0 : a * p.x * std::pow(f, p.x - 1));
        jtj += w * j * j.transpose();
        jtr += w * j * (p.mean - a * fx);
      }
      Eigen::Vector2d step = jtj.ldlt().solve(jtr);
      a += step[0];
      f += step[1];
      if (!(a > 0.0 && f > 0.0)) break;
      if (step.norm() < 1e-15) break;
    }
    if (a > 0.0 && f > 0.0) {
      out.log_a = std::log(a);
      out.log_f = std::log(f);
    }
  }
  for (size_t i : used) {
    DepthPoint& p = out.points[i];
    p.residual = std::log(p.mean) - (out.log_a + out.log_f * p.x);
  }
  out.ok = true;
  return out;
}

Series resample(const Series& s, CounterRng& rng) {
  Series out;
  out.xs = s.xs;
  for (const std::vector<double>& v : s.values) {
    std::vector<double> r(v.size());
    for (double& x : r) x = v[rng.below(v.size())];
    out.values.push_back(std::move(r));
  }
  return out;
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

DecayFit fit_decay(const CBDataset& ds, const OrbitKey& key, const FitOptions& opt) {
  Series s = collect(ds, key);
  DecayFit fit;
  fit.key = key;
  if (s.xs.empty()) {
    fit.reason = "no records for " + key.str();
    return fit;
  }
  Core core = fit_core(s, opt);
  fit.points = core.points;
  if (!core.ok) {
    fit.reason = core.reason;
    return fit;
  }
  fit.fittable = true;
  fit.rate = std::exp(core.log_f);
  fit.amplitude = std::exp(core.log_a);

  std::vector<double> rates, amps;
  const std::string label = key.str();
  const uint64_t base = derive_seed(opt.seed, {hash_string(label.data(), label.size())});
  for (int r = 0; r < opt.bootstrap; ++r) {
    CounterRng rng(derive_seed(base, {static_cast<uint64_t>(r)}));
    Core b = fit_core(resample(s, rng), opt);
    if (!b.ok) continue;
    rates.push_back(std::exp(b.log_f));
    amps.push_back(std::exp(b.log_a));
  }
  fit.rate_se = sample_sd(rates);
  fit.amplitude_se = sample_sd(amps);
  return fit;
}

std::vector<DecayFit> fit_all(const CBDataset& ds, const FitOptions& opt) {
  std::vector<DecayFit> out;
  for (const OrbitKey& k : orbit_keys(ds)) out.push_back(fit_decay(ds, k, opt));
  return out;
}

}  // namespace plearn
