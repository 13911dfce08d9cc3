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
#include <string>
#include <utility>
#include <vector>

#include "plearn/channel.hpp"
#include "plearn/clifford.hpp"

namespace plearn {

/// Pauli-diagonal gauge map M, described by a multiplier on patterns:
/// M scales a Pauli with pattern u by m(u), with m(0) = 1.
struct GaugeTransform {
  enum class Kind { kDepolarizing, kCut, kComposite };

  Kind kind = Kind::kDepolarizing;
  int qubit = 0;                // depolarizing
  std::vector<uint32_t> v1;     // cut
  double eta = 1.0;             // depolarizing, cut
  std::vector<GaugeTransform> parts;  // composite, applied in order

  static GaugeTransform depolarizing(int qubit, double eta);
  static GaugeTransform cut(std::vector<uint32_t> v1, double eta);
  static GaugeTransform composite(std::vector<GaugeTransform> parts);
};

/// m(u) for all 2^n patterns. Depolarizing on qubit i: eta where bit i is set.
/// Cut (V1, eta): eta on the complement of V1, renormalised so m(0) = 1.
std::vector<double> gauge_multiplier(const GaugeTransform& t, int n);

/// Open interval of admissible eta, (1 / (1 + p_min), 1 + p_min).
std::pair<double, double> gauge_window(const NoiseModel& m);

/// lambda^S' = m lambda^S, lambda^M' = lambda^M / m and
/// lambda^G'_a = m(pt(G(P_a))) / m(pt(P_a)) lambda^G_a.
/// Rejects eta outside the window and results that are not strictly positive.
NoiseModel apply_gauge(const NoiseModel& m, const GaugeTransform& t, const GateSet& gates);

/// Same update without the window and validity checks.
NoiseModel apply_gauge_unchecked(const NoiseModel& m, const GaugeTransform& t, const GateSet& gates);

struct IndistinguishabilityReport {
  int experiments = 0;
  double max_deviation = 0.0;
  /// Description of the experiment with the largest deviation.
  std::string worst;
  bool indistinguishable(double tol = 1e-9) const { return max_deviation <= tol; }
};

/// Compares outcome distributions of random and CB-style experiments under
/// both models with exact dense evaluation (n <= 3).
IndistinguishabilityReport certify_indistinguishable(const NoiseModel& m1, const NoiseModel& m2,
                                                     const GateSet& gates, int trials, uint64_t seed);

}  // namespace plearn
