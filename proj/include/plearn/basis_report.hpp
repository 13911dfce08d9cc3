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
#include <vector>

#include "plearn/pattern_graph.hpp"

namespace plearn {

struct BasisElement {
  SparseFunctional vec;
  /// "self-loop", "circuit" (directed, all coefficients +1) or "cycle".
  std::string kind;
  /// Human form such as "l_IZ + l_ZZ" or "p_IZ + p_ZZ".
  std::string text;
};

struct IndividualRow {
  std::string gate;
  std::string pauli;
  std::string image;  // signed
  bool learnable = false;
};

struct LearnableReport {
  int n = 0;
  uint64_t num_vertices = 0;
  uint64_t num_edges = 0;
  uint64_t num_components = 0;
  uint64_t udf = 0;  // 2^n - c
  uint64_t ldf = 0;  // |E| - |V| + c, includes one trivial l_I per gate
  std::vector<std::vector<uint32_t>> components;
  std::vector<BasisElement> lambda_basis;
  std::vector<SparseFunctional> cut_basis;
  /// Whether the cycle space maps into itself under the per-gate WHT.
  bool wht_invariant = false;
  /// Error-rate combinations that are learnable to first order.
  std::vector<BasisElement> p_basis;
  std::vector<IndividualRow> individual;
};

/// Readable cycle basis: self-loops first, then directed circuits by length
/// and edge order, falling back to fundamental cycles if needed.
std::vector<BasisElement> human_cycle_basis(const PatternGraph& g);

/// Human form of a functional with the given prefix ("l" or "p").
std::string functional_text(const PatternGraph& g, const SparseFunctional& f, const std::string& prefix);

/// Applies the unnormalised WHT to each gate block of an edge functional.
Eigen::VectorXd blockwise_wht(const PatternGraph& g, const Eigen::VectorXd& f);

LearnableReport learnable_basis_report(const PatternGraph& g);

std::string report_markdown(const PatternGraph& g, const LearnableReport& r);
std::string graph_dot(const PatternGraph& g);

}  // namespace plearn
