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
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "plearn/clifford.hpp"

namespace plearn {

inline constexpr int kMaxGraphQubits = 12;

/// Sparse vector over the edge space: sorted (edge, coefficient) pairs.
using SparseFunctional = std::vector<std::pair<uint64_t, double>>;

Eigen::VectorXd to_dense(const SparseFunctional& f, uint64_t num_edges);
SparseFunctional to_sparse(const Eigen::VectorXd& f, double zero_tol = 0.0);

/// Pattern transfer graph of a gate set.
///
/// Vertices are the 2^n patterns. Edge e = gate * 4^n + a goes from pt(P_a)
/// to pt(G(P_a)), so the edge order is gate-major and Pauli-minor.
class PatternGraph {
 public:
  explicit PatternGraph(GateSet gates);

  int num_qubits() const { return gates_.n; }
  const GateSet& gate_set() const { return gates_; }
  uint64_t num_vertices() const { return uint64_t{1} << gates_.n; }
  uint64_t num_edges() const { return src_.size(); }
  uint64_t paulis_per_gate() const { return num_paulis(gates_.n); }

  uint32_t src(uint64_t e) const { return src_[e]; }
  uint32_t dst(uint64_t e) const { return dst_[e]; }
  bool is_self_loop(uint64_t e) const { return src_[e] == dst_[e]; }
  size_t gate_of(uint64_t e) const { return static_cast<size_t>(e / paulis_per_gate()); }
  uint64_t pauli_of(uint64_t e) const { return e % paulis_per_gate(); }
  uint64_t edge_index(size_t gate, uint64_t pauli) const { return gate * paulis_per_gate() + pauli; }
  /// Edge of the named gate and Pauli label, e.g. ("CNOT", "IZ").
  uint64_t edge_of(const std::string& gate, const std::string& pauli) const;

  /// "IZ" for single-gate sets, "IZ^CNOT" otherwise.
  std::string edge_name(uint64_t e) const;

  /// Edges leaving / entering v in increasing edge order (self-loops in both).
  const std::vector<uint64_t>& out_edges(uint32_t v) const { return out_[v]; }
  const std::vector<uint64_t>& in_edges(uint32_t v) const { return in_[v]; }

 private:
  GateSet gates_;
  std::vector<uint32_t> src_;
  std::vector<uint32_t> dst_;
  std::vector<std::vector<uint64_t>> out_;
  std::vector<std::vector<uint64_t>> in_;
};

PatternGraph build_graph(const GateSet& gates);

/// Weakly connected components. Component ids follow the smallest vertex,
/// which is also the representative.
struct Components {
  std::vector<uint32_t> label;
  std::vector<uint32_t> representative;
  size_t count() const { return representative.size(); }
};

Components components(const PatternGraph& g);

/// 2^n - c.
uint64_t unlearnable_degrees(const PatternGraph& g);

struct SpaceBasis {
  enum class Kind { kCycle, kCut };
  Kind kind = Kind::kCycle;
  std::vector<SparseFunctional> vectors;

  size_t dim() const { return vectors.size(); }
  /// |E| x dim matrix with the basis vectors as columns.
  Eigen::MatrixXd dense(uint64_t num_edges) const;
};

/// Fundamental cycles of a BFS spanning forest; self-loops are single edges.
SpaceBasis cycle_space(const PatternGraph& g);
/// Signed vertex cuts ({v}, V \ {v}) for every non-representative vertex.
SpaceBasis cut_space(const PatternGraph& g);

/// Orthogonal projection onto the cut space, B^T (B B^T)^+ B f, computed from
/// the Laplacian with one grounded vertex per component.
class CutProjector {
 public:
  explicit CutProjector(const PatternGraph& g);
  ~CutProjector();
  CutProjector(CutProjector&&) noexcept;

  Eigen::VectorXd project(const Eigen::VectorXd& f) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct Learnability {
  bool learnable = false;
  double residual_norm = 0.0;
  /// Gauge-dependent part of the functional (its cut-space component).
  Eigen::VectorXd residual;
};

Learnability is_learnable(const PatternGraph& g, const Eigen::VectorXd& f, double tol = 1e-9);
Learnability is_learnable(const CutProjector& projector, const Eigen::VectorXd& f, double tol = 1e-9);

/// Incremental rank tracker over the edge space (Gram-Schmidt, tolerance
/// 1e-9 relative to the candidate norm).
class SpanBuilder {
 public:
  explicit SpanBuilder(uint64_t dim) : dim_(static_cast<Eigen::Index>(dim)) {}

  /// Adds f if it is independent of the vectors added so far.
  bool try_add(const SparseFunctional& f);
  bool try_add(const Eigen::VectorXd& f);
  /// True if f lies in the current span.
  bool contains(const Eigen::VectorXd& f) const;
  size_t size() const { return basis_.size(); }

 private:
  Eigen::VectorXd residual(const Eigen::VectorXd& f) const;

  Eigen::Index dim_;
  std::vector<Eigen::VectorXd> basis_;
};

/// Pattern-preservation criterion for a single fidelity.
bool learnable_individual(const CliffordGate& g, const PauliOp& a);

}  // namespace plearn
