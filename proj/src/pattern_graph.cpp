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

#include "plearn/pattern_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace plearn {

Eigen::VectorXd to_dense(const SparseFunctional& f, uint64_t num_edges) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_edges));
  for (const auto& [e, c] : f) out[static_cast<Eigen::Index>(e)] += c;
  return out;
}

SparseFunctional to_sparse(const Eigen::VectorXd& f, double zero_tol) {
  SparseFunctional out;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) > zero_tol) out.emplace_back(static_cast<uint64_t>(i), f[i]);
  }
  return out;
}

PatternGraph::PatternGraph(GateSet gates) : gates_(std::move(gates)) {
  const int n = gates_.n;
  if (n > kMaxGraphQubits) {
    throw std::invalid_argument("pattern graph refused: " + std::to_string(n) + " qubits exceeds the limit of " +
                                std::to_string(kMaxGraphQubits));
  }
  const uint64_t per_gate = num_paulis(n);
  const uint64_t total = per_gate * gates_.gates.size();
  src_.resize(total);
  dst_.resize(total);
  for (size_t gi = 0; gi < gates_.gates.size(); ++gi) {
    const CliffordGate& g = gates_.gates[gi];
    // Patterns only need the unsigned image, which is linear over GF(2).
    std::vector<uint64_t> gx(n), gz(n);
    for (int j = 0; j < n; ++j) {
      gx[j] = g.x_image(j).x_bits() | (g.x_image(j).z_bits() << 32);
      gz[j] = g.z_image(j).x_bits() | (g.z_image(j).z_bits() << 32);
    }
    for (uint64_t a = 0; a < per_gate; ++a) {
      uint64_t image = 0, pattern = 0;
      for (int j = 0; j < n; ++j) {
        uint64_t digit = (a >> (2 * j)) & 3;
        if (digit & 1) image ^= gx[j];
        if (digit & 2) image ^= gz[j];
        if (digit) pattern |= uint64_t{1} << j;
      }
      uint64_t e = gi * per_gate + a;
      src_[e] = static_cast<uint32_t>(pattern);
      dst_[e] = static_cast<uint32_t>((image | (image >> 32)) & 0xFFFFFFFFu);
    }
  }
  out_.resize(num_vertices());
  in_.resize(num_vertices());
  for (uint64_t e = 0; e < total; ++e) {
    out_[src_[e]].push_back(e);
    in_[dst_[e]].push_back(e);
  }
}

uint64_t PatternGraph::edge_of(const std::string& gate, const std::string& pauli) const {
  int gi = gates_.find(gate);
  if (gi < 0) throw std::invalid_argument("unknown gate '" + gate + "'");
  PauliOp p = PauliOp::from_str(pauli);
  if (p.num_qubits() != gates_.n) throw std::invalid_argument("Pauli '" + pauli + "' has wrong qubit count");
  return edge_index(static_cast<size_t>(gi), p.index());
}

std::string PatternGraph::edge_name(uint64_t e) const {
  std::string label = pauli_label(pauli_of(e), gates_.n);
  if (gates_.gates.size() > 1) label += "^" + gates_.gates[gate_of(e)].name();
  return label;
}

PatternGraph build_graph(const GateSet& gates) { return PatternGraph(gates); }

Components components(const PatternGraph& g) {
  const uint64_t nv = g.num_vertices();
  std::vector<uint32_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    uint32_t a = find(g.src(e)), b = find(g.dst(e));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Components out;
  out.label.resize(nv);
  std::vector<int64_t> id_of_root(nv, -1);
  for (uint32_t v = 0; v < nv; ++v) {
    uint32_t r = find(v);
    if (id_of_root[r] < 0) {
      id_of_root[r] = static_cast<int64_t>(out.representative.size());
      out.representative.push_back(v);
    }
    out.label[v] = static_cast<uint32_t>(id_of_root[r]);
  }
  return out;
}

uint64_t unlearnable_degrees(const PatternGraph& g) { return g.num_vertices() - components(g).count(); }

Eigen::MatrixXd SpaceBasis::dense(uint64_t num_edges) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_edges), static_cast<Eigen::Index>(dim()));
  for (size_t k = 0; k < vectors.size(); ++k) {
    for (const auto& [e, c] : vectors[k]) out(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(k)) = c;
  }
  return out;
}

SpaceBasis cycle_space(const PatternGraph& g) {
  const uint64_t nv = g.num_vertices();
  constexpr uint64_t kNone = ~uint64_t{0};
  std::vector<uint64_t> parent_edge(nv, kNone);
  std::vector<uint32_t> parent(nv, 0);
  std::vector<int64_t> depth(nv, -1);
  std::vector<bool> tree_edge(g.num_edges(), false);

  for (uint32_t root = 0; root < nv; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::deque<uint32_t> queue = {root};
    while (!queue.empty()) {
      uint32_t v = queue.front();
      queue.pop_front();
      // Incident edges in canonical order, outgoing and incoming merged.
      std::vector<uint64_t> incident;
      const auto& out = g.out_edges(v);
      const auto& in = g.in_edges(v);
      std::merge(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(incident));
      for (uint64_t e : incident) {
        uint32_t w = g.src(e) == v ? g.dst(e) : g.src(e);
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        parent[w] = v;
        parent_edge[w] = e;
        tree_edge[e] = true;
        queue.push_back(w);
      }
    }
  }

  SpaceBasis basis;
  basis.kind = SpaceBasis::Kind::kCycle;
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (tree_edge[e]) continue;
    SparseFunctional cycle = {{e, 1.0}};
    if (!g.is_self_loop(e)) {
      // Walk from dst(e) back to src(e) through the tree.
      uint32_t a = g.dst(e), b = g.src(e);
      SparseFunctional tail;
      while (a != b) {
        if (depth[a] >= depth[b]) {
          uint64_t t = parent_edge[a];
          cycle.emplace_back(t, g.src(t) == a ? 1.0 : -1.0);
          a = parent[a];
        } else {
          uint64_t t = parent_edge[b];
          tail.emplace_back(t, g.dst(t) == b ? 1.0 : -1.0);
          b = parent[b];
        }
      }
      cycle.insert(cycle.end(), tail.begin(), tail.end());
      std::sort(cycle.begin(), cycle.end());
    }
    basis.vectors.push_back(std::move(cycle));
  }
  return basis;
}

SpaceBasis cut_space(const PatternGraph& g) {
  Components comp = components(g);
  SpaceBasis basis;
  basis.kind = SpaceBasis::Kind::kCut;
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    if (comp.representative[comp.label[v]] == v) continue;
    SparseFunctional cut;
    for (uint64_t e : g.out_edges(v)) {
      if (!g.is_self_loop(e)) cut.emplace_back(e, 1.0);
    }
    for (uint64_t e : g.in_edges(v)) {
      if (!g.is_self_loop(e)) cut.emplace_back(e, -1.0);
    }
    std::sort(cut.begin(), cut.end());
    basis.vectors.push_back(std::move(cut));
  }
  return basis;
}

struct CutProjector::Impl {
  const PatternGraph* graph = nullptr;
  std::vector<int64_t> reduced;  // vertex -> row in the grounded system, -1 if grounded
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  Eigen::Index rows = 0;
};

CutProjector::CutProjector(const PatternGraph& g) : impl_(std::make_unique<Impl>()) {
  impl_->graph = &g;
  Components comp = components(g);
  const uint64_t nv = g.num_vertices();
  impl_->reduced.assign(nv, -1);
  Eigen::Index rows = 0;
  for (uint32_t v = 0; v < nv; ++v) {
    if (comp.representative[comp.label[v]] != v) impl_->reduced[v] = rows++;
  }
  impl_->rows = rows;
  if (rows == 0) return;
  std::vector<Eigen::Triplet<double>> triplets;
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (g.is_self_loop(e)) continue;
    int64_t a = impl_->reduced[g.src(e)], b = impl_->reduced[g.dst(e)];
    if (a >= 0) triplets.emplace_back(a, a, 1.0);
    if (b >= 0) triplets.emplace_back(b, b, 1.0);
    if (a >= 0 && b >= 0) {
      triplets.emplace_back(a, b, -1.0);
      triplets.emplace_back(b, a, -1.0);
    }
  }
  Eigen::SparseMatrix<double> laplacian(rows, rows);
  laplacian.setFromTriplets(triplets.begin(), triplets.end());
  impl_->solver.compute(laplacian);
  if (impl_->solver.info() != Eigen::Success) throw std::runtime_error("grounded Laplacian factorization failed");
}

CutProjector::~CutProjector() = default;
CutProjector::CutProjector(CutProjector&&) noexcept = default;

Eigen::VectorXd CutProjector::project(const Eigen::VectorXd& f) const {
  const PatternGraph& g = *impl_->graph;
  if (static_cast<uint64_t>(f.size()) != g.num_edges()) {
    throw std::invalid_argument("functional has " + std::to_string(f.size()) + " entries, graph has " +
                                std::to_string(g.num_edges()) + " edges");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
  if (impl_->rows == 0) return out;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(impl_->rows);
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (g.is_self_loop(e)) continue;
    int64_t a = impl_->reduced[g.src(e)], b = impl_->reduced[g.dst(e)];
    if (a >= 0) rhs[a] += f[static_cast<Eigen::Index>(e)];
    if (b >= 0) rhs[b] -= f[static_cast<Eigen::Index>(e)];
  }
  Eigen::VectorXd potential = impl_->solver.solve(rhs);
  auto at = [&](uint32_t v) { return impl_->reduced[v] >= 0 ? potential[impl_->reduced[v]] : 0.0; };
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (!g.is_self_loop(e)) out[static_cast<Eigen::Index>(e)] = at(g.src(e)) - at(g.dst(e));
  }
  return out;
}

Learnability is_learnable(const CutProjector& projector, const Eigen::VectorXd& f, double tol) {
  Learnability out;
  out.residual = projector.project(f);
  out.residual_norm = out.residual.norm();
  out.learnable = out.residual_norm <= tol * f.norm();
  return out;
}

Learnability is_learnable(const PatternGraph& g, const Eigen::VectorXd& f, double tol) {
  return is_learnable(CutProjector(g), f, tol);
}

Eigen::VectorXd SpanBuilder::residual(const Eigen::VectorXd& f) const {
  Eigen::VectorXd v = f;
  for (int pass = 0; pass < 2; ++pass) {
    for (const Eigen::VectorXd& q : basis_) v -= q.dot(v) * q;
  }
  return v;
}

bool SpanBuilder::try_add(const SparseFunctional& f) { return try_add(to_dense(f, static_cast<uint64_t>(dim_))); }

bool SpanBuilder::try_add(const Eigen::VectorXd& f) {
  const double norm0 = f.norm();
  if (norm0 == 0.0) return false;
  Eigen::VectorXd v = residual(f);
  if (v.norm() <= 1e-9 * norm0) return false;
  basis_.push_back(v / v.norm());
  return true;
}

bool SpanBuilder::contains(const Eigen::VectorXd& f) const {
  return residual(f).norm() <= 1e-9 * std::max(f.norm(), 1e-300);
}

bool learnable_individual(const CliffordGate& g, const PauliOp& a) {
  return g.conjugate(a).pattern() == a.pattern();
}

}  // namespace plearn
