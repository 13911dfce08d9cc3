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

#include "plearn/basis_report.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "plearn/kernels.hpp"

namespace plearn {

namespace {

// Limit for the greedy readable basis; larger graphs use fundamental cycles.
constexpr uint64_t kGreedyEdgeLimit = 4096;

std::string format_coeff(double c, bool first) {
  std::ostringstream os;
  double mag = std::abs(c);
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (std::abs(mag - 1.0) > 1e-12) {
    if (std::abs(mag - std::round(mag)) < 1e-9) {
      os << static_cast<long long>(std::llround(mag)) << " ";
    } else {
      os << mag << " ";
    }
  }
  return os.str();
}

struct Candidate {
  std::vector<uint64_t> edges;  // sorted
  std::string kind;
};

}  // namespace

std::string functional_text(const PatternGraph& g, const SparseFunctional& f, const std::string& prefix) {
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f) {
    if (c == 0.0) continue;
    out += format_coeff(c, first) + prefix + "_" + g.edge_name(e);
    first = false;
  }
  return first ? "0" : out;
}

Eigen::VectorXd blockwise_wht(const PatternGraph& g, const Eigen::VectorXd& f) {
  Eigen::VectorXd out = f;
  const uint64_t block = g.paulis_per_gate();
  for (size_t gi = 0; gi < g.gate_set().gates.size(); ++gi) {
    kernels::wht_inplace(out.data() + gi * block, g.num_qubits());
  }
  return out;
}

std::vector<BasisElement> human_cycle_basis(const PatternGraph& g) {
  SpaceBasis fundamental = cycle_space(g);
  const size_t target = fundamental.dim();
  std::vector<BasisElement> out;
  auto as_element = [&](const SparseFunctional& f, const std::string& kind) {
    return BasisElement{f, kind, functional_text(g, f, "l")};
  };
  if (g.num_edges() > kGreedyEdgeLimit) {
    for (const SparseFunctional& f : fundamental.vectors) {
      out.push_back(as_element(f, f.size() == 1 ? "self-loop" : "cycle"));
    }
    return out;
  }

  std::vector<Candidate> candidates;
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (g.is_self_loop(e)) candidates.push_back({{e}, "self-loop"});
  }
  // Oriented 2-cycles u -> v -> u.
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (g.is_self_loop(e)) continue;
    for (uint64_t back : g.out_edges(g.dst(e))) {
      if (g.dst(back) == g.src(e) && back > e) candidates.push_back({{e, back}, "circuit"});
    }
  }
  // Shortest directed circuit through each remaining edge.
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    if (g.is_self_loop(e)) continue;
    const uint32_t start = g.dst(e), goal = g.src(e);
    std::map<uint32_t, uint64_t> via;
    std::deque<uint32_t> queue = {start};
    via[start] = ~uint64_t{0};
    while (!queue.empty() && !via.count(goal)) {
      uint32_t v = queue.front();
      queue.pop_front();
      for (uint64_t f : g.out_edges(v)) {
        if (g.is_self_loop(f) || via.count(g.dst(f))) continue;
        via[g.dst(f)] = f;
        queue.push_back(g.dst(f));
      }
    }
    if (!via.count(goal)) continue;
    Candidate c{{e}, "circuit"};
    for (uint32_t v = goal; v != start; v = g.src(via[v])) c.edges.push_back(via[v]);
    std::sort(c.edges.begin(), c.edges.end());
    if (c.edges.size() > 2) candidates.push_back(std::move(c));
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  });

  SpanBuilder span(g.num_edges());
  for (const Candidate& c : candidates) {
    if (span.size() == target) break;
    SparseFunctional f;
    for (uint64_t e : c.edges) f.emplace_back(e, 1.0);
    if (span.try_add(f)) out.push_back(as_element(f, c.kind));
  }
  for (const SparseFunctional& f : fundamental.vectors) {
    if (span.size() == target) break;
    if (span.try_add(f)) out.push_back(as_element(f, "cycle"));
  }
  return out;
}

LearnableReport learnable_basis_report(const PatternGraph& g) {
  LearnableReport r;
  r.n = g.num_qubits();
  r.num_vertices = g.num_vertices();
  r.num_edges = g.num_edges();
  Components comp = components(g);
  r.num_components = comp.count();
  r.udf = r.num_vertices - r.num_components;
  r.ldf = r.num_edges - r.num_vertices + r.num_components;
  r.components.resize(comp.count());
  for (uint32_t v = 0; v < g.num_vertices(); ++v) r.components[comp.label[v]].push_back(v);
  r.lambda_basis = human_cycle_basis(g);
  r.cut_basis = cut_space(g).vectors;

  CutProjector projector(g);
  r.wht_invariant = true;
  std::vector<Eigen::VectorXd> images;
  for (const BasisElement& b : r.lambda_basis) {
    Eigen::VectorXd hz = blockwise_wht(g, to_dense(b.vec, g.num_edges()));
    if (!is_learnable(projector, hz, 1e-9).learnable) r.wht_invariant = false;
    images.push_back(std::move(hz));
  }
  for (size_t k = 0; k < r.lambda_basis.size(); ++k) {
    // sum_a w_a p_a is first-order learnable iff H w lies in the cycle space.
    // With an invariant cycle space w = z works; otherwise w = H z does.
    SparseFunctional w = r.wht_invariant ? r.lambda_basis[k].vec : to_sparse(images[k], 1e-12);
    r.p_basis.push_back(BasisElement{w, r.lambda_basis[k].kind, functional_text(g, w, "p")});
  }

  for (const CliffordGate& gate : g.gate_set().gates) {
    for (uint64_t a = 0; a < g.paulis_per_gate(); ++a) {
      PauliOp p = PauliOp::from_index(g.num_qubits(), a);
      r.individual.push_back(
          {gate.name(), p.str(false), gate.conjugate(p).str(true), learnable_individual(gate, p)});
    }
  }
  return r;
}

std::string report_markdown(const PatternGraph& g, const LearnableReport& r) {
  std::ostringstream os;
  os << "# Learnability report\n\n";
  os << "| quantity | value |\n|---|---|\n";
  os << "| qubits | " << r.n << " |\n";
  os << "| gates | ";
  for (size_t i = 0; i < g.gate_set().gates.size(); ++i) os << (i ? ", " : "") << g.gate_set().gates[i].name();
  os << " |\n";
  os << "| parameters (edges) | " << r.num_edges << " |\n";
  os << "| components | " << r.num_components << " |\n";
  os << "| learnable degrees of freedom | " << r.ldf << " |\n";
  os << "| unlearnable degrees of freedom | " << r.udf << " |\n";
  os << "| cycle space WHT-invariant | " << (r.wht_invariant ? "yes" : "no") << " |\n\n";
  os << "## Learnable basis (log fidelities)\n\n";
  for (const BasisElement& b : r.lambda_basis) os << "- `" << b.text << "` (" << b.kind << ")\n";
  os << "\n## First-order learnable error-rate combinations\n\n";
  for (const BasisElement& b : r.p_basis) os << "- `" << b.text << "`\n";
  os << "\n## Gauge directions (cut basis)\n\n";
  for (const SparseFunctional& f : r.cut_basis) os << "- `" << functional_text(g, f, "l") << "`\n";
  os << "\n## Individual fidelities\n\n| gate | Pauli | image | learnable |\n|---|---|---|---|\n";
  for (const IndividualRow& row : r.individual) {
    os << "| " << row.gate << " | " << row.pauli << " | " << row.image << " | " << (row.learnable ? "yes" : "no")
       << " |\n";
  }
  return os.str();
}

std::string graph_dot(const PatternGraph& g) {
  std::ostringstream os;
  os << "digraph pattern_transfer {\n  rankdir=LR;\n";
  auto vertex_name = [&](uint32_t v) {
    std::string s;
    for (int j = 0; j < g.num_qubits(); ++j) s.push_back(((v >> j) & 1) ? '1' : '0');
    return s;
  };
  for (uint32_t v = 0; v < g.num_vertices(); ++v) os << "  \"" << vertex_name(v) << "\";\n";
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    os << "  \"" << vertex_name(g.src(e)) << "\" -> \"" << vertex_name(g.dst(e)) << "\" [label=\"" << g.edge_name(e)
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace plearn
