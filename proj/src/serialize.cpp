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

#include "plearn/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace plearn {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const Json& require(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) fail(what + " is missing field '" + key + "'");
  return j.at(key);
}

std::string pattern_str(uint32_t pattern, int n) {
  std::string s(static_cast<size_t>(n), '0');
  for (int j = 0; j < n; ++j) {
    if (pattern >> j & 1u) s[static_cast<size_t>(j)] = '1';
  }
  return s;
}

uint32_t pattern_from_json(const Json& j, int n) {
  if (j.is_number_unsigned()) return j.get<uint32_t>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (static_cast<int>(s.size()) != n) fail("pattern '" + s + "' must have " + std::to_string(n) + " bits");
    uint32_t out = 0;
    for (int k = 0; k < n; ++k) {
      if (s[static_cast<size_t>(k)] == '1') {
        out |= 1u << k;
      } else if (s[static_cast<size_t>(k)] != '0') {
        fail("pattern '" + s + "' must contain only 0 and 1");
      }
    }
    return out;
  }
  fail("pattern must be an integer or a bit string");
}


Json interval_json(const Interval& i) { return Json{{"lo", i.lo}, {"hi", i.hi}}; }

Json functional_json(const PatternGraph& g, const SparseFunctional& f) {
  Json a = Json::array();
  for (const auto& [e, c] : f) a.push_back(Json{{"edge", g.edge_name(e)}, {"coeff", c}});
  return a;
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    size_t start = text.rfind('\n', e.byte > 0 ? e.byte - 1 : 0);
    start = start == std::string::npos || e.byte <= 1 ? 0 : start + 1;
    size_t end = text.find('\n', start);
    std::string context = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": JSON syntax error\n  " << context;
    fail(os.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

Json gate_to_json(const CliffordGate& g) {
  Json x = Json::array(), z = Json::array();
  for (const PauliOp& p : g.x_images()) x.push_back(p.str(true));
  for (const PauliOp& p : g.z_images()) z.push_back(p.str(true));
  Json j{{"n", g.num_qubits()}, {"name", g.name()}, {"x_images", x}, {"z_images", z}};
  if (!g.support().empty()) j["support"] = g.support();
  return j;
}

CliffordGate gate_from_json(const Json& j, int n) {
  if (!j.is_object()) fail("gate must be a JSON object");
  try {
    if (j.contains("library")) {
      CliffordGate base = gates::by_name(j.at("library").get<std::string>());
      std::vector<int> support;
      if (j.contains("support")) {
        support = j.at("support").get<std::vector<int>>();
      } else {
        for (int q = 0; q < base.num_qubits(); ++q) support.push_back(q);
      }
      const int total = n >= 0 ? n : get_or<int>(j, "n", base.num_qubits());
      CliffordGate g = embed(base, support, total);
      if (j.contains("name")) g = g.renamed(j.at("name").get<std::string>());
      return g;
    }
    const int gn = require(j, "n", "gate").get<int>();
    if (n >= 0 && gn != n) fail("gate has n = " + std::to_string(gn) + ", expected " + std::to_string(n));
    std::vector<PauliOp> x, z;
    for (const Json& s : require(j, "x_images", "gate")) x.push_back(PauliOp::from_str(s.get<std::string>()));
    for (const Json& s : require(j, "z_images", "gate")) z.push_back(PauliOp::from_str(s.get<std::string>()));
    if (static_cast<int>(x.size()) != gn || static_cast<int>(z.size()) != gn) fail("gate needs n x_images and n z_images");
    std::vector<int> support = get_or<std::vector<int>>(j, "support", {});
    return CliffordGate(std::move(x), std::move(z), get_or<std::string>(j, "name", ""), std::move(support));
  } catch (const Json::exception& e) {
    fail(std::string("malformed gate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid gate: ") + e.what());
  }
}

GateSet gate_set_from_json(const Json& j) {
  if (j.is_object() && j.contains("preset")) return gate_set_preset(j.at("preset").get<std::string>());
  if (j.is_object() && j.contains("gates")) {
    const int n = require(j, "n", "gate set").get<int>();
    std::vector<CliffordGate> gs;
    for (const Json& g : j.at("gates")) gs.push_back(gate_from_json(g, n));
    try {
      return GateSet(std::move(gs));
    } catch (const std::invalid_argument& e) {
      fail(std::string("invalid gate set: ") + e.what());
    }
  }
  return GateSet({gate_from_json(j)});
}

Json gate_set_to_json(const GateSet& gs) {
  Json a = Json::array();
  for (const CliffordGate& g : gs.gates) a.push_back(gate_to_json(g));
  return Json{{"n", gs.n}, {"gates", a}};
}

std::vector<std::string> gate_set_presets() { return {"cnot", "swap", "cz", "cnot+swap", "cnot3ring", "circ3"}; }

GateSet gate_set_preset(const std::string& name) {
  if (name == "cnot") return GateSet({gates::cnot()});
  if (name == "swap") return GateSet({gates::swap()});
  if (name == "cz") return GateSet({gates::cz()});
  if (name == "cnot+swap") return GateSet({gates::cnot(), gates::swap()});
  if (name == "cnot3ring") {
    return GateSet({embed(gates::cnot(), {0, 1}, 3).renamed("CNOT12"), embed(gates::cnot(), {1, 2}, 3).renamed("CNOT23"),
                    embed(gates::cnot(), {2, 0}, 3).renamed("CNOT31")});
  }
  if (name == "circ3") return GateSet({gates::permutation({1, 2, 0}, "CIRC3")});
  std::string known;
  for (const std::string& p : gate_set_presets()) known += (known.empty() ? "" : ", ") + p;
  fail("unknown gate-set preset '" + name + "' (known: " + known + ")");
}

Json channel_to_json(const PauliChannel& ch, bool error_rates) {
  return Json{{"n", ch.num_qubits()},
              {"basis", error_rates ? "p" : "lambda"},
              {"values", error_rates ? ch.error_rates() : ch.lambdas()}};
}

PauliChannel channel_from_json(const Json& j) {
  try {
    const int n = require(j, "n", "channel").get<int>();
    const std::string basis = get_or<std::string>(j, "basis", "lambda");
    std::vector<double> v = require(j, "values", "channel").get<std::vector<double>>();
    if (v.size() != num_paulis(n)) fail("channel needs 4^n = " + std::to_string(num_paulis(n)) + " values");
    if (basis == "lambda") return PauliChannel(n, std::move(v));
    if (basis == "p") return PauliChannel::from_error_rates(n, v);
    fail("channel basis must be 'lambda' or 'p'");
  } catch (const Json::exception& e) {
    fail(std::string("malformed channel: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid channel: ") + e.what());
  }
}

Json noise_model_to_json(const NoiseModel& m) {
  Json gates = Json::object();
  for (const auto& [name, ch] : m.gate_noise) gates[name] = channel_to_json(ch);
  return Json{{"kind", "pauli"},
              {"n", m.n},
              {"sp", channel_to_json(m.sp)},
              {"meas", channel_to_json(m.meas)},
              {"gates", gates}};
}

NoiseModel noise_model_from_json(const Json& j) {
  NoiseModel m;
  m.n = require(j, "n", "noise model").get<int>();
  m.sp = j.contains("sp") ? channel_from_json(j.at("sp")) : PauliChannel::identity(m.n);
  m.meas = j.contains("meas") ? channel_from_json(j.at("meas")) : PauliChannel::identity(m.n);
  for (const auto& [name, ch] : require(j, "gates", "noise model").items()) m.gate_noise[name] = channel_from_json(ch);
  return m;
}

bool is_cptp_spec(const Json& j) { return j.is_object() && j.value("kind", "") == "cptp"; }

Json cptp_spec_to_json(const CPTPNoiseSpec& s) {
  Json gates = Json::object();
  for (const auto& [name, comps] : s.gate_noise) {
    Json a = Json::array();
    for (const KrausComponent& c : comps) {
      Json cj{{"type", c.type}};
      if (c.type == "amplitude_damping") {
        cj["qubit"] = c.qubit;
        cj["gamma"] = c.param;
      } else if (c.type == "bit_flip") {
        cj["qubit"] = c.qubit;
        cj["q"] = c.param;
      } else {
        Json ops = Json::array();
        for (const dense::ComplexMatrix& k : c.custom) {
          Json re = Json::array(), im = Json::array();
          for (Eigen::Index r = 0; r < k.rows(); ++r) {
            Json rr = Json::array(), ri = Json::array();
            for (Eigen::Index col = 0; col < k.cols(); ++col) {
              rr.push_back(k(r, col).real());
              ri.push_back(k(r, col).imag());
            }
            re.push_back(rr);
            im.push_back(ri);
          }
          ops.push_back(Json{{"re", re}, {"im", im}});
        }
        cj["operators"] = ops;
      }
      a.push_back(cj);
    }
    gates[name] = a;
  }
  return Json{{"kind", "cptp"}, {"n", s.n}, {"gates", gates}, {"sp_flip", s.sp_flip}, {"meas_flip", s.meas_flip}};
}

CPTPNoiseSpec cptp_spec_from_json(const Json& j) {
  try {
    CPTPNoiseSpec s;
    s.n = require(j, "n", "CPTP spec").get<int>();
    s.sp_flip = get_or<std::vector<double>>(j, "sp_flip", std::vector<double>(static_cast<size_t>(s.n), 0.0));
    s.meas_flip = get_or<std::vector<double>>(j, "meas_flip", std::vector<double>(static_cast<size_t>(s.n), 0.0));
    for (const auto& [name, comps] : require(j, "gates", "CPTP spec").items()) {
      std::vector<KrausComponent> list;
      for (const Json& c : comps) {
        KrausComponent k;
        k.type = require(c, "type", "Kraus component").get<std::string>();
        if (k.type == "amplitude_damping") {
          k.qubit = require(c, "qubit", "amplitude damping").get<int>();
          k.param = require(c, "gamma", "amplitude damping").get<double>();
        } else if (k.type == "bit_flip") {
          k.qubit = require(c, "qubit", "bit flip").get<int>();
          k.param = require(c, "q", "bit flip").get<double>();
        } else if (k.type == "kraus") {
          for (const Json& op : require(c, "operators", "Kraus component")) {
            auto re = require(op, "re", "Kraus operator").get<std::vector<std::vector<double>>>();
            auto im = get_or<std::vector<std::vector<double>>>(op, "im", {});
            const Eigen::Index d = static_cast<Eigen::Index>(re.size());
            dense::ComplexMatrix m(d, d);
            for (Eigen::Index r = 0; r < d; ++r) {
              if (static_cast<Eigen::Index>(re[static_cast<size_t>(r)].size()) != d) fail("Kraus operator must be square");
              for (Eigen::Index col = 0; col < d; ++col) {
                const double vi = im.empty() ? 0.0 : im.at(static_cast<size_t>(r)).at(static_cast<size_t>(col));
                m(r, col) = {re[static_cast<size_t>(r)][static_cast<size_t>(col)], vi};
              }
            }
            k.custom.push_back(m);
          }
        } else {
          fail("unknown Kraus component type '" + k.type + "'");
        }
        list.push_back(std::move(k));
      }
      s.gate_noise[name] = std::move(list);
    }
    return s;
  } catch (const Json::exception& e) {
    fail(std::string("malformed CPTP spec: ") + e.what());
  }
}

Json gauge_to_json(const GaugeTransform& t) {
  switch (t.kind) {
    case GaugeTransform::Kind::kDepolarizing:
      return Json{{"kind", "depolarizing"}, {"qubit", t.qubit}, {"eta", t.eta}};
    case GaugeTransform::Kind::kCut:
      return Json{{"kind", "cut"}, {"v1", t.v1}, {"eta", t.eta}};
    case GaugeTransform::Kind::kComposite: {
      Json parts = Json::array();
      for (const GaugeTransform& p : t.parts) parts.push_back(gauge_to_json(p));
      return Json{{"kind", "composite"}, {"parts", parts}};
    }
  }
  return {};
}

GaugeTransform gauge_from_json(const Json& j, int n) {
  try {
    const std::string kind = require(j, "kind", "gauge").get<std::string>();
    // A missing eta is left as NaN for the caller to choose.
    const double eta = get_or<double>(j, "eta", std::numeric_limits<double>::quiet_NaN());
    if (kind == "depolarizing") {
      return GaugeTransform::depolarizing(require(j, "qubit", "gauge").get<int>(), eta);
    }
    if (kind == "cut") {
      std::vector<uint32_t> v1;
      for (const Json& p : require(j, "v1", "gauge")) v1.push_back(pattern_from_json(p, n));
      return GaugeTransform::cut(std::move(v1), eta);
    }
    if (kind == "composite") {
      std::vector<GaugeTransform> parts;
      for (const Json& p : require(j, "parts", "gauge")) parts.push_back(gauge_from_json(p, n));
      return GaugeTransform::composite(std::move(parts));
    }
    fail("unknown gauge kind '" + kind + "'");
  } catch (const Json::exception& e) {
    fail(std::string("malformed gauge: ") + e.what());
  }
}

Json config_to_json(const CBConfig& c) {
  Json j{{"protocol", to_string(c.protocol)}, {"gate", c.gate},       {"paulis", c.paulis},
         {"depths", c.depths},                {"circuits", c.circuits}, {"shots", c.shots},
         {"seed", c.seed},                    {"engine", to_string(c.engine)}};
  if (c.interleave) j["interleave"] = gate_to_json(*c.interleave);
  return j;
}

CBConfig config_from_json(const Json& j, int n) {
  try {
    CBConfig c;
    c.protocol = protocol_from_string(require(j, "protocol", "CB config").get<std::string>());
    c.gate = require(j, "gate", "CB config").get<std::string>();
    c.paulis = require(j, "paulis", "CB config").get<std::vector<std::string>>();
    c.depths = require(j, "depths", "CB config").get<std::vector<int>>();
    c.circuits = get_or<int>(j, "circuits", c.circuits);
    c.shots = get_or<int>(j, "shots", c.shots);
    c.seed = get_or<uint64_t>(j, "seed", c.seed);
    if (j.contains("engine")) c.engine = engine_from_string(j.at("engine").get<std::string>());
    if (j.contains("interleave")) {
      const Json& layer = j.at("interleave");
      if (layer.is_array()) {
        std::vector<CliffordGate> per_qubit;
        for (const Json& s : layer) per_qubit.push_back(gates::by_name(s.get<std::string>()));
        c.interleave = gates::local_layer(per_qubit);
      } else {
        c.interleave = gate_from_json(layer, n);
      }
    }
    return c;
  } catch (const Json::exception& e) {
    fail(std::string("malformed CB config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid CB config: ") + e.what());
  }
}

Json dataset_to_json(const CBDataset& ds) {
  Json configs = Json::array();
  for (const CBConfig& c : ds.configs) configs.push_back(config_to_json(c));
  Json records = Json::array();
  for (const CBRecord& r : ds.records) {
    records.push_back(Json{{"protocol", to_string(r.protocol)},
                           {"gate", r.gate},
                           {"interleave", r.interleave},
                           {"orbit", r.orbit},
                           {"family", r.family},
                           {"prep", r.prep},
                           {"meas", r.meas},
                           {"depth", r.depth},
                           {"l", r.l},
                           {"circuit", r.circuit},
                           {"sign", r.sign},
                           {"shots", r.shots},
                           {"mean", r.mean}});
  }
  return Json{{"n", ds.n}, {"seed", ds.seed}, {"engine", ds.engine}, {"configs", configs}, {"records", records}};
}

CBDataset dataset_from_json(const Json& j) {
  try {
    CBDataset ds;
    ds.n = require(j, "n", "dataset").get<int>();
    ds.seed = get_or<uint64_t>(j, "seed", 0);
    ds.engine = get_or<std::string>(j, "engine", "");
    for (const Json& c : require(j, "configs", "dataset")) ds.configs.push_back(config_from_json(c, ds.n));
    for (const Json& r : require(j, "records", "dataset")) {
      CBRecord rec;
      rec.protocol = protocol_from_string(r.at("protocol").get<std::string>());
      rec.gate = r.at("gate").get<std::string>();
      rec.interleave = r.at("interleave").get<std::string>();
      rec.orbit = r.at("orbit").get<std::string>();
      rec.family = r.at("family").get<std::string>();
      rec.prep = r.at("prep").get<std::string>();
      rec.meas = r.at("meas").get<std::string>();
      rec.depth = r.at("depth").get<int>();
      rec.l = r.at("l").get<int>();
      rec.circuit = r.at("circuit").get<int>();
      rec.sign = r.at("sign").get<int>();
      rec.shots = r.at("shots").get<int>();
      rec.mean = r.at("mean").get<double>();
      ds.records.push_back(std::move(rec));
    }
    return ds;
  } catch (const Json::exception& e) {
    fail(std::string("malformed dataset: ") + e.what());
  }
}

std::string dataset_to_csv(const CBDataset& ds) {
  std::ostringstream os;
  os << "protocol,gate,interleave,orbit,family,prep,meas,depth,l,circuit,sign,shots,mean\n";
  for (const CBRecord& r : ds.records) {
    os << to_string(r.protocol) << ',' << r.gate << ',' << r.interleave << ',' << r.orbit << ',' << r.family << ','
       << r.prep << ',' << r.meas << ',' << r.depth << ',' << r.l << ',' << r.circuit << ',' << r.sign << ','
       << r.shots << ',' << format_double(r.mean) << '\n';
  }
  return os.str();
}

Json fit_to_json(const DecayFit& f) {
  Json pts = Json::array();
  for (const DepthPoint& p : f.points) {
    pts.push_back(Json{{"x", p.x}, {"circuits", p.circuits}, {"mean", p.mean}, {"se", p.se}, {"used", p.used},
                       {"residual", p.residual}});
  }
  Json j{{"key", f.key.str()},       {"protocol", to_string(f.key.protocol)}, {"gate", f.key.gate},
         {"interleave", f.key.interleave}, {"orbit", f.key.orbit},          {"family", f.key.family},
         {"fittable", f.fittable}};
  if (f.fittable) {
    j["rate"] = f.rate;
    j["rate_se"] = f.rate_se;
    j["amplitude"] = f.amplitude;
    j["amplitude_se"] = f.amplitude_se;
  } else {
    j["reason"] = f.reason;
  }
  j["points"] = pts;
  return j;
}

Json fits_to_json(const std::vector<DecayFit>& fits) {
  Json a = Json::array();
  for (const DecayFit& f : fits) a.push_back(fit_to_json(f));
  return a;
}

std::string decay_csv(const std::vector<DecayFit>& fits) {
  std::ostringstream os;
  os << "key,x,mean,se,used,model\n";
  for (const DecayFit& f : fits) {
    for (const DepthPoint& p : f.points) {
      const double model = f.fittable ? f.amplitude * std::pow(f.rate, p.x) : std::nan("");
      os << f.key.str() << ',' << p.x << ',' << format_double(p.mean) << ',' << format_double(p.se) << ','
         << (p.used ? 1 : 0) << ',' << (f.fittable ? format_double(model) : "") << '\n';
    }
  }
  return os.str();
}

Json report_to_json(const PatternGraph& g, const LearnableReport& r) {
  const int n = r.n;
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json a = Json::array();
    for (uint32_t v : c) a.push_back(pattern_str(v, n));
    comps.push_back(a);
  }
  auto basis_json = [&](const std::vector<BasisElement>& b) {
    Json a = Json::array();
    for (const BasisElement& e : b) {
      a.push_back(Json{{"text", e.text}, {"kind", e.kind}, {"terms", functional_json(g, e.vec)}});
    }
    return a;
  };
  Json cuts = Json::array();
  for (const SparseFunctional& f : r.cut_basis) cuts.push_back(functional_json(g, f));
  Json gates = Json::array();
  for (const CliffordGate& gate : g.gate_set().gates) gates.push_back(gate.name());
  Json rows = Json::array();
  for (const IndividualRow& row : r.individual) {
    rows.push_back(Json{{"gate", row.gate}, {"pauli", row.pauli}, {"image", row.image}, {"learnable", row.learnable}});
  }
  return Json{{"n", n},
              {"gates", gates},
              {"num_vertices", r.num_vertices},
              {"num_edges", r.num_edges},
              {"num_components", r.num_components},
              {"udf", r.udf},
              {"ldf", r.ldf},
              {"components", comps},
              {"lambda_basis", basis_json(r.lambda_basis)},
              {"cut_basis", cuts},
              {"wht_invariant", r.wht_invariant},
              {"p_basis", basis_json(r.p_basis)},
              {"individual", rows}};
}

Json estimates_to_json(const PatternGraph& g, const LearnableEstimates& e) {
  Json items = Json::array();
  for (size_t k = 0; k < e.basis.size(); ++k) {
    const double v = e.values(static_cast<Eigen::Index>(k));
    Json item{{"text", e.basis[k].text},
              {"terms", functional_json(g, e.basis[k].vec)},
              {"identified", static_cast<bool>(e.identified[k])}};
    if (e.identified[k]) {
      item["log_value"] = v;
      item["log_sigma"] = e.sigma(k);
      item["value"] = std::exp(v);
      item["sigma"] = std::exp(v) * e.sigma(k);
    }
    items.push_back(item);
  }
  Json point = Json::object();
  for (uint64_t edge = 0; edge < g.num_edges(); ++edge) point[g.edge_name(edge)] = e.point(static_cast<Eigen::Index>(edge));
  return Json{{"rank", e.rank},     {"needed", e.needed}, {"complete", e.complete}, {"missing", e.missing},
              {"chi2", e.chi2},     {"dof", e.dof},       {"estimates", items},     {"gauge_fixed_log_lambda", point}};
}

Json intercept_to_json(const InterceptEstimate& e) {
  Json j{{"gate", e.gate}, {"pauli", e.pauli}, {"image", e.image}, {"ok", e.ok}};
  if (e.ok) {
    j["value"] = e.value;
    j["sigma"] = e.sigma;
  }
  j["direct"] = e.direct;
  j["direct_sigma"] = e.direct_sigma;
  if (!e.warning.empty()) j["warning"] = e.warning;
  return j;
}

Json region_to_json(const PatternGraph& g, const FeasibleRegion& r) {
  Json j{{"empty", r.empty}, {"eps", r.eps}, {"best_margin", r.best_margin}};
  if (r.empty) {
    j["min_eps"] = r.min_eps;
    return j;
  }
  Json axes = Json::array();
  for (size_t i = 0; i < r.axes.size(); ++i) {
    axes.push_back(Json{{"name", r.coord_names[i]}, {"lo", r.axes[i].lo}, {"hi", r.axes[i].hi}});
  }
  j["coordinates"] = r.fidelity_coords ? "fidelity" : "cut";
  j["axes"] = axes;
  j["points_per_axis"] = r.points_per_axis;
  j["rectangular"] = r.rectangular;
  // Grid mask as '0'/'1' characters, first axis varying fastest.
  std::string mask(r.mask.size(), '0');
  for (size_t i = 0; i < r.mask.size(); ++i) mask[i] = r.mask[i] ? '1' : '0';
  j["mask"] = mask;
  Json lam = Json::array();
  for (uint64_t e = 0; e < g.num_edges(); ++e) {
    lam.push_back(Json{{"edge", g.edge_name(e)},
                       {"constrained", static_cast<bool>(r.constrained[e])},
                       {"lambda", interval_json(r.lambda_intervals[e])},
                       {"p", interval_json(r.p_intervals[e])}});
  }
  j["intervals"] = lam;
  j["boundary_points"] = r.boundary.size();
  return j;
}

std::string region_boundary_csv(const FeasibleRegion& r) {
  std::ostringstream os;
  for (size_t i = 0; i < r.coord_names.size(); ++i) os << (i ? "," : "") << r.coord_names[i];
  os << '\n';
  for (const auto& p : r.boundary) {
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << format_double(p[i]);
    os << '\n';
  }
  return os.str();
}

Json sp_bound_to_json(const SPBound& b) {
  Json j{{"a", b.a},           {"b", b.b},           {"ratio_lo", b.lo},        {"ratio_hi", b.hi},
         {"ratio_lo_sigma", b.lo_sigma}, {"ratio_hi_sigma", b.hi_sigma}, {"nontrivial", b.nontrivial}};
  if (b.qubit >= 0) {
    j["qubit"] = b.qubit;
    j["flip_lower_bound"] = b.flip_bound;
    j["flip_sigma"] = b.flip_sigma;
  }
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

Json indistinguishability_to_json(const IndistinguishabilityReport& r) {
  return Json{{"experiments", r.experiments},
              {"max_deviation", r.max_deviation},
              {"worst", r.worst},
              {"indistinguishable", r.indistinguishable()}};
}

}  // namespace plearn
