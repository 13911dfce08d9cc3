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

#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "plearn/basis_report.hpp"
#include "plearn/cb_sim.hpp"
#include "plearn/estimator.hpp"
#include "plearn/gauge.hpp"
#include "plearn/serialize.hpp"
#include "plearn/study.hpp"
#include "svg.hpp"

namespace plearn::cli {

namespace {

/// Input that parses but is rejected by a model or protocol check.
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string gateset;
  std::string out = ".";
  std::vector<std::string> formats;
  uint64_t seed = 1;
  bool seed_set = false;

  bool wants(const std::string& f) const {
    return formats.empty() || std::find(formats.begin(), formats.end(), f) != formats.end();
  }
  std::string path(const std::string& name) const { return (std::filesystem::path(out) / name).string(); }
};

struct Noise {
  bool cptp = false;
  NoiseModel pauli;
  CPTPNoiseSpec spec;

  /// Pauli model seen after randomized compiling.
  NoiseModel twirled(const GateSet& gs) const { return cptp ? spec.twirled_model(gs) : pauli; }
};

std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + item + "' in " + what);
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + item + "' in " + what);
    }
  }
  return out;
}

GateSet load_gate_set(const std::string& arg) {
  if (arg.empty()) throw ParseError("--gateset is required (a JSON file or one of the built-in names)");
  const auto presets = gate_set_presets();
  if (std::find(presets.begin(), presets.end(), arg) != presets.end()) return gate_set_preset(arg);
  return gate_set_from_json(read_json_file(arg));
}

// Shorthands: "none", "ad:GAMMA[:MEAS[:SP]]" (amplitude damping on every
// gate qubit with readout flips), "depol:Q[:MEAS[:SP]]" (Pauli model).
Noise load_noise(const std::string& arg, const GateSet& gs) {
  Noise noise;
  const int n = gs.n;
  auto rest = [&](size_t prefix) { return parse_numbers(arg.substr(prefix), "--noise " + arg); };
  if (arg.empty() || arg == "none") {
    noise.pauli = NoiseModel::noiseless(gs);
  } else if (arg.rfind("ad:", 0) == 0) {
    std::vector<double> v = rest(3);
    v.resize(3, 0.0);
    noise.cptp = true;
    noise.spec = CPTPNoiseSpec::amplitude_damping(gs, v[0], v[1], v[2]);
  } else if (arg.rfind("depol:", 0) == 0) {
    std::vector<double> v = rest(6);
    v.resize(3, 0.0);
    noise.pauli.n = n;
    noise.pauli.meas = channels::readout_flip(std::vector<double>(static_cast<size_t>(n), v[1]));
    noise.pauli.sp = channels::readout_flip(std::vector<double>(static_cast<size_t>(n), v[2]));
    for (const CliffordGate& g : gs.gates) noise.pauli.gate_noise[g.name()] = channels::depolarizing(n, v[0]);
  } else {
    Json j = read_json_file(arg);
    if (is_cptp_spec(j)) {
      noise.cptp = true;
      noise.spec = cptp_spec_from_json(j);
    } else {
      noise.pauli = noise_model_from_json(j);
    }
  }
  try {
    if (noise.cptp) {
      noise.spec.validate(gs);
    } else {
      ValidationReport r = noise.pauli.validate(gs, ValidationMode::kCptp);
      if (!r.ok) throw ValidationFailure("noise model is not CPTP: " + r.summary(n));
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(std::string("invalid noise model: ") + e.what());
  }
  return noise;
}

std::unique_ptr<Engine> make_engine(const GateSet& gs, const Noise& noise, EngineKind kind) {
  if (kind == EngineKind::kPauliFast) {
    if (noise.cptp) {
      throw ValidationFailure("the pauli_fast engine takes Pauli noise models only; use --engine ptm_dense for Kraus specs");
    }
    return std::make_unique<PauliFastEngine>(gs, noise.pauli);
  }
  if (gs.n > dense::kMaxDenseQubits) {
    throw ValidationFailure("the ptm_dense engine supports at most " + std::to_string(dense::kMaxDenseQubits) + " qubits");
  }
  if (noise.cptp) return std::make_unique<PtmDenseEngine>(gs, noise.spec);
  return std::make_unique<PtmDenseEngine>(gs, noise.pauli);
}

void write_json(const Common& c, const std::string& name, const Json& j) {
  write_text_file(c.path(name), j.dump(2) + "\n");
}

void ensure_out(const Common& c) { std::filesystem::create_directories(c.out); }

// ---- analyze ----

int cmd_analyze(const Common& c, std::ostream& out) {
  GateSet gs = load_gate_set(c.gateset);
  PatternGraph g(gs);
  LearnableReport r = learnable_basis_report(g);
  ensure_out(c);
  if (c.wants("json")) write_json(c, "report.json", report_to_json(g, r));
  if (c.wants("md")) write_text_file(c.path("report.md"), report_markdown(g, r));
  if (c.wants("dot")) write_text_file(c.path("graph.dot"), graph_dot(g));
  out << "n=" << r.n << " |Lambda|=" << r.num_edges << " components=" << r.num_components << " UDF=" << r.udf
      << " LDF=" << r.ldf << " wht_invariant=" << (r.wht_invariant ? "yes" : "no") << "\n";
  return kExitOk;
}

// ---- simulate ----

struct SimOptions {
  std::string noise;
  std::string config;
  std::string engine;
  std::string suite = "learnable";
  std::string depths;
  std::string ls;
  int circuits = 30;
  int shots = 200;
};

std::vector<CBConfig> build_configs(const GateSet& gs, const SimOptions& o, const Common& c, EngineKind engine) {
  std::vector<int> depths = o.depths.empty() ? std::vector<int>{2, 4, 8, 16, 32, 64, 128} : parse_int_list(o.depths, "--depths");
  std::vector<int> ls = o.ls.empty() ? std::vector<int>{0, 1, 2, 4, 8, 16, 32} : parse_int_list(o.ls, "--ls");
  int circuits = o.circuits, shots = o.shots;
  std::string suite = o.suite;
  std::vector<CBConfig> configs;
  if (!o.config.empty()) {
    Json j = read_json_file(o.config);
    if (j.contains("configs")) {
      for (const Json& cj : j.at("configs")) {
        CBConfig cfg = config_from_json(cj, gs.n);
        if (c.seed_set) cfg.seed = c.seed;
        if (!o.engine.empty()) cfg.engine = engine;
        configs.push_back(std::move(cfg));
      }
      return configs;
    }
    if (j.contains("suite")) suite = j.at("suite").get<std::string>();
    if (j.contains("depths")) depths = j.at("depths").get<std::vector<int>>();
    if (j.contains("ls")) ls = j.at("ls").get<std::vector<int>>();
    if (j.contains("circuits")) circuits = j.at("circuits").get<int>();
    if (j.contains("shots")) shots = j.at("shots").get<int>();
  }
  if (suite != "learnable" && suite != "intercept" && suite != "both" && suite != "standard") {
    throw ParseError("unknown suite '" + suite + "' (learnable, standard, intercept, both)");
  }
  if (suite == "learnable" || suite == "standard" || suite == "both") {
    SuiteOptions so;
    so.depths = depths;
    so.circuits = circuits;
    so.shots = shots;
    so.seed = c.seed;
    so.engine = engine;
    so.complete = suite != "standard";
    configs = plan_learnable_suite(gs, so);
  }
  if (suite == "intercept" || suite == "both") {
    for (const CliffordGate& g : gs.gates) configs.push_back(plan_intercept(gs, g.name(), ls, circuits, shots, c.seed, engine));
  }
  return configs;
}

CBDataset simulate(const GateSet& gs, const Noise& noise, const SimOptions& o, const Common& c) {
  EngineKind kind = o.engine.empty() ? (noise.cptp ? EngineKind::kPtmDense : EngineKind::kPauliFast)
                                     : engine_from_string(o.engine);
  std::unique_ptr<Engine> engine = make_engine(gs, noise, kind);
  std::vector<CBConfig> configs = build_configs(gs, o, c, kind);
  try {
    CBDataset ds = run_suite(gs, *engine, configs);
    ds.seed = c.seed;
    return ds;
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
}

int cmd_simulate(const Common& c, const SimOptions& o, std::ostream& out) {
  GateSet gs = load_gate_set(c.gateset);
  Noise noise = load_noise(o.noise, gs);
  CBDataset ds = simulate(gs, noise, o, c);
  ensure_out(c);
  if (c.wants("json")) write_json(c, "dataset.json", dataset_to_json(ds));
  if (c.wants("csv")) write_text_file(c.path("dataset.csv"), dataset_to_csv(ds));
  out << "configs=" << ds.configs.size() << " records=" << ds.records.size() << " engine=" << ds.engine
      << " seed=" << ds.seed << "\n";
  return kExitOk;
}

// ---- fit ----

struct Analysis {
  std::vector<DecayFit> fits;
  std::vector<Observation> obs;
  LearnableEstimates est;
  std::vector<InterceptEstimate> intercepts;
  double max_rate_se = 0.0;
};

Analysis analyse(const CBDataset& ds, const PatternGraph& g, const FitOptions& fo) {
  Analysis a;
  a.fits = fit_all(ds, fo);
  a.obs = observations_from_fits(a.fits, ds, g);
  a.est = reconstruct_learnable(a.obs, g);
  a.intercepts = intercept_estimates(ds, fo);
  for (const DecayFit& f : a.fits) {
    if (f.fittable && f.key.protocol != Protocol::kIntercept) a.max_rate_se = std::max(a.max_rate_se, f.rate_se);
  }
  return a;
}

void write_fit_outputs(const Common& c, const PatternGraph& g, const CBDataset& ds, const Analysis& a) {
  if (c.wants("json")) {
    write_json(c, "fits.json", Json{{"seed", ds.seed}, {"fits", fits_to_json(a.fits)}});
    Json est = estimates_to_json(g, a.est);
    est["seed"] = ds.seed;
    write_json(c, "estimates.json", est);
    if (!a.intercepts.empty()) {
      Json arr = Json::array();
      for (const InterceptEstimate& e : a.intercepts) arr.push_back(intercept_to_json(e));
      write_json(c, "intercept.json", Json{{"seed", ds.seed}, {"estimates", arr}});
    }
  }
  std::vector<std::string> labels;
  std::vector<double> values, sigmas;
  for (size_t k = 0; k < a.est.basis.size(); ++k) {
    const bool trivial = a.est.basis[k].vec.size() == 1 && g.pauli_of(a.est.basis[k].vec[0].first) == 0;
    if (!a.est.identified[k] || trivial) continue;
    const double v = std::exp(a.est.values(static_cast<Eigen::Index>(k)));
    labels.push_back(a.est.basis[k].text);
    values.push_back(v);
    sigmas.push_back(v * a.est.sigma(k));
  }
  if (c.wants("csv")) {
    write_text_file(c.path("decays.csv"), decay_csv(a.fits));
    std::ostringstream os;
    os << "functional,value,sigma\n";
    for (size_t i = 0; i < labels.size(); ++i) {
      os << '"' << labels[i] << "\"," << format_double(values[i]) << ',' << format_double(sigmas[i]) << '\n';
    }
    write_text_file(c.path("fidelities.csv"), os.str());
  }
  if (c.wants("svg")) {
    std::vector<svg::Series> series;
    for (const DecayFit& f : a.fits) {
      if (!f.fittable || series.size() >= 8) continue;
      svg::Series s{f.key.str(), {}, {}, {}, true, false};
      for (const DepthPoint& p : f.points) {
        s.x.push_back(p.x);
        s.y.push_back(p.mean);
        s.err.push_back(p.se);
      }
      series.push_back(std::move(s));
    }
    write_text_file(c.path("decays.svg"), svg::line_plot("CB decays", "depth", "mean", series));
    write_text_file(c.path("fidelities.svg"), svg::bar_chart("Learnable fidelities", labels, values, sigmas));
  }
}

int cmd_fit(const Common& c, const std::string& dataset, bool nonlinear, std::ostream& out, std::ostream& err) {
  GateSet gs = load_gate_set(c.gateset);
  if (dataset.empty()) throw ParseError("--dataset is required");
  CBDataset ds = dataset_from_json(read_json_file(dataset));
  PatternGraph g(gs);
  FitOptions fo;
  fo.nonlinear = nonlinear;
  Analysis a = analyse(ds, g, fo);
  ensure_out(c);
  write_fit_outputs(c, g, ds, a);
  for (const DecayFit& f : a.fits) {
    if (!f.fittable) err << "warning: " << f.key.str() << " not fittable: " << f.reason << "\n";
  }
  if (!a.est.complete) {
    err << "warning: the data constrain " << a.est.rank << " of " << a.est.needed
        << " learnable directions; add interleaved or cycle CB (simulate --suite learnable) for:\n";
    for (const std::string& m : a.est.missing) err << "  " << m << "\n";
  }
  out << "fits=" << a.fits.size() << " rank=" << a.est.rank << "/" << a.est.needed << " chi2=" << a.est.chi2
      << " dof=" << a.est.dof << "\n";
  return kExitOk;
}

// ---- feasible ----

struct FeasibleCli {
  std::string dataset;
  std::string noise;  // optional ground truth to mark
  double eps = -1.0;
  std::string coords;
  int grid = 401 * 401;
};

int write_region(const Common& c, const PatternGraph& g, const FeasibleRegion& r, const std::vector<double>* truth,
                 uint64_t seed, std::ostream& out, std::ostream& err) {
  Json j = region_to_json(g, r);
  j["seed"] = seed;
  if (truth) {
    j["truth"] = *truth;
    j["truth_inside"] = r.contains(*truth);
  }
  if (c.wants("json")) write_json(c, "region.json", j);
  if (r.empty) {
    err << "feasible region is empty at eps = " << r.eps << "; the smallest eps with a nonempty region is " << r.min_eps
        << "\n";
    return kExitInfeasible;
  }
  if (c.wants("csv")) write_text_file(c.path("boundary.csv"), region_boundary_csv(r));
  if (c.wants("svg") && r.axes.size() == 2) {
    std::vector<std::pair<double, double>> boundary, marks;
    for (const auto& p : r.boundary) boundary.emplace_back(p[0], p[1]);
    if (truth) marks.emplace_back((*truth)[0], (*truth)[1]);
    std::vector<unsigned char> mask(r.mask.begin(), r.mask.end());
    write_text_file(c.path("region.svg"),
                    svg::region_plot("Feasible region", r.coord_names[0], r.coord_names[1], r.axes[0].lo, r.axes[0].hi,
                                     r.axes[1].lo, r.axes[1].hi, r.points_per_axis, mask, boundary, marks));
  }
  out << "eps=" << r.eps << " rectangular=" << (r.rectangular ? "yes" : "no");
  for (size_t i = 0; i < r.axes.size(); ++i) {
    const uint64_t e = r.fidelity_coords ? r.coord_edges[i] : 0;
    if (r.fidelity_coords) {
      out << " " << r.coord_names[i] << "=[" << r.lambda_intervals[e].lo << ", " << r.lambda_intervals[e].hi << "]";
    }
  }
  if (truth) out << " truth_inside=" << (r.contains(*truth) ? "yes" : "no");
  out << "\n";
  return kExitOk;
}

int cmd_feasible(const Common& c, const FeasibleCli& o, std::ostream& out, std::ostream& err) {
  GateSet gs = load_gate_set(c.gateset);
  if (o.dataset.empty()) throw ParseError("--dataset is required");
  CBDataset ds = dataset_from_json(read_json_file(o.dataset));
  PatternGraph g(gs);
  Analysis a = analyse(ds, g, {});
  if (!a.est.complete) {
    throw ValidationFailure("the dataset does not cover every learnable direction (" + std::to_string(a.est.rank) + "/" +
                            std::to_string(a.est.needed) + "); run simulate --suite learnable first");
  }
  FeasibleOptions fo;
  fo.eps = o.eps >= 0.0 ? o.eps : a.max_rate_se;
  fo.grid_points = o.grid;
  if (!o.coords.empty()) {
    std::stringstream ss(o.coords);
    std::string item;
    while (std::getline(ss, item, ',')) fo.coordinates.push_back(item);
  }
  FeasibleRegion r;
  try {
    r = feasible_region(a.est.point, g, fo);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  std::optional<std::vector<double>> truth;
  if (!o.noise.empty()) {
    Noise noise = load_noise(o.noise, gs);
    std::vector<double> l = flatten_log_fidelities(noise.twirled(gs), gs);
    truth = r.empty ? std::vector<double>{} : r.coordinates_of(Eigen::Map<Eigen::VectorXd>(l.data(), static_cast<Eigen::Index>(l.size())));
  }
  ensure_out(c);
  return write_region(c, g, r, truth && !r.empty ? &*truth : nullptr, ds.seed, out, err);
}

// ---- gauge-check ----

struct GaugeCli {
  std::string noise;
  std::string noise2;
  std::string gauge;
  int trials = 200;
};

GaugeTransform with_default_eta(GaugeTransform t, const NoiseModel& m) {
  if (t.kind == GaugeTransform::Kind::kComposite) {
    for (GaugeTransform& p : t.parts) p = with_default_eta(p, m);
  } else if (std::isnan(t.eta)) {
    // Halfway to the upper edge of the window (1/(1+pmin), 1+pmin).
    t.eta = 0.5 * (1.0 + gauge_window(m).second);
  }
  return t;
}

int cmd_gauge_check(const Common& c, const GaugeCli& o, std::ostream& out) {
  GateSet gs = load_gate_set(c.gateset);
  NoiseModel m1 = load_noise(o.noise, gs).twirled(gs);
  NoiseModel m2;
  Json gauge_json;
  if (!o.gauge.empty()) {
    if (!o.noise2.empty()) throw ParseError("give either --gauge or --noise2, not both");
    Json j = read_json_file(o.gauge);
    GaugeTransform t = with_default_eta(gauge_from_json(j, gs.n), m1);
    gauge_json = gauge_to_json(t);
    try {
      m2 = apply_gauge(m1, t, gs);
    } catch (const std::invalid_argument& e) {
      throw ValidationFailure(e.what());
    }
  } else if (!o.noise2.empty()) {
    m2 = load_noise(o.noise2, gs).twirled(gs);
  } else {
    throw ParseError("gauge-check needs --gauge or --noise2");
  }
  IndistinguishabilityReport r;
  try {
    r = certify_indistinguishable(m1, m2, gs, o.trials, c.seed);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  Json j = indistinguishability_to_json(r);
  j["seed"] = c.seed;
  j["trials"] = o.trials;
  if (!gauge_json.is_null()) j["gauge"] = gauge_json;
  ensure_out(c);
  if (c.wants("json")) write_json(c, "gauge_check.json", j);
  if (!gauge_json.is_null() && c.wants("json")) write_json(c, "gauged_model.json", noise_model_to_json(m2));
  out << (r.indistinguishable() ? "indistinguishable" : "distinguishable") << " max_deviation=" << r.max_deviation
      << " experiments=" << r.experiments << "\n";
  return r.indistinguishable() ? kExitOk : kExitValidation;
}

// ---- report ----

int cmd_report(const Common& c, const SimOptions& so, double eps, std::ostream& out, std::ostream& err) {
  GateSet gs = load_gate_set(c.gateset);
  Noise noise = load_noise(so.noise, gs);
  PatternGraph g(gs);
  LearnableReport rep = learnable_basis_report(g);
  ensure_out(c);
  if (c.wants("json")) write_json(c, "report.json", report_to_json(g, rep));
  if (c.wants("md")) write_text_file(c.path("report.md"), report_markdown(g, rep));
  if (c.wants("dot")) write_text_file(c.path("graph.dot"), graph_dot(g));

  SimOptions sim = so;
  if (sim.suite == "learnable" && gs.n <= dense::kMaxDenseQubits) sim.suite = "both";
  CBDataset ds = simulate(gs, noise, sim, c);
  if (c.wants("json")) write_json(c, "dataset.json", dataset_to_json(ds));
  if (c.wants("csv")) write_text_file(c.path("dataset.csv"), dataset_to_csv(ds));

  Analysis a = analyse(ds, g, {});
  write_fit_outputs(c, g, ds, a);

  NoiseModel truth_model = noise.twirled(gs);
  std::vector<double> l_true = flatten_log_fidelities(truth_model, gs);
  Eigen::Map<Eigen::VectorXd> l_map(l_true.data(), static_cast<Eigen::Index>(l_true.size()));

  std::ostringstream md;
  md << "# Noise learnability report\n\n";
  md << "Gate set: ";
  for (size_t i = 0; i < gs.gates.size(); ++i) md << (i ? ", " : "") << gs.gates[i].name();
  md << " (n = " << gs.n << "), seed " << c.seed << ", engine " << ds.engine << ".\n\n";
  md << "| quantity | value |\n|---|---|\n";
  md << "| fidelities |Lambda| | " << rep.num_edges << " |\n| components | " << rep.num_components << " |\n| UDF | "
     << rep.udf << " |\n| LDF | " << rep.ldf << " |\n| records | " << ds.records.size() << " |\n| learnable rank | "
     << a.est.rank << " / " << a.est.needed << " |\n\n";
  md << "## Learnable fidelity estimates\n\n| functional | estimate | sigma | truth |\n|---|---|---|---|\n";
  for (size_t k = 0; k < a.est.basis.size(); ++k) {
    const BasisElement& b = a.est.basis[k];
    if (b.vec.size() == 1 && g.pauli_of(b.vec[0].first) == 0) continue;
    double truth = 0.0;
    for (const auto& [e, coeff] : b.vec) truth += coeff * l_true[e];
    md << "| exp(" << b.text << ") | ";
    if (a.est.identified[k]) {
      const double v = std::exp(a.est.values(static_cast<Eigen::Index>(k)));
      md << v << " | " << v * a.est.sigma(k);
    } else {
      md << "not identified | ";
    }
    md << " | " << std::exp(truth) << " |\n";
  }
  int code = kExitOk;
  if (a.est.complete) {
    FeasibleOptions fo;
    fo.eps = eps >= 0.0 ? eps : a.max_rate_se;
    FeasibleRegion r = feasible_region(a.est.point, g, fo);
    std::vector<double> truth = r.empty ? std::vector<double>{} : r.coordinates_of(l_map);
    code = write_region(c, g, r, r.empty ? nullptr : &truth, ds.seed, out, err);
    md << "\n## Feasible region\n\n";
    if (r.empty) {
      md << "Empty at eps = " << r.eps << "; smallest workable eps " << r.min_eps << ".\n";
    } else {
      md << "eps = " << r.eps << ", rectangular: " << (r.rectangular ? "yes" : "no")
         << ", true model inside: " << (r.contains(truth) ? "yes" : "no") << ".\n\n";
      md << "| fidelity | lo | hi | truth |\n|---|---|---|---|\n";
      for (uint64_t e = 0; e < g.num_edges(); ++e) {
        if (!r.constrained[e] && is_learnable(g, to_dense({{e, 1.0}}, g.num_edges())).learnable) continue;
        md << "| " << g.edge_name(e) << " | " << r.lambda_intervals[e].lo << " | " << r.lambda_intervals[e].hi << " | "
           << std::exp(l_true[e]) << " |\n";
      }
    }
  } else {
    md << "\nThe suite did not reach every learnable direction; missing:\n\n";
    for (const std::string& m : a.est.missing) md << "- " << m << "\n";
  }
  if (!a.intercepts.empty()) {
    md << "\n## Intercept CB\n\n| gate | a | b | estimate | sigma | truth lambda_a |\n|---|---|---|---|---|---|\n";
    for (const InterceptEstimate& e : a.intercepts) {
      const double truth = truth_model.gate(e.gate).lambda(PauliOp::from_str(e.pauli).index());
      md << "| " << e.gate << " | " << e.pauli << " | " << e.image << " | ";
      if (e.ok) {
        md << e.value << " | " << e.sigma;
      } else {
        md << "n/a | ";
      }
      md << " | " << truth << " |\n";
    }
  }
  if (c.wants("md")) write_text_file(c.path("summary.md"), md.str());
  out << "report written to " << c.out << "\n";
  return code;
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--gateset", c.gateset, "gate-set JSON file or built-in name (cnot, swap, cz, cnot+swap, cnot3ring, circ3)")
      ->required();
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--format", c.formats, "output formats among json, csv, md, dot, svg (default: all)")->delimiter(',');
  if (with_seed) sub->add_option("--seed", c.seed, "RNG seed");
}

void add_sim_options(CLI::App* sub, SimOptions& s) {
  sub->add_option("--config", s.config, "run config JSON: {\"configs\": [...]} or suite parameters");
  sub->add_option("--engine", s.engine, "pauli_fast or ptm_dense (default by noise kind)");
  sub->add_option("--suite", s.suite, "learnable, standard, intercept or both");
  sub->add_option("--depths", s.depths, "comma-separated CB depths");
  sub->add_option("--ls", s.ls, "comma-separated intercept repetition counts");
  sub->add_option("--circuits", s.circuits, "random circuits per depth");
  sub->add_option("--shots", s.shots, "shots per circuit; 0 records exact expectations");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pauli noise learnability toolkit", "plearn"};
  app.require_subcommand(1);
  Common c;
  SimOptions sim;
  FeasibleCli feas;
  GaugeCli gauge;
  std::string dataset;
  bool nonlinear = false;
  double report_eps = -1.0;

  CLI::App* analyze = app.add_subcommand("analyze", "learnable-basis report of a gate set");
  add_common(analyze, c, false);

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "simulate cycle benchmarking");
  add_common(simulate_cmd, c, true);
  simulate_cmd->add_option("--noise", sim.noise, "noise file, or none | ad:G[:MEAS[:SP]] | depol:Q[:MEAS[:SP]]");
  add_sim_options(simulate_cmd, sim);

  CLI::App* fit = app.add_subcommand("fit", "fit decays and reconstruct learnable functionals");
  add_common(fit, c, false);
  fit->add_option("--dataset", dataset, "dataset JSON")->required();
  fit->add_flag("--nonlinear", nonlinear, "refine fits with Gauss-Newton");

  CLI::App* feasible = app.add_subcommand("feasible", "feasible region of the gauge parameters");
  add_common(feasible, c, false);
  feasible->add_option("--dataset", feas.dataset, "dataset JSON")->required();
  feasible->add_option("--eps", feas.eps, "slack on the error rates (default: largest bootstrap sigma)");
  feasible->add_option("--coords", feas.coords, "comma-separated fidelity names used as coordinates");
  feasible->add_option("--grid", feas.grid, "total grid points");
  feasible->add_option("--noise", feas.noise, "ground-truth noise to locate in the region");

  CLI::App* gauge_cmd = app.add_subcommand("gauge-check", "certify that two noise models are indistinguishable");
  add_common(gauge_cmd, c, true);
  gauge_cmd->add_option("--noise", gauge.noise, "noise model")->required();
  gauge_cmd->add_option("--gauge", gauge.gauge, "gauge JSON applied to --noise");
  gauge_cmd->add_option("--noise2", gauge.noise2, "second noise model");
  gauge_cmd->add_option("--trials", gauge.trials, "random experiments");

  CLI::App* report = app.add_subcommand("report", "analysis, simulation, fitting and feasible region");
  add_common(report, c, true);
  report->add_option("--noise", sim.noise, "noise file or shorthand")->required();
  add_sim_options(report, sim);
  report->add_option("--eps", report_eps, "feasible-region slack");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitParse;
  }
  for (CLI::App* sub : {simulate_cmd, gauge_cmd, report}) {
    if (sub->parsed() && sub->count("--seed")) c.seed_set = true;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(c, out);
    if (simulate_cmd->parsed()) return cmd_simulate(c, sim, out);
    if (fit->parsed()) return cmd_fit(c, dataset, nonlinear, out, err);
    if (feasible->parsed()) return cmd_feasible(c, feas, out, err);
    if (gauge_cmd->parsed()) return cmd_gauge_check(c, gauge, out);
    if (report->parsed()) return cmd_report(c, sim, report_eps, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationFailure& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace plearn::cli
