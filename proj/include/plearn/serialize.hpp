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

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plearn/basis_report.hpp"
#include "plearn/cb_sim.hpp"
#include "plearn/channel.hpp"
#include "plearn/clifford.hpp"
#include "plearn/estimator.hpp"
#include "plearn/gauge.hpp"

namespace plearn {

using Json = nlohmann::ordered_json;

/// Malformed input; the message carries the source and line when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text, reporting line and column on syntax errors.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Gates: {"n", "name", "x_images", "z_images"[, "support"]} or
// {"library": "CNOT", "support": [0, 1][, "name"]} embedded into n qubits.
Json gate_to_json(const CliffordGate& g);
CliffordGate gate_from_json(const Json& j, int n = -1);
/// {"n", "gates": [...]}, or a single gate object.
GateSet gate_set_from_json(const Json& j);
Json gate_set_to_json(const GateSet& gs);
/// Built-in gate sets: cnot, swap, cz, cnot+swap, cnot3ring, circ3.
GateSet gate_set_preset(const std::string& name);
std::vector<std::string> gate_set_presets();

Json channel_to_json(const PauliChannel& ch, bool error_rates = false);
PauliChannel channel_from_json(const Json& j);

/// {"kind": "pauli", "n", "sp", "meas", "gates": {name: channel}}.
Json noise_model_to_json(const NoiseModel& m);
NoiseModel noise_model_from_json(const Json& j);
/// {"kind": "cptp", "n", "gates": {name: [components]}, "sp_flip", "meas_flip"}.
Json cptp_spec_to_json(const CPTPNoiseSpec& s);
CPTPNoiseSpec cptp_spec_from_json(const Json& j);
bool is_cptp_spec(const Json& j);

/// A missing "eta" parses as NaN.
Json gauge_to_json(const GaugeTransform& t);
GaugeTransform gauge_from_json(const Json& j, int n);

Json config_to_json(const CBConfig& c);
/// "interleave" is a gate object or a list of single-qubit gate names.
CBConfig config_from_json(const Json& j, int n);

Json dataset_to_json(const CBDataset& ds);
CBDataset dataset_from_json(const Json& j);
std::string dataset_to_csv(const CBDataset& ds);

Json fit_to_json(const DecayFit& f);
Json fits_to_json(const std::vector<DecayFit>& fits);
std::string decay_csv(const std::vector<DecayFit>& fits);

Json report_to_json(const PatternGraph& g, const LearnableReport& r);
Json estimates_to_json(const PatternGraph& g, const LearnableEstimates& e);
Json intercept_to_json(const InterceptEstimate& e);
Json region_to_json(const PatternGraph& g, const FeasibleRegion& r);
std::string region_boundary_csv(const FeasibleRegion& r);
Json sp_bound_to_json(const SPBound& b);
Json indistinguishability_to_json(const IndistinguishabilityReport& r);

/// Shortest round-tripping decimal form.
std::string format_double(double v);

}  // namespace plearn
