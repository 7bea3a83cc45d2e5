// Copyright 2026 The microtrap-qdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV formats. Frequencies at this boundary are plain Hz; times are
// seconds (strings with SI suffixes such as "5us" are accepted on input).
// Angles are radians.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdc/compiler.hpp"
#include "qdc/physics.hpp"
#include "qdc/protocol.hpp"
#include "qdc/quantum.hpp"
#include "qdc/simulator.hpp"

namespace qdc {

using json = nlohmann::ordered_json;

/// A reference value the computed one is compared against.
struct Expectation {
    std::string quantity;          // "J", "J13", "mode_freqs", "epsilon_max", "neighbor_splitting"
    std::vector<double> targets;   // Hz for frequencies, dimensionless otherwise
    double factor = 10.0;          // accepted ratio either way
    std::string source;            // free text quoting where the value came from
};

struct ConfigFile {
    TrapConfig trap;
    /// Explicit couplings overriding the ones derived from the trap.
    std::optional<CouplingData> couplings;
    std::vector<Expectation> expectations;
};

/// Parses the config schema documented in README.md; errors name the field.
ConfigFile config_from_json(const json& j);
ConfigFile load_config(const std::string& path);
json config_to_json(const ConfigFile& cfg);

/// Couplings to use for compilation: the override if present, else the ones derived from the trap.
CouplingData effective_couplings(const ConfigFile& cfg);

json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);
json timing_to_json(const TimingModel& t);
TimingModel timing_from_json(const json& j);

/// Accepts ["h 1", "cnot 1 2"], [{"gate": "cnot", "control": 1, "target": 2}],
/// or either form wrapped as {"gates": [...]}.
std::vector<GateOp> gates_from_json(const json& j);

/// List of [label, re, im] triples in basis order.
json state_to_json(const PureState& s);
PureState state_from_json(const json& j);

json run_result_to_json(const RunResult& r);
json measurement_to_json(const MeasurementRecord& m);
json report_to_json(const QdcReport& r);

/// Header plus one row per report:
/// message,decoded,fidelity,t_prep,t_encode,t_decode,t_measure,t_total
std::string exhaustive_csv(const std::vector<QdcReport>& rows);

/// One field of an RFC 4180 record, quoted when needed.
std::string csv_field(const std::string& s);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

struct DeviationRow {
    std::string quantity;
    std::string unit;
    double computed = 0.0;
    double target = 0.0;
    double ratio = 0.0;   // computed / target
    double factor = 0.0;  // accepted ratio band
    bool within = false;
};

struct ParamsReport {
    ModeData modes;
    CouplingData couplings;
    AddressingReport lamb_dicke;
    double neighbor_splitting = 0.0;
    QubitFrequencies freqs;
    std::vector<DeviationRow> deviations;
};

/// Evaluates the trap and compares each quantity against the expectations.
/// J is compared under both readings of the quoted value, J / 2 pi in Hz and
/// J in rad/s.
ParamsReport params_report(const ConfigFile& cfg);
json params_to_json(const ParamsReport& r);

}  // namespace qdc
