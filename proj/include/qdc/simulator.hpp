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

#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qdc/compiler.hpp"
#include "qdc/physics.hpp"
#include "qdc/quantum.hpp"

namespace qdc {

namespace sim {
/// Rotations are applied instantaneously and exactly.
struct Ideal {};
/// Each rotation is a finite pulse of duration theta / rabi during which
/// the Ising couplings keep acting; drive at each ion's bare frequency.
struct ConditionalDrive {
    double rabi = 0.0;  // rad/s
};
}  // namespace sim

struct SimMode {
    std::variant<sim::Ideal, sim::ConditionalDrive> kind;
    /// Keep the single-ion w_i terms (lab frame) instead of the interaction picture.
    bool include_qubit_terms = false;

    static SimMode ideal() { return {sim::Ideal{}, false}; }
    static SimMode drive(double rabi) { return {sim::ConditionalDrive{rabi}, false}; }
    bool is_ideal() const { return std::holds_alternative<sim::Ideal>(kind); }
    void validate() const;
};

struct TraceEntry {
    std::size_t op_index = 0;
    PureState state;
};

struct RunResult {
    PureState final;
    std::vector<TraceEntry> trace;
    std::vector<std::size_t> measure_points;  // indices of Measure ops
    double elapsed = 0.0;                     // s
};

/// Exact propagator of one drive pulse on `ion` in ConditionalDrive mode:
/// exp(-i tau (H_couplings + rabi/2 (cos phi X - sin phi Y))), tau = theta / rabi,
/// in computational order. Without couplings it reduces to pulse_rotation().
Unitary drive_pulse_unitary(int ion, double theta, double phi, double rabi, const CouplingData& J);

/// Fidelity between a finite drive pulse and the instantaneous rotation
/// it stands for, evaluated on `probe` (all spectator configurations are
/// populated by the default uniform superposition).
double pulse_fidelity(int ion, double theta, double phi, double rabi, const CouplingData& J);
double pulse_fidelity(int ion, double theta, double phi, double rabi, const CouplingData& J,
                      const PureState& probe);

/// Matrix of a single op under `mode` (Measure is rejected).
Unitary op_unitary(const PulseOp& op, const SimMode& mode, const CouplingData& J,
                   const QubitFrequencies* freqs);

/// Pass nullptr for `freqs` unless mode.include_qubit_terms is set.
RunResult run(const Schedule& s, const PureState& initial, const SimMode& mode,
              const CouplingData& J, const QubitFrequencies* freqs = nullptr,
              bool keep_trace = false);

/// Explicit product of per-op matrices; the schedule must not contain Measure.
Unitary oracle_unitary(const Schedule& s, const SimMode& mode, const CouplingData& J,
                       const QubitFrequencies* freqs = nullptr);

}  // namespace qdc
