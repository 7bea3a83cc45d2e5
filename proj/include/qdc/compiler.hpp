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

// Gate-to-pulse lowering.
//
// A gate program (H, X, iY, Z, Rz, CNOT) is lowered onto three primitive
// pulse operations: a resonant microwave rotation of one ion, a free
// evolution under the Ising couplings, and a final measurement. CNOT is
// built from product-operator factors
//
//   CNOT(i,j) ~ e^{-i pi/4 Y_j} e^{i pi/4 Z_i} e^{i pi/4 Z_j} e^{-i pi/4 Z_i Z_j} e^{i pi/4 Y_j}
//
// where the two-body factor comes from refocused free evolution.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qdc/physics.hpp"
#include "qdc/quantum.hpp"

namespace qdc {

namespace gate {
struct H { int ion = 1; };
struct X { int ion = 1; };
struct IY { int ion = 1; };
struct Z { int ion = 1; };
struct Rz { int ion = 1; double alpha = 0.0; };
struct CNOT { int control = 1; int target = 2; };
struct Barrier {};
}  // namespace gate

using GateOp = std::variant<gate::H, gate::X, gate::IY, gate::Z, gate::Rz, gate::CNOT, gate::Barrier>;

/// Textual form: "h 1", "x 2", "iy 2", "z 2", "rz 1 0.5", "cnot 1 2", "barrier".
std::string to_string(const GateOp& g);
GateOp parse_gate(const std::string& text);
/// Throws if an ion index is outside 1..3 or a CNOT has control == target.
void validate(const GateOp& g);

namespace pulse {
struct Rotate {
    int ion = 1;
    double theta = 0.0;  // rad, >= 0
    double phi = 0.0;    // rad
    bool operator==(const Rotate&) const = default;
};
struct Wait {
    double t = 0.0;  // s, >= 0
    bool operator==(const Wait&) const = default;
};
struct Measure {
    bool operator==(const Measure&) const = default;
};
}  // namespace pulse

using PulseOp = std::variant<pulse::Rotate, pulse::Wait, pulse::Measure>;

/// Duration charged for each primitive. Exactly one of `pulse_time`
/// (fixed charge per rotation) and `rabi` (charge theta / rabi) is set.
struct TimingModel {
    std::optional<double> pulse_time = 5e-6;
    std::optional<double> rabi;
    double measure_time = 250e-6;

    static TimingModel fixed(double pulse_time, double measure_time = 250e-6);
    static TimingModel from_rabi(double rabi, double measure_time = 250e-6);

    void validate() const;
    double rotate_duration(double theta) const;
    double duration(const PulseOp& op) const;
    bool operator==(const TimingModel&) const = default;
};

/// Ops [begin, end) were emitted for gate `source`.
struct Annotation {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string source;
    bool operator==(const Annotation&) const = default;
};

struct Schedule {
    std::vector<PulseOp> ops;
    std::vector<Annotation> annotations;
    TimingModel timing;

    /// Appends `other`, shifting its annotations.
    void append(const Schedule& other);
    bool operator==(const Schedule&) const = default;
};

struct DurationReport {
    double total = 0.0;
    std::vector<std::pair<std::string, double>> per_gate;
};

/// Sums op durations under the schedule's timing model.
DurationReport duration(const Schedule& s);

/// Free-evolution time t0 = 7 pi / (2 J) of the refocused ZZ block.
double zz_evolution_time(double J);

/// Refocused e^{-i pi/4 Z_i Z_j}: four Wait(t0/4) segments with pi pulses
/// on the pair before segments 1 and 3 and on the spectator before
/// segments 2 and 4. Every single-ion term and every coupling that touches
/// the spectator accrues zero net signed time; only J_ij survives.
Schedule zz_block(int i, int j, double J_ij, const TimingModel& timing);

/// One product-operator factor exp(i * coeff * P), P a tensor product of
/// I, Y, Z over the three ions (computational-basis Paulis, Z|0> = +|0>).
struct ProductFactor {
    double coeff = 0.0;
    std::string paulis;  // e.g. "IYI"
};

/// Factors of CNOT(control, target) in application order (first applied first).
std::vector<ProductFactor> cnot_factors(int control, int target);
Unitary factor_unitary(const ProductFactor& f);

/// Exact 8x8 matrix of an abstract gate (CNOT control on |1>).
Unitary ideal_gate_unitary(const GateOp& g);
/// Product of ideal gate matrices, first gate applied first.
Unitary ideal_program_unitary(std::span<const GateOp> gates);

/// Wraps an angle into [0, 4 pi); rotations are 4 pi periodic.
double wrap_angle(double theta);

Schedule compile(std::span<const GateOp> gates, const CouplingData& J, const TimingModel& timing);

}  // namespace qdc
