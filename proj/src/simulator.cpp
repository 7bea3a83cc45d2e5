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

#include "qdc/simulator.hpp"

#include <cmath>

namespace qdc {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_rotate(const pulse::Rotate& r) {
    if (!(r.theta >= 0.0)) throw Error("rotation angle must be non-negative");
}

// Single-ion Hamiltonian terms 1/2 sum w_i s_i, used to move drive pulses
// back to the lab frame when qubit terms are kept.
Eigen::VectorXcd qubit_term_phases(const QubitFrequencies& freqs, double t) {
    const auto with = spin_eigenenergies(&freqs, CouplingData{});
    Eigen::VectorXcd d(8);
    for (int x = 0; x < 8; ++x) d(x) = std::exp(-kI * (with[static_cast<std::size_t>(x)].energy * t));
    return d;
}

double op_duration(const PulseOp& op, const SimMode& mode, const TimingModel& timing) {
    if (const auto* r = std::get_if<pulse::Rotate>(&op)) {
        if (const auto* d = std::get_if<sim::ConditionalDrive>(&mode.kind)) return r->theta / d->rabi;
    }
    return timing.duration(op);
}

}  // namespace

void SimMode::validate() const {
    if (const auto* d = std::get_if<sim::ConditionalDrive>(&kind)) {
        if (!(d->rabi > 0.0)) throw Error("conditional drive needs a positive rabi frequency");
    }
}

Unitary drive_pulse_unitary(int ion, double theta, double phi, double rabi, const CouplingData& J) {
    if (!(theta >= 0.0)) throw Error("rotation angle must be non-negative");
    if (!(rabi > 0.0)) throw Error("conditional drive needs a positive rabi frequency");
    const double tau = theta / rabi;

    Unitary drive(2, 2);
    drive << 0.0, 0.5 * rabi * std::exp(kI * phi),
             0.5 * rabi * std::exp(-kI * phi), 0.0;
    Unitary h = embed_single(drive, ion);
    const auto levels = spin_eigenenergies(nullptr, J);
    for (int x = 0; x < 8; ++x) h(x, x) += levels[static_cast<std::size_t>(x)].energy;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw Error("drive Hamiltonian diagonalization failed");
    Eigen::VectorXcd phases(8);
    for (int k = 0; k < 8; ++k) phases(k) = std::exp(-kI * (solver.eigenvalues()(k) * tau));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

double pulse_fidelity(int ion, double theta, double phi, double rabi, const CouplingData& J,
                      const PureState& probe) {
    const Eigen::VectorXcd ideal = embed_single(pulse_rotation(theta, phi), ion) * probe.amplitudes();
    const Eigen::VectorXcd real = drive_pulse_unitary(ion, theta, phi, rabi, J) * probe.amplitudes();
    return std::norm(ideal.dot(real));
}

double pulse_fidelity(int ion, double theta, double phi, double rabi, const CouplingData& J) {
    const PureState uniform(Eigen::VectorXcd::Constant(8, Complex(1.0 / std::sqrt(8.0), 0.0)));
    return pulse_fidelity(ion, theta, phi, rabi, J, uniform);
}

Unitary op_unitary(const PulseOp& op, const SimMode& mode, const CouplingData& J,
                   const QubitFrequencies* freqs) {
    mode.validate();
    const QubitFrequencies* lab = mode.include_qubit_terms ? freqs : nullptr;
    if (mode.include_qubit_terms && freqs == nullptr) {
        throw Error("include_qubit_terms requires qubit frequencies");
    }
    if (const auto* r = std::get_if<pulse::Rotate>(&op)) {
        check_rotate(*r);
        if (const auto* d = std::get_if<sim::ConditionalDrive>(&mode.kind)) {
            Unitary u = drive_pulse_unitary(r->ion, r->theta, r->phi, d->rabi, J);
            if (lab != nullptr) u = qubit_term_phases(*lab, r->theta / d->rabi).asDiagonal() * u;
            return u;
        }
        return embed_single(pulse_rotation(r->theta, r->phi), r->ion);
    }
    if (const auto* w = std::get_if<pulse::Wait>(&op)) return free_phase(lab, J, w->t);
    throw Error("measurement has no unitary");
}

RunResult run(const Schedule& s, const PureState& initial, const SimMode& mode, const CouplingData& J,
              const QubitFrequencies* freqs, bool keep_trace) {
    mode.validate();
    if (initial.dim() != 8) throw Error("simulator expects a three-ion state");
    if (mode.include_qubit_terms && freqs == nullptr) {
        throw Error("include_qubit_terms requires qubit frequencies");
    }
    const QubitFrequencies* lab = mode.include_qubit_terms ? freqs : nullptr;

    Eigen::VectorXcd psi = initial.amplitudes();
    RunResult result{initial, {}, {}, 0.0};
    for (std::size_t k = 0; k < s.ops.size(); ++k) {
        const PulseOp& op = s.ops[k];
        if (std::holds_alternative<pulse::Measure>(op)) {
            result.measure_points.push_back(k);
        } else if (const auto* r = std::get_if<pulse::Rotate>(&op); r != nullptr && mode.is_ideal()) {
            check_rotate(*r);
            psi = apply_single(PureState(psi), r->ion, pulse_rotation(r->theta, r->phi)).amplitudes();
        } else if (const auto* w = std::get_if<pulse::Wait>(&op)) {
            psi = free_phase_diagonal(lab, J, w->t).cwiseProduct(psi);
        } else {
            psi = op_unitary(op, mode, J, freqs) * psi;
        }
        result.elapsed += op_duration(op, mode, s.timing);
        if (keep_trace) result.trace.push_back({k, PureState(psi)});
    }
    result.final = PureState(std::move(psi));
    return result;
}

Unitary oracle_unitary(const Schedule& s, const SimMode& mode, const CouplingData& J,
                       const QubitFrequencies* freqs) {
    Unitary u = Unitary::Identity(8, 8);
    for (const auto& op : s.ops) {
        if (std::holds_alternative<pulse::Measure>(op)) {
            throw Error("oracle_unitary: schedule contains a measurement");
        }
        u = op_unitary(op, mode, J, freqs) * u;
    }
    return u;
}

}  // namespace qdc
