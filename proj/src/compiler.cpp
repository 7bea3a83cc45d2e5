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

#include "qdc/compiler.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace qdc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kHalfPi = kPi / 2.0;
// Non-negative stand-in for a -pi/2 rotation; equal to it exactly since
// rotations are 4 pi periodic.
constexpr double kMinusHalfPi = 7.0 * kPi / 2.0;

void check_ion(int ion) {
    if (ion < 1 || ion > kNumIons) {
        throw Error("ion index " + std::to_string(ion) + " out of range 1..3");
    }
}

pulse::Rotate rot(int ion, double theta, double phi) { return {ion, wrap_angle(theta), phi}; }

// Pulse templates, time ordered. Paulis are computational-basis matrices.
void emit_plus_quarter_y(std::vector<PulseOp>& ops, int ion) {  // e^{+i pi/4 Y}
    ops.push_back(rot(ion, kHalfPi, kHalfPi));
}
void emit_minus_quarter_y(std::vector<PulseOp>& ops, int ion) {  // e^{-i pi/4 Y}
    ops.push_back(rot(ion, kMinusHalfPi, kHalfPi));
}
// e^{-i alpha/2 Z} as a Y-conjugated X rotation; alpha = -pi/2 gives e^{+i pi/4 Z}.
void emit_rz(std::vector<PulseOp>& ops, int ion, double alpha) {
    ops.push_back(rot(ion, kHalfPi, kHalfPi));
    ops.push_back(rot(ion, -alpha, 0.0));
    ops.push_back(rot(ion, kMinusHalfPi, kHalfPi));
}

Unitary pauli(char p) {
    Unitary m(2, 2);
    switch (p) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw Error(std::string("unknown Pauli '") + p + "'");
    }
    return m;
}

Unitary kron3(const Unitary& a, const Unitary& b, const Unitary& c) {
    Unitary out(8, 8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            out(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
        }
    }
    return out;
}

}  // namespace

std::string to_string(const GateOp& g) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const gate::H& x) { os << "h " << x.ion; },
                   [&](const gate::X& x) { os << "x " << x.ion; },
                   [&](const gate::IY& x) { os << "iy " << x.ion; },
                   [&](const gate::Z& x) { os << "z " << x.ion; },
                   [&](const gate::Rz& x) { os << "rz " << x.ion << ' ' << x.alpha; },
                   [&](const gate::CNOT& x) { os << "cnot " << x.control << ' ' << x.target; },
                   [&](const gate::Barrier&) { os << "barrier"; },
               },
               g);
    return os.str();
}

GateOp parse_gate(const std::string& text) {
    std::istringstream is(text);
    std::string name;
    is >> name;
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    const auto read_int = [&](const char* what) {
        int v = 0;
        if (!(is >> v)) throw Error("gate '" + text + "': missing or bad " + what);
        return v;
    };
    GateOp g;
    if (name == "h") {
        g = gate::H{read_int("ion")};
    } else if (name == "x") {
        g = gate::X{read_int("ion")};
    } else if (name == "iy") {
        g = gate::IY{read_int("ion")};
    } else if (name == "z") {
        g = gate::Z{read_int("ion")};
    } else if (name == "rz") {
        const int ion = read_int("ion");
        double alpha = 0.0;
        if (!(is >> alpha)) throw Error("gate '" + text + "': missing or bad angle");
        g = gate::Rz{ion, alpha};
    } else if (name == "cnot") {
        const int c = read_int("control");
        g = gate::CNOT{c, read_int("target")};
    } else if (name == "barrier") {
        g = gate::Barrier{};
    } else {
        throw Error("unknown gate '" + text + "'");
    }
    std::string rest;
    if (is >> rest) throw Error("gate '" + text + "': trailing text '" + rest + "'");
    validate(g);
    return g;
}

void validate(const GateOp& g) {
    std::visit(overloaded{
                   [](const gate::CNOT& x) {
                       check_ion(x.control);
                       check_ion(x.target);
                       if (x.control == x.target) throw Error("cnot control and target must differ");
                   },
                   [](const gate::Barrier&) {},
                   [](const auto& x) { check_ion(x.ion); },
               },
               g);
}

TimingModel TimingModel::fixed(double pulse_time, double measure_time) {
    TimingModel t;
    t.pulse_time = pulse_time;
    t.rabi.reset();
    t.measure_time = measure_time;
    t.validate();
    return t;
}

TimingModel TimingModel::from_rabi(double rabi, double measure_time) {
    TimingModel t;
    t.pulse_time.reset();
    t.rabi = rabi;
    t.measure_time = measure_time;
    t.validate();
    return t;
}

void TimingModel::validate() const {
    if (pulse_time.has_value() == rabi.has_value()) {
        throw Error("timing: exactly one of pulse_time and rabi must be set");
    }
    if (pulse_time && !(*pulse_time > 0.0)) throw Error("timing: pulse_time must be positive");
    if (rabi && !(*rabi > 0.0)) throw Error("timing: rabi must be positive");
    if (!(measure_time > 0.0)) throw Error("timing: measure_time must be positive");
}

double TimingModel::rotate_duration(double theta) const {
    return pulse_time ? *pulse_time : theta / *rabi;
}

double TimingModel::duration(const PulseOp& op) const {
    return std::visit(overloaded{
                          [&](const pulse::Rotate& r) { return rotate_duration(r.theta); },
                          [](const pulse::Wait& w) { return w.t; },
                          [&](const pulse::Measure&) { return measure_time; },
                      },
                      op);
}

void Schedule::append(const Schedule& other) {
    const std::size_t shift = ops.size();
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
    for (auto a : other.annotations) {
        a.begin += shift;
        a.end += shift;
        annotations.push_back(std::move(a));
    }
}

DurationReport duration(const Schedule& s) {
    DurationReport r;
    for (const auto& op : s.ops) r.total += s.timing.duration(op);
    for (const auto& a : s.annotations) {
        double t = 0.0;
        for (std::size_t k = a.begin; k < a.end && k < s.ops.size(); ++k) t += s.timing.duration(s.ops[k]);
        r.per_gate.emplace_back(a.source, t);
    }
    return r;
}

double zz_evolution_time(double J) { return 7.0 * kPi / (2.0 * J); }

Schedule zz_block(int i, int j, double J_ij, const TimingModel& timing) {
    check_ion(i);
    check_ion(j);
    if (i == j) throw Error("zz_block needs two distinct ions");
    if (!(J_ij > 0.0)) {
        throw Error("no direct coupling between ions " + std::to_string(i) + " and " +
                    std::to_string(j));
    }
    const int spectator = 6 - i - j;
    const double quarter = zz_evolution_time(J_ij) / 4.0;
    Schedule s;
    s.timing = timing;
    for (int half = 0; half < 2; ++half) {
        s.ops.push_back(rot(i, kPi, 0.0));
        s.ops.push_back(rot(j, kPi, 0.0));
        s.ops.push_back(pulse::Wait{quarter});
        s.ops.push_back(rot(spectator, kPi, 0.0));
        s.ops.push_back(pulse::Wait{quarter});
    }
    return s;
}

std::vector<ProductFactor> cnot_factors(int control, int target) {
    check_ion(control);
    check_ion(target);
    if (control == target) throw Error("cnot control and target must differ");
    const auto single = [](int ion, char p) {
        std::string s = "III";
        s[static_cast<std::size_t>(ion - 1)] = p;
        return s;
    };
    std::string zz = "III";
    zz[static_cast<std::size_t>(control - 1)] = 'Z';
    zz[static_cast<std::size_t>(target - 1)] = 'Z';
    return {
        {kPi / 4, single(target, 'Y')},
        {-kPi / 4, zz},
        {kPi / 4, single(control, 'Z')},
        {kPi / 4, single(target, 'Z')},
        {-kPi / 4, single(target, 'Y')},
    };
}

Unitary factor_unitary(const ProductFactor& f) {
    if (f.paulis.size() != 3) throw Error("product factor must name three Paulis");
    const Unitary p = kron3(pauli(f.paulis[0]), pauli(f.paulis[1]), pauli(f.paulis[2]));
    return std::cos(f.coeff) * Unitary::Identity(8, 8) + Complex(0, std::sin(f.coeff)) * p;
}

Unitary ideal_gate_unitary(const GateOp& g) {
    validate(g);
    const double r = 1.0 / std::sqrt(2.0);
    Unitary m(2, 2);
    return std::visit(
        overloaded{
            [&](const gate::H& x) -> Unitary {
                m << r, r, r, -r;
                return embed_single(m, x.ion);
            },
            [&](const gate::X& x) -> Unitary { return embed_single(pauli('X'), x.ion); },
            [&](const gate::IY& x) -> Unitary {
                return embed_single(Complex(0, 1) * pauli('Y'), x.ion);
            },
            [&](const gate::Z& x) -> Unitary { return embed_single(pauli('Z'), x.ion); },
            [&](const gate::Rz& x) -> Unitary {
                m << std::exp(Complex(0, -x.alpha / 2)), 0, 0, std::exp(Complex(0, x.alpha / 2));
                return embed_single(m, x.ion);
            },
            [&](const gate::CNOT& x) -> Unitary {
                Unitary u = Unitary::Zero(8, 8);
                const int cbit = 1 << (kNumIons - x.control);
                const int tbit = 1 << (kNumIons - x.target);
                for (int in = 0; in < 8; ++in) u((in & cbit) ? (in ^ tbit) : in, in) = 1.0;
                return u;
            },
            [&](const gate::Barrier&) -> Unitary { return Unitary::Identity(8, 8); },
        },
        g);
}

Unitary ideal_program_unitary(std::span<const GateOp> gates) {
    Unitary u = Unitary::Identity(8, 8);
    for (const auto& g : gates) u = ideal_gate_unitary(g) * u;
    return u;
}

double wrap_angle(double theta) {
    constexpr double period = 4.0 * kPi;
    double w = std::fmod(theta, period);
    if (w < 0.0) w += period;
    if (w >= period) w = 0.0;
    return w;
}

Schedule compile(std::span<const GateOp> gates, const CouplingData& J, const TimingModel& timing) {
    timing.validate();
    Schedule s;
    s.timing = timing;
    for (const auto& g : gates) {
        validate(g);
        const std::size_t begin = s.ops.size();
        std::visit(overloaded{
                       [&](const gate::H& x) {
                           s.ops.push_back(rot(x.ion, kPi, 0.0));
                           emit_plus_quarter_y(s.ops, x.ion);
                       },
                       [&](const gate::X& x) { s.ops.push_back(rot(x.ion, kPi, 0.0)); },
                       [&](const gate::IY& x) { s.ops.push_back(rot(x.ion, kPi, kHalfPi)); },
                       [&](const gate::Z& x) {
                           s.ops.push_back(rot(x.ion, kPi, kHalfPi));
                           s.ops.push_back(rot(x.ion, kPi, 0.0));
                       },
                       [&](const gate::Rz& x) { emit_rz(s.ops, x.ion, x.alpha); },
                       [&](const gate::CNOT& x) {
                           const double coupling = J.between(x.control, x.target);
                           if (!(coupling > 0.0)) {
                               throw Error("cannot compile " + to_string(g) +
                                           ": no direct coupling between ions " +
                                           std::to_string(x.control) + " and " +
                                           std::to_string(x.target));
                           }
                           emit_plus_quarter_y(s.ops, x.target);
                           const Schedule zz = zz_block(x.control, x.target, coupling, timing);
                           s.ops.insert(s.ops.end(), zz.ops.begin(), zz.ops.end());
                           emit_rz(s.ops, x.control, -kHalfPi);
                           emit_rz(s.ops, x.target, -kHalfPi);
                           emit_minus_quarter_y(s.ops, x.target);
                       },
                       [](const gate::Barrier&) {},
                   },
                   g);
        s.annotations.push_back({begin, s.ops.size(), to_string(g)});
    }
    return s;
}

}  // namespace qdc
