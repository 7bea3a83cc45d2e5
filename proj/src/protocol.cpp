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

#include "qdc/protocol.hpp"

#include <algorithm>

namespace qdc {

void Message::validate() const {
    for (int bit : {a, b, c}) {
        if (bit != 0 && bit != 1) throw Error("message bits must be 0 or 1");
    }
}

std::string Message::label() const {
    return std::string{static_cast<char>('0' + a), static_cast<char>('0' + b),
                       static_cast<char>('0' + c)};
}

Message Message::from_index(int index) {
    if (index < 0 || index > 7) throw Error("message index out of range 0..7");
    return {(index >> 2) & 1, (index >> 1) & 1, index & 1};
}

Message Message::parse(const std::string& bob, const std::string& claire) {
    const auto bit = [](char ch, const char* who) {
        if (ch != '0' && ch != '1') throw Error(std::string("bad bit in ") + who);
        return ch - '0';
    };
    if (bob.size() != 2) throw Error("bob takes exactly two bits (phase, flip)");
    if (claire.size() != 1) throw Error("claire takes exactly one bit");
    return {bit(bob[0], "bob"), bit(bob[1], "bob"), bit(claire[0], "claire")};
}

std::string bob_operator(const Message& m) {
    m.validate();
    if (m.a == 0) return m.b == 0 ? "I" : "sx";
    return m.b == 0 ? "sz" : "isy";
}

std::string claire_operator(const Message& m) {
    m.validate();
    return m.c == 0 ? "I" : "sx";
}

std::vector<GateOp> encode_gates(const Message& m) {
    m.validate();
    std::vector<GateOp> gates;
    if (m.a == 0 && m.b == 1) gates.emplace_back(gate::X{2});
    if (m.a == 1 && m.b == 0) gates.emplace_back(gate::Z{2});
    if (m.a == 1 && m.b == 1) gates.emplace_back(gate::IY{2});
    if (m.c == 1) gates.emplace_back(gate::X{3});
    return gates;
}

std::vector<GateOp> ghz_prep_gates() { return {gate::H{1}, gate::CNOT{1, 2}, gate::CNOT{2, 3}}; }

std::vector<GateOp> decode_gates() { return {gate::CNOT{2, 3}, gate::CNOT{1, 2}, gate::H{1}}; }

int readout_index(const Message& m) {
    m.validate();
    return m.a * 4 + m.b * 2 + (m.b ^ m.c);
}

Message message_from_readout(const std::string& label) {
    if (label.size() != 3) throw Error("readout label must have three bits");
    for (char ch : label) {
        if (ch != '0' && ch != '1') throw Error("readout label must be binary");
    }
    const int m2 = label[1] - '0';
    return {label[0] - '0', m2, m2 ^ (label[2] - '0')};
}

Schedule ghz_prep(const ProtocolSetup& setup) {
    return compile(ghz_prep_gates(), setup.couplings, setup.timing);
}

Schedule encode(const Message& m, const TimingModel& timing) {
    return compile(encode_gates(m), CouplingData{}, timing);
}

Schedule decode(const ProtocolSetup& setup) {
    return compile(decode_gates(), setup.couplings, setup.timing);
}

QdcReport run_qdc(const Message& m, const SimMode& mode, const ProtocolSetup& setup) {
    m.validate();
    const Schedule prep = ghz_prep(setup);
    const Schedule enc = encode(m, setup.timing);
    const Schedule dec = decode(setup);

    const auto& J = setup.couplings;
    const RunResult after_prep = run(prep, PureState::basis(0), mode, J, setup.freqs);
    const RunResult after_enc = run(enc, after_prep.final, mode, J, setup.freqs);
    const RunResult after_dec = run(dec, after_enc.final, mode, J, setup.freqs);

    QdcReport r;
    r.message = m;
    r.encoded_fidelity = fidelity(phi_state(m.a, m.b, m.c), after_enc.final);
    r.success_probability = fidelity(PureState::basis(readout_index(m)), after_dec.final);
    r.final_fidelity = r.success_probability;
    r.histogram = measure_all(after_dec.final, setup.shots, setup.seed);

    const auto top = std::max_element(
        r.histogram.counts.begin(), r.histogram.counts.end(),
        [](const auto& x, const auto& y) { return x.second < y.second; });
    r.readout = top->first;
    r.decoded = message_from_readout(r.readout);
    for (const auto& [label, n] : r.histogram.counts) r.decoded_counts[message_from_readout(label).label()] += n;

    TimingBreakdown& t = r.timing;
    t.prep = after_prep.elapsed;
    t.encode = after_enc.elapsed;
    t.decode = after_dec.elapsed;
    t.measure = setup.timing.measure_time;
    t.prep_offline = setup.prep_offline;
    t.total = (setup.prep_offline ? 0.0 : t.prep) + t.encode + t.decode + t.measure;
    return r;
}

std::vector<QdcReport> exhaustive(const SimMode& mode, const ProtocolSetup& setup) {
    std::vector<QdcReport> rows;
    rows.reserve(8);
    for (int k = 0; k < 8; ++k) rows.push_back(run_qdc(Message::from_index(k), mode, setup));
    return rows;
}

}  // namespace qdc
