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

#include "qdc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qdc {
namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw Error("config field '" + field + "': " + what);
}

double number(const json& j, const std::string& field) {
    if (!j.contains(field)) field_error(field, "missing");
    const json& v = j.at(field);
    if (!v.is_number()) field_error(field, "expected a number");
    return v.get<double>();
}

double number_or(const json& j, const std::string& field, double fallback) {
    return j.contains(field) ? number(j, field) : fallback;
}

// Accepts a number of seconds or a string with an SI suffix.
double seconds(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return parse_time(v.get<std::string>());
        } catch (const Error& e) {
            field_error(field, e.what());
        }
    }
    field_error(field, "expected seconds or a time string");
}

int ion_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw Error(std::string("schedule op: missing integer '") + key + "'");
    }
    return j.at(key).get<int>();
}

double double_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw Error(std::string("schedule op: missing number '") + key + "'");
    }
    return j.at(key).get<double>();
}

DeviationRow deviation(std::string quantity, std::string unit, double computed, double target,
                       double factor) {
    DeviationRow r{std::move(quantity), std::move(unit), computed, target, 0.0, factor, false};
    r.ratio = computed / target;
    r.within = r.ratio > 0.0 && r.ratio <= factor && r.ratio >= 1.0 / factor;
    return r;
}

json matrix_json(const Eigen::Matrix3d& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
    return rows;
}

}  // namespace

ConfigFile config_from_json(const json& j) {
    if (!j.is_object()) throw Error("config must be a JSON object");
    ConfigFile cfg;
    TrapConfig& t = cfg.trap;
    t.ion_mass = number(j, "ion_mass_amu") * kAtomicMassUnit;
    t.g_factor = number_or(j, "g_factor", 1.0);
    if (!j.contains("trap_freqs_hz") || !j.at("trap_freqs_hz").is_array() ||
        j.at("trap_freqs_hz").size() != 3) {
        field_error("trap_freqs_hz", "expected an array of three frequencies in Hz");
    }
    for (std::size_t i = 0; i < 3; ++i) {
        const json& f = j.at("trap_freqs_hz").at(i);
        if (!f.is_number()) field_error("trap_freqs_hz", "expected numbers");
        t.trap_freqs[i] = hz_to_rad(f.get<double>());
    }
    t.spacing_l = number(j, "spacing_m");
    t.B0 = number_or(j, "B0_T", 0.0);
    t.dBdz = number(j, "dBdz_T_per_m");
    t.qubit_base_freq = hz_to_rad(number_or(j, "qubit_base_freq_hz", 0.0));
    t.eta_bare = number_or(j, "eta_bare", 0.0);
    try {
        t.validate();
    } catch (const Error& e) {
        throw Error(std::string("config: ") + e.what());
    }

    if (j.contains("couplings")) {
        const json& c = j.at("couplings");
        if (c.contains("zz_time")) {
            cfg.couplings = couplings_for_zz_time(seconds(c.at("zz_time"), "couplings.zz_time"),
                                                  number_or(c, "J13_over_J", 0.0));
        } else {
            CouplingData J;
            J.J12 = hz_to_rad(number(c, "J12_hz"));
            J.J23 = hz_to_rad(number(c, "J23_hz"));
            J.J13 = hz_to_rad(number_or(c, "J13_hz", 0.0));
            cfg.couplings = J;
        }
    }

    if (j.contains("expectations")) {
        const json& e = j.at("expectations");
        if (!e.is_object()) field_error("expectations", "expected an object");
        for (const auto& [name, spec] : e.items()) {
            Expectation x;
            x.quantity = name;
            const json& target = spec.at("target");
            if (target.is_array()) {
                for (const auto& v : target) x.targets.push_back(v.get<double>());
            } else {
                x.targets.push_back(target.get<double>());
            }
            x.factor = number_or(spec, "factor", 10.0);
            if (spec.contains("source")) x.source = spec.at("source").get<std::string>();
            cfg.expectations.push_back(std::move(x));
        }
    }
    return cfg;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error("config '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const ConfigFile& cfg) {
    const TrapConfig& t = cfg.trap;
    json j;
    j["ion_mass_amu"] = t.ion_mass / kAtomicMassUnit;
    j["g_factor"] = t.g_factor;
    j["trap_freqs_hz"] = {rad_to_hz(t.trap_freqs[0]), rad_to_hz(t.trap_freqs[1]),
                          rad_to_hz(t.trap_freqs[2])};
    j["spacing_m"] = t.spacing_l;
    j["B0_T"] = t.B0;
    j["dBdz_T_per_m"] = t.dBdz;
    j["qubit_base_freq_hz"] = rad_to_hz(t.qubit_base_freq);
    j["eta_bare"] = t.eta_bare;
    if (cfg.couplings) {
        j["couplings"] = {{"J12_hz", rad_to_hz(cfg.couplings->J12)},
                          {"J23_hz", rad_to_hz(cfg.couplings->J23)},
                          {"J13_hz", rad_to_hz(cfg.couplings->J13)}};
    }
    if (!cfg.expectations.empty()) {
        json e = json::object();
        for (const auto& x : cfg.expectations) {
            json spec;
            spec["target"] = x.targets.size() == 1 ? json(x.targets[0]) : json(x.targets);
            spec["factor"] = x.factor;
            if (!x.source.empty()) spec["source"] = x.source;
            e[x.quantity] = spec;
        }
        j["expectations"] = e;
    }
    return j;
}

CouplingData effective_couplings(const ConfigFile& cfg) {
    if (cfg.couplings) return *cfg.couplings;
    return couplings(cfg.trap, normal_modes(cfg.trap));
}

json timing_to_json(const TimingModel& t) {
    json j;
    if (t.pulse_time) j["pulse_time"] = *t.pulse_time;
    if (t.rabi) j["rabi_hz"] = rad_to_hz(*t.rabi);
    j["measure_time"] = t.measure_time;
    return j;
}

TimingModel timing_from_json(const json& j) {
    TimingModel t;
    t.pulse_time.reset();
    if (j.contains("pulse_time")) t.pulse_time = seconds(j.at("pulse_time"), "timing.pulse_time");
    if (j.contains("rabi_hz")) {
        if (!j.at("rabi_hz").is_number()) field_error("timing.rabi_hz", "expected a number");
        t.rabi = hz_to_rad(j.at("rabi_hz").get<double>());
    }
    if (j.contains("measure_time")) t.measure_time = seconds(j.at("measure_time"), "timing.measure_time");
    t.validate();
    return t;
}

json schedule_to_json(const Schedule& s) {
    json ops = json::array();
    for (const auto& op : s.ops) {
        if (const auto* r = std::get_if<pulse::Rotate>(&op)) {
            ops.push_back({{"kind", "rotate"}, {"ion", r->ion}, {"theta", r->theta}, {"phi", r->phi}});
        } else if (const auto* w = std::get_if<pulse::Wait>(&op)) {
            ops.push_back({{"kind", "wait"}, {"t", w->t}});
        } else {
            ops.push_back({{"kind", "measure"}});
        }
    }
    json notes = json::array();
    for (const auto& a : s.annotations) {
        notes.push_back({{"begin", a.begin}, {"end", a.end}, {"gate", a.source}});
    }
    json j;
    j["timing"] = timing_to_json(s.timing);
    j["ops"] = std::move(ops);
    j["annotations"] = std::move(notes);
    return j;
}

Schedule schedule_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ops") || !j.at("ops").is_array()) {
        throw Error("schedule: expected an object with an 'ops' array");
    }
    Schedule s;
    s.timing = j.contains("timing") ? timing_from_json(j.at("timing")) : TimingModel{};
    for (const auto& op : j.at("ops")) {
        const std::string kind = op.value("kind", "");
        if (kind == "rotate") {
            pulse::Rotate r{ion_field(op, "ion"), double_field(op, "theta"), double_field(op, "phi")};
            if (r.ion < 1 || r.ion > kNumIons) throw Error("schedule op: ion out of range 1..3");
            if (!(r.theta >= 0.0)) throw Error("schedule op: rotate theta must be non-negative");
            s.ops.emplace_back(r);
        } else if (kind == "wait") {
            const double t = double_field(op, "t");
            if (!(t >= 0.0)) throw Error("schedule op: wait t must be non-negative");
            s.ops.emplace_back(pulse::Wait{t});
        } else if (kind == "measure") {
            s.ops.emplace_back(pulse::Measure{});
        } else {
            throw Error("schedule op: unknown kind '" + kind + "'");
        }
    }
    if (j.contains("annotations")) {
        for (const auto& a : j.at("annotations")) {
            Annotation note{a.at("begin").get<std::size_t>(), a.at("end").get<std::size_t>(),
                            a.at("gate").get<std::string>()};
            if (note.begin > note.end || note.end > s.ops.size()) {
                throw Error("schedule annotation range out of bounds");
            }
            s.annotations.push_back(std::move(note));
        }
    }
    return s;
}

std::vector<GateOp> gates_from_json(const json& j) {
    const json& list = j.is_object() && j.contains("gates") ? j.at("gates") : j;
    if (!list.is_array()) throw Error("gate list: expected an array");
    std::vector<GateOp> gates;
    for (const auto& g : list) {
        if (g.is_string()) {
            gates.push_back(parse_gate(g.get<std::string>()));
            continue;
        }
        if (!g.is_object() || !g.contains("gate")) throw Error("gate list: bad entry " + g.dump());
        std::ostringstream text;
        text.precision(17);
        text << g.at("gate").get<std::string>();
        for (const char* key : {"ion", "control", "target"}) {
            if (g.contains(key)) text << ' ' << g.at(key).get<int>();
        }
        if (g.contains("alpha")) text << ' ' << g.at("alpha").get<double>();
        gates.push_back(parse_gate(text.str()));
    }
    return gates;
}

json state_to_json(const PureState& s) {
    json out = json::array();
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        out.push_back({basis_label(static_cast<int>(i), s.n_qubits()), s[i].real(), s[i].imag()});
    }
    return out;
}

PureState state_from_json(const json& j) {
    if (!j.is_array()) throw Error("state: expected a list of [label, re, im]");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(j.size()));
    for (const auto& entry : j) {
        const auto label = entry.at(0).get<std::string>();
        int index = 0;
        for (char ch : label) index = (index << 1) | (ch == '1');
        if (index >= v.size()) throw Error("state: label '" + label + "' out of range");
        v(index) = Complex(entry.at(1).get<double>(), entry.at(2).get<double>());
    }
    return PureState(std::move(v));
}

json run_result_to_json(const RunResult& r) {
    json j;
    j["final"] = state_to_json(r.final);
    j["elapsed"] = r.elapsed;
    j["measure_points"] = r.measure_points;
    if (!r.trace.empty()) {
        json trace = json::array();
        for (const auto& t : r.trace) trace.push_back({{"op", t.op_index}, {"state", state_to_json(t.state)}});
        j["trace"] = std::move(trace);
    }
    return j;
}

json measurement_to_json(const MeasurementRecord& m) {
    json counts = json::object();
    for (const auto& [label, n] : m.counts) counts[label] = n;
    return {{"shots", m.shots}, {"seed", m.seed}, {"counts", counts}};
}

json report_to_json(const QdcReport& r) {
    json t;
    t["prep"] = r.timing.prep;
    t["encode"] = r.timing.encode;
    t["decode"] = r.timing.decode;
    t["measure"] = r.timing.measure;
    t["total"] = r.timing.total;
    t["prep_offline"] = r.timing.prep_offline;
    t["variants"] = {{"with_prep", r.timing.total_with_prep()},
                     {"without_prep", r.timing.total_without_prep()},
                     {"without_prep_and_decode", r.timing.total_without_prep_and_decode()}};
    t["claimed_bound"] = kClaimedTotalTime;
    t["gap_to_claim"] = r.timing.total - kClaimedTotalTime;

    json j;
    j["message"] = r.message.label();
    j["bob_operator"] = bob_operator(r.message);
    j["claire_operator"] = claire_operator(r.message);
    j["encoded_fidelity"] = r.encoded_fidelity;
    j["readout"] = r.readout;
    j["decoded"] = r.decoded.label();
    j["correct"] = r.correct();
    j["success_probability"] = r.success_probability;
    j["final_fidelity"] = r.final_fidelity;
    j["timing"] = std::move(t);
    j["histogram"] = measurement_to_json(r.histogram);
    j["decoded_counts"] = r.decoded_counts;
    return j;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string exhaustive_csv(const std::vector<QdcReport>& rows) {
    std::ostringstream os;
    os << "message,decoded,fidelity,t_prep,t_encode,t_decode,t_measure,t_total\r\n";
    for (const auto& r : rows) {
        os << csv_field(r.message.label()) << ',' << csv_field(r.decoded.label()) << ','
           << format_double(r.final_fidelity) << ',' << format_double(r.timing.prep) << ','
           << format_double(r.timing.encode) << ',' << format_double(r.timing.decode) << ','
           << format_double(r.timing.measure) << ',' << format_double(r.timing.total) << "\r\n";
    }
    return os.str();
}

ParamsReport params_report(const ConfigFile& cfg) {
    ParamsReport r;
    r.modes = normal_modes(cfg.trap);
    r.couplings = couplings(cfg.trap, r.modes);
    r.lamb_dicke = lamb_dicke(cfg.trap, r.modes);
    r.neighbor_splitting = neighbor_splitting(cfg.trap);
    r.freqs = qubit_frequencies(cfg.trap);

    for (const auto& e : cfg.expectations) {
        if (e.targets.empty()) continue;
        const double target = e.targets.front();
        if (e.quantity == "J" || e.quantity == "J13") {
            const double J = e.quantity == "J" ? r.couplings.J12 : r.couplings.J13;
            r.deviations.push_back(deviation(e.quantity + "/2pi", "Hz", rad_to_hz(J), target, e.factor));
            r.deviations.push_back(deviation(e.quantity, "rad/s", J, target, e.factor));
        } else if (e.quantity == "mode_freqs") {
            for (std::size_t p = 0; p < e.targets.size() && p < 3; ++p) {
                r.deviations.push_back(deviation("mode_freq_" + std::to_string(p + 1), "Hz",
                                                 rad_to_hz(r.modes.mode_freqs[p]), e.targets[p],
                                                 e.factor));
            }
        } else if (e.quantity == "epsilon_max") {
            r.deviations.push_back(deviation("epsilon_max", "", r.lamb_dicke.epsilon_max, target, e.factor));
        } else if (e.quantity == "neighbor_splitting") {
            r.deviations.push_back(deviation("neighbor_splitting", "Hz", rad_to_hz(r.neighbor_splitting),
                                             target, e.factor));
        } else {
            throw Error("config field 'expectations': unknown quantity '" + e.quantity + "'");
        }
    }
    return r;
}

json params_to_json(const ParamsReport& r) {
    json j;
    j["mode_freqs_hz"] = {rad_to_hz(r.modes.mode_freqs[0]), rad_to_hz(r.modes.mode_freqs[1]),
                          rad_to_hz(r.modes.mode_freqs[2])};
    j["mode_matrix"] = matrix_json(r.modes.mode_matrix);
    j["couplings_rad_s"] = {{"J12", r.couplings.J12}, {"J23", r.couplings.J23}, {"J13", r.couplings.J13}};
    j["couplings_hz"] = {{"J12", rad_to_hz(r.couplings.J12)},
                         {"J23", rad_to_hz(r.couplings.J23)},
                         {"J13", rad_to_hz(r.couplings.J13)}};
    j["zz_time_s"] = r.couplings.J12 > 0 ? json(zz_evolution_time(r.couplings.J12)) : json(nullptr);
    j["epsilon"] = matrix_json(r.lamb_dicke.epsilon);
    j["epsilon_max"] = r.lamb_dicke.epsilon_max;
    j["eta_prime"] = matrix_json(r.lamb_dicke.eta_prime);
    j["neighbor_splitting_hz"] = rad_to_hz(r.neighbor_splitting);
    j["qubit_freqs_hz"] = {rad_to_hz(r.freqs.omega[0]), rad_to_hz(r.freqs.omega[1]),
                           rad_to_hz(r.freqs.omega[2])};
    json dev = json::array();
    for (const auto& d : r.deviations) {
        dev.push_back({{"quantity", d.quantity},
                       {"unit", d.unit},
                       {"computed", d.computed},
                       {"target", d.target},
                       {"ratio", d.ratio},
                       {"factor", d.factor},
                       {"within", d.within}});
    }
    j["deviations"] = std::move(dev);
    return j;
}

}  // namespace qdc
