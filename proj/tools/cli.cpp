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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "builtin_configs.hpp"
#include "qdc/io.hpp"

namespace qdc::cli {

ConfigFile resolve_config(const std::string& name) {
    if (name == "paper") return config_from_json(json::parse(kPaperConfigJson));
    if (name == "table3") return config_from_json(json::parse(kTable3ConfigJson));
    return load_config(name);
}

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct GlobalOptions {
    std::string config = "paper";
    std::string format;
    std::string output;
    std::uint64_t seed = 0;
    std::uint64_t shots = 100000;
    std::string pulse_time = "5us";
    std::string measure_time = "250us";
};

struct ModeOptions {
    std::string mode = "ideal";
    std::string rabi;
    bool lab_frame = false;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("'" + path + "': " + e.what());
    }
}

TimingModel timing_from(const GlobalOptions& g) {
    return TimingModel::fixed(parse_time(g.pulse_time), parse_time(g.measure_time));
}

SimMode mode_from(const ModeOptions& m) {
    SimMode mode;
    if (m.mode == "ideal") {
        mode = SimMode::ideal();
    } else if (m.mode == "drive") {
        if (m.rabi.empty()) throw UsageError("--mode drive requires --rabi <Hz>");
        mode = SimMode::drive(hz_to_rad(parse_frequency(m.rabi)));
    } else {
        throw UsageError("--mode must be 'ideal' or 'drive'");
    }
    mode.include_qubit_terms = m.lab_frame;
    return mode;
}

void add_mode_options(CLI::App* sub, ModeOptions& m) {
    sub->add_option("--mode", m.mode, "ideal | drive")->check(CLI::IsMember({"ideal", "drive"}));
    sub->add_option("--rabi", m.rabi, "Rabi frequency for drive mode, Hz (SI suffix allowed)");
    sub->add_flag("--lab-frame", m.lab_frame, "keep the single-ion qubit terms");
}

std::string format_or(const GlobalOptions& g, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
    const std::string f = g.format.empty() ? fallback : g.format;
    for (const char* a : allowed) {
        if (f == a) return f;
    }
    throw UsageError("format '" + f + "' is not available for this command");
}

// ---- params ---------------------------------------------------------------

std::string cmd_params(const GlobalOptions& g) {
    const ConfigFile cfg = resolve_config(g.config);
    const ParamsReport r = params_report(cfg);
    const std::string f = format_or(g, "text", {"text", "json"});
    if (f == "json") return params_to_json(r).dump(2) + "\n";

    std::ostringstream os;
    os << "normal modes (Hz):";
    for (double nu : r.modes.mode_freqs) os << ' ' << fmt("%.6e", rad_to_hz(nu));
    os << "\nmode matrix D (rows = ions, columns = modes):\n";
    for (int i = 0; i < 3; ++i) {
        os << fmt("  % .9f % .9f % .9f\n", r.modes.mode_matrix(i, 0), r.modes.mode_matrix(i, 1),
                  r.modes.mode_matrix(i, 2));
    }
    const CouplingData& J = r.couplings;
    os << fmt("J12 = %.6e rad/s (%.6e Hz)\n", J.J12, rad_to_hz(J.J12));
    os << fmt("J23 = %.6e rad/s (%.6e Hz)\n", J.J23, rad_to_hz(J.J23));
    os << fmt("J13 = %.6e rad/s (%.6e Hz)\n", J.J13, rad_to_hz(J.J13));
    if (J.J12 > 0) os << "ZZ evolution time t0 = 7pi/(2 J12) = " << format_time(zz_evolution_time(J.J12)) << '\n';
    os << fmt("epsilon_max = %.6e\n", r.lamb_dicke.epsilon_max);
    os << "eta' (rows = ions, columns = modes):\n";
    for (int i = 0; i < 3; ++i) {
        os << fmt("  %.6e %.6e %.6e\n", r.lamb_dicke.eta_prime(i, 0), r.lamb_dicke.eta_prime(i, 1),
                  r.lamb_dicke.eta_prime(i, 2));
    }
    os << fmt("neighbor splitting = %.6e Hz\n", rad_to_hz(r.neighbor_splitting));
    if (cfg.couplings) {
        const CouplingData& o = *cfg.couplings;
        os << fmt("config coupling override: J12 = %.6e, J23 = %.6e, J13 = %.6e rad/s\n", o.J12, o.J23, o.J13);
    }
    if (!r.deviations.empty()) {
        os << "\ndeviation report (computed / reference target):\n";
        for (const auto& d : r.deviations) {
            os << fmt("  %-20s %-6s computed %-13.6e target %-13.6e ratio %-12.6e within x%g: %s\n",
                      d.quantity.c_str(), d.unit.c_str(), d.computed, d.target, d.ratio, d.factor,
                      d.within ? "yes" : "no");
        }
    }
    return os.str();
}

// ---- spectrum -------------------------------------------------------------

std::string cmd_spectrum(const GlobalOptions& g) {
    const ConfigFile cfg = resolve_config(g.config);
    const CouplingData J = effective_couplings(cfg);
    const QubitFrequencies freqs = qubit_frequencies(cfg.trap);
    const auto levels = spin_eigenenergies(freqs, J);
    const auto carriers = carrier_table(freqs, J);
    const std::string f = format_or(g, "text", {"text", "json", "csv"});

    if (f == "json") {
        json j;
        j["couplings_rad_s"] = {{"J12", J.J12}, {"J23", J.J23}, {"J13", J.J13}};
        json e = json::array();
        for (const auto& l : levels) e.push_back({{"basis", l.label}, {"energy_rad_s", l.energy}});
        json c = json::array();
        for (const auto& x : carriers) {
            c.push_back({{"ion", x.ion},
                         {"spectators", x.spectators},
                         {"frequency_rad_s", x.frequency},
                         {"offset_rad_s", x.frequency - freqs.omega[static_cast<std::size_t>(x.ion - 1)]}});
        }
        j["eigenenergies"] = std::move(e);
        j["carriers"] = std::move(c);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    if (f == "csv") {
        os << "table,key,spectators,value_rad_s,offset_rad_s\r\n";
        for (const auto& l : levels) os << "energy," << l.label << ",," << format_double(l.energy) << ",\r\n";
        for (const auto& x : carriers) {
            os << "carrier," << x.ion << ',' << x.spectators << ',' << format_double(x.frequency) << ','
               << format_double(x.frequency - freqs.omega[static_cast<std::size_t>(x.ion - 1)]) << "\r\n";
        }
        return os.str();
    }
    os << fmt("couplings: J12 = %.6e, J23 = %.6e, J13 = %.6e rad/s\n\n", J.J12, J.J23, J.J13);
    os << "eigenenergies (interaction part = energy minus single-ion terms):\n";
    const auto inter = spin_eigenenergies(nullptr, J);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        os << fmt("  |%s>  E = %+.12e rad/s   coupling part %+.6e rad/s\n", levels[k].label.c_str(),
                  levels[k].energy, inter[k].energy);
    }
    os << "\ncarrier frequencies (offset from the bare qubit frequency):\n";
    for (const auto& x : carriers) {
        os << fmt("  ion %d, others |%c>|%c>  w_c = %.12e rad/s   offset %+.6e rad/s\n", x.ion,
                  x.spectators[0], x.spectators[1], x.frequency,
                  x.frequency - freqs.omega[static_cast<std::size_t>(x.ion - 1)]);
    }
    return os.str();
}

// ---- feasibility ----------------------------------------------------------

std::string cmd_feasibility(const GlobalOptions& g, const std::string& rabi_text,
                            const FeasibilityMargins& margins) {
    const ConfigFile cfg = resolve_config(g.config);
    const CouplingData J = effective_couplings(cfg);
    const double rabi = hz_to_rad(parse_frequency(rabi_text));
    const AddressingReport r = feasibility(cfg.trap, J, rabi, margins);
    const std::string f = format_or(g, "text", {"text", "json"});
    if (f == "json") {
        json checks = json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"lhs", c.lhs},
                              {"relation", c.relation}, {"rhs", c.rhs}});
        }
        json j;
        j["rabi_rad_s"] = rabi;
        j["carrier_spread_rad_s"] = r.carrier_spread;
        j["neighbor_splitting_rad_s"] = r.neighbor_splitting;
        j["epsilon_max"] = r.epsilon_max;
        j["checks"] = std::move(checks);
        j["all_passed"] = r.all_passed();
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << fmt("rabi = %.6e rad/s\n", rabi);
    for (const auto& c : r.checks) {
        os << fmt("  [%s] %-24s %.6e %s %.6e\n", c.passed ? "pass" : "FAIL", c.name.c_str(), c.lhs,
                  c.relation.c_str(), c.rhs);
    }
    os << (r.all_passed() ? "feasible\n" : "not feasible\n");
    return os.str();
}

// ---- compile / simulate ---------------------------------------------------

std::string cmd_compile(const GlobalOptions& g, const std::string& path, const std::string& rabi_timing) {
    const ConfigFile cfg = resolve_config(g.config);
    format_or(g, "json", {"json"});
    const auto gates = gates_from_json(read_json_file(path));
    TimingModel timing = timing_from(g);
    if (!rabi_timing.empty()) {
        timing = TimingModel::from_rabi(hz_to_rad(parse_frequency(rabi_timing)), parse_time(g.measure_time));
    }
    const Schedule s = compile(gates, effective_couplings(cfg), timing);
    return schedule_to_json(s).dump(2) + "\n";
}

std::string cmd_simulate(const GlobalOptions& g, const std::string& path, const ModeOptions& m,
                         const std::string& initial, bool trace) {
    const ConfigFile cfg = resolve_config(g.config);
    const std::string f = format_or(g, "json", {"json", "text"});
    const Schedule s = schedule_from_json(read_json_file(path));
    const SimMode mode = mode_from(m);
    const QubitFrequencies freqs = qubit_frequencies(cfg.trap);
    const PureState start = initial == "ghz" ? phi_state(0, 0, 0) : PureState::basis(initial);
    const RunResult r = run(s, start, mode, effective_couplings(cfg),
                            mode.include_qubit_terms ? &freqs : nullptr, trace);
    if (f == "json") return run_result_to_json(r).dump(2) + "\n";
    std::ostringstream os;
    os << "elapsed " << format_time(r.elapsed) << '\n';
    for (Eigen::Index i = 0; i < r.final.dim(); ++i) {
        os << fmt("  |%s>  %+.12f %+.12fi   p = %.12f\n", basis_label(static_cast<int>(i)).c_str(),
                  r.final[i].real(), r.final[i].imag(), std::norm(r.final[i]));
    }
    return os.str();
}

// ---- qdc ------------------------------------------------------------------

ProtocolSetup setup_from(const GlobalOptions& g, const ConfigFile& cfg, bool offline,
                         const QubitFrequencies* freqs) {
    ProtocolSetup setup;
    setup.couplings = effective_couplings(cfg);
    setup.timing = timing_from(g);
    setup.prep_offline = offline;
    setup.seed = g.seed;
    setup.shots = g.shots;
    setup.freqs = freqs;
    return setup;
}

void timing_text(std::ostream& os, const TimingBreakdown& t) {
    os << "timing: prep " << format_time(t.prep) << (t.prep_offline ? " (offline, not charged)" : "")
       << ", encode " << format_time(t.encode) << ", decode " << format_time(t.decode) << ", measure "
       << format_time(t.measure) << '\n';
    os << "total " << format_time(t.total) << " vs claimed < " << format_time(kClaimedTotalTime)
       << fmt(" (gap %+.6e s)\n", t.total - kClaimedTotalTime);
    os << "accounting variants: with prep " << format_time(t.total_with_prep()) << ", without prep "
       << format_time(t.total_without_prep()) << ", without prep and decode "
       << format_time(t.total_without_prep_and_decode()) << '\n';
}

std::string cmd_qdc_run(const GlobalOptions& g, const std::string& bob, const std::string& claire,
                        const ModeOptions& m, bool offline) {
    const ConfigFile cfg = resolve_config(g.config);
    const std::string f = format_or(g, "text", {"text", "json"});
    const QubitFrequencies freqs = qubit_frequencies(cfg.trap);
    const SimMode mode = mode_from(m);
    const Message msg = Message::parse(bob, claire);
    const QdcReport r = run_qdc(msg, mode, setup_from(g, cfg, offline, &freqs));
    if (f == "json") return report_to_json(r).dump(2) + "\n";
    std::ostringstream os;
    os << "message " << msg.label() << " (bob " << bob_operator(msg) << ", claire " << claire_operator(msg)
       << ")\n";
    os << fmt("encoded-state fidelity %.12f\n", r.encoded_fidelity);
    os << "readout " << r.readout << ", decoded " << r.decoded.label() << (r.correct() ? " (correct)" : " (WRONG)")
       << fmt(", success probability %.12f\n", r.success_probability);
    os << "histogram (" << r.histogram.shots << " shots, seed " << r.histogram.seed << "):";
    for (const auto& [label, n] : r.histogram.counts) os << ' ' << label << '=' << n;
    os << '\n';
    timing_text(os, r.timing);
    return os.str();
}

std::string cmd_qdc_exhaustive(const GlobalOptions& g, const ModeOptions& m, bool offline) {
    const ConfigFile cfg = resolve_config(g.config);
    const std::string f = format_or(g, "text", {"text", "json", "csv"});
    const QubitFrequencies freqs = qubit_frequencies(cfg.trap);
    const auto rows = exhaustive(mode_from(m), setup_from(g, cfg, offline, &freqs));
    if (f == "csv") return exhaustive_csv(rows);
    if (f == "json") {
        json j = json::array();
        for (const auto& r : rows) j.push_back(report_to_json(r));
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "msg  bob  claire  readout  decoded  ok   fidelity        encode     total\n";
    int correct = 0;
    for (const auto& r : rows) {
        correct += r.correct();
        os << fmt("%s  %-4s %-6s  %s      %s      %-4s %.12f  %-10s %s\n", r.message.label().c_str(),
                  bob_operator(r.message).c_str(), claire_operator(r.message).c_str(), r.readout.c_str(),
                  r.decoded.label().c_str(), r.correct() ? "yes" : "NO", r.final_fidelity,
                  format_time(r.timing.encode).c_str(), format_time(r.timing.total).c_str());
    }
    os << correct << "/8 decoded correctly\n";
    timing_text(os, rows.back().timing);
    return os.str();
}

std::string cmd_qdc_sweep(const GlobalOptions& g, const std::string& from, const std::string& to,
                          int points, bool offline) {
    const ConfigFile cfg = resolve_config(g.config);
    format_or(g, "csv", {"csv"});
    if (points < 1) throw UsageError("--points must be at least 1");
    const double lo = parse_frequency(from);
    const double hi = parse_frequency(to);
    if (!(lo > 0.0) || !(hi > 0.0)) throw UsageError("--rabi-from and --rabi-to must be positive");
    const ProtocolSetup setup = setup_from(g, cfg, offline, nullptr);
    const double J = setup.couplings.J12;

    std::ostringstream os;
    os << "rabi_hz,rabi_over_J,pi_pulse_fidelity,qdc_min_fidelity,qdc_correct\r\n";
    for (int k = 0; k < points; ++k) {
        const double frac = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
        const double rabi_hz = k == points - 1 && points > 1 ? hi : lo * std::pow(hi / lo, frac);
        const double rabi = hz_to_rad(rabi_hz);
        const auto rows = exhaustive(SimMode::drive(rabi), setup);
        double worst = 1.0;
        int correct = 0;
        for (const auto& r : rows) {
            worst = std::min(worst, r.final_fidelity);
            correct += r.correct();
        }
        os << format_double(rabi_hz) << ',' << format_double(rabi / J) << ','
           << format_double(pulse_fidelity(2, kPi, 0.0, rabi, setup.couplings)) << ','
           << format_double(worst) << ',' << correct << "\r\n";
    }
    return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pulse-level simulator and gate-to-pulse compiler for three-ion microtrap dense coding",
                 "qdc"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    GlobalOptions g;
    app.add_option("--config", g.config, "trap config JSON, or a builtin: paper, table3");
    app.add_option("--format", g.format, "json | csv | text (default depends on the command)")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output,-o", g.output, "write the report to this file");
    app.add_option("--seed", g.seed, "measurement RNG seed (default 0)");
    app.add_option("--shots", g.shots, "measurement shots (default 100000)")->check(CLI::PositiveNumber);
    app.add_option("--pulse-time", g.pulse_time, "duration charged per rotation (default 5us)");
    app.add_option("--measure-time", g.measure_time, "readout latency (default 250us)");

    std::function<std::string()> action;

    auto* params = app.add_subcommand("params", "normal modes, couplings, Lamb-Dicke factors, deviations");
    params->callback([&] { action = [&] { return cmd_params(g); }; });

    auto* spectrum = app.add_subcommand("spectrum", "eigenenergies and conditional carrier frequencies");
    spectrum->callback([&] { action = [&] { return cmd_spectrum(g); }; });

    std::string feas_rabi;
    FeasibilityMargins margins;
    auto* feas = app.add_subcommand("feasibility", "addressing and crosstalk checks for a Rabi frequency");
    feas->add_option("--rabi", feas_rabi, "Rabi frequency, Hz (SI suffix allowed)")->required();
    feas->add_option("--kappa-addressing", margins.kappa_addressing, "addressing margin (default 10)");
    feas->add_option("--kappa-crosstalk", margins.kappa_crosstalk, "crosstalk margin (default 10)");
    feas->callback([&] { action = [&] { return cmd_feasibility(g, feas_rabi, margins); }; });

    std::string gates_path, rabi_timing;
    auto* comp = app.add_subcommand("compile", "lower a gate list to a pulse schedule");
    comp->add_option("gates", gates_path, "gate list JSON")->required()->check(CLI::ExistingFile);
    comp->add_option("--rabi-timing", rabi_timing, "charge rotations theta/rabi with this Rabi frequency");
    comp->callback([&] { action = [&] { return cmd_compile(g, gates_path, rabi_timing); }; });

    std::string schedule_path, initial = "000";
    bool trace = false;
    ModeOptions sim_mode;
    auto* simulate = app.add_subcommand("simulate", "run a pulse schedule");
    simulate->add_option("schedule", schedule_path, "schedule JSON")->required()->check(CLI::ExistingFile);
    simulate->add_option("--initial", initial, "initial basis label such as 000, or 'ghz'");
    simulate->add_flag("--trace", trace, "record the state after every op");
    add_mode_options(simulate, sim_mode);
    simulate->callback([&] { action = [&] { return cmd_simulate(g, schedule_path, sim_mode, initial, trace); }; });

    auto* qdc = app.add_subcommand("qdc", "three-party dense coding");
    qdc->require_subcommand(1);
    std::string bob, claire;
    bool offline = false;
    ModeOptions qdc_mode;
    auto* qrun = qdc->add_subcommand("run", "encode, decode and measure one message");
    qrun->add_option("--bob", bob, "Bob's two bits: phase, flip")->required();
    qrun->add_option("--claire", claire, "Claire's bit")->required();
    qrun->add_flag("--offline-prep", offline, "do not charge GHZ preparation to the total");
    add_mode_options(qrun, qdc_mode);
    qrun->callback([&] { action = [&] { return cmd_qdc_run(g, bob, claire, qdc_mode, offline); }; });

    auto* qall = qdc->add_subcommand("exhaustive", "all eight messages");
    qall->add_flag("--offline-prep", offline, "do not charge GHZ preparation to the total");
    add_mode_options(qall, qdc_mode);
    qall->callback([&] { action = [&] { return cmd_qdc_exhaustive(g, qdc_mode, offline); }; });

    std::string rabi_from, rabi_to;
    int points = 5;
    auto* sweep = qdc->add_subcommand("sweep", "fidelity versus Rabi frequency (CSV)");
    sweep->add_option("--rabi-from", rabi_from, "lowest Rabi frequency, Hz")->required();
    sweep->add_option("--rabi-to", rabi_to, "highest Rabi frequency, Hz")->required();
    sweep->add_option("--points", points, "log-spaced points (default 5)");
    sweep->add_flag("--offline-prep", offline, "do not charge GHZ preparation to the total");
    sweep->callback([&] { action = [&] { return cmd_qdc_sweep(g, rabi_from, rabi_to, points, offline); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        const std::string report = action ? action() : std::string{};
        if (g.output.empty()) {
            out << report;
        } else {
            std::ofstream file(g.output, std::ios::binary);
            if (!file) throw Error("cannot write '" + g.output + "'");
            file << report;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitOk;
}

}  // namespace qdc::cli
