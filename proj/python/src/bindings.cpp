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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "qdc/io.hpp"

namespace py = pybind11;
using namespace qdc;

namespace {

// Everything crosses the boundary as JSON so the Python side sees the same
// documents the command line writes.
json to_json(const py::handle& obj) {
    const std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return json::parse(text);
}

py::object from_json(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

ConfigFile config_arg(const py::object& config) {
    if (py::isinstance<py::str>(config)) return cli::resolve_config(config.cast<std::string>());
    return config_from_json(to_json(config));
}

TimingModel timing_arg(double pulse_time, double measure_time) {
    return TimingModel::fixed(pulse_time, measure_time);
}

SimMode mode_arg(std::optional<double> rabi_hz, bool lab_frame) {
    SimMode mode = rabi_hz ? SimMode::drive(hz_to_rad(*rabi_hz)) : SimMode::ideal();
    mode.include_qubit_terms = lab_frame;
    mode.validate();
    return mode;
}

ProtocolSetup setup_arg(const ConfigFile& cfg, double pulse_time, double measure_time, bool offline,
                        std::uint64_t seed, std::uint64_t shots, const QubitFrequencies* freqs) {
    ProtocolSetup setup;
    setup.couplings = effective_couplings(cfg);
    setup.timing = timing_arg(pulse_time, measure_time);
    setup.prep_offline = offline;
    setup.seed = seed;
    setup.shots = shots;
    setup.freqs = freqs;
    return setup;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pulse-level simulator and gate compiler for three ions in microtraps";

    py::register_exception<Error>(m, "QdcError", PyExc_ValueError);

    m.def("params", [](const py::object& config) { return from_json(params_to_json(params_report(config_arg(config)))); },
          py::arg("config") = "paper",
          "Normal modes, couplings and derived quantities for a built-in name, a path or a config dict.");

    m.def("config", [](const py::object& config) { return from_json(config_to_json(config_arg(config))); },
          py::arg("config") = "paper");

    m.def(
        "compile",
        [](const py::object& gates, const py::object& config, double pulse_time, double measure_time) {
            const ConfigFile cfg = config_arg(config);
            const Schedule s =
                compile(gates_from_json(to_json(gates)), effective_couplings(cfg), timing_arg(pulse_time, measure_time));
            return from_json(schedule_to_json(s));
        },
        py::arg("gates"), py::arg("config") = "paper", py::arg("pulse_time") = 5e-6, py::arg("measure_time") = 250e-6);

    m.def(
        "simulate",
        [](const py::object& schedule, const py::object& config, const std::string& initial,
           std::optional<double> rabi_hz, bool lab_frame, bool trace) {
            const ConfigFile cfg = config_arg(config);
            const SimMode mode = mode_arg(rabi_hz, lab_frame);
            const QubitFrequencies freqs = qubit_frequencies(cfg.trap);
            const PureState start = initial == "ghz" ? phi_state(0, 0, 0) : PureState::basis(initial);
            const RunResult r = run(schedule_from_json(to_json(schedule)), start, mode, effective_couplings(cfg),
                                    lab_frame ? &freqs : nullptr, trace);
            return from_json(run_result_to_json(r));
        },
        py::arg("schedule"), py::arg("config") = "paper", py::arg("initial") = "000", py::arg("rabi_hz") = py::none(),
        py::arg("lab_frame") = false, py::arg("trace") = false);

    m.def(
        "run_qdc",
        [](const std::string& bob, const std::string& claire, const py::object& config, std::optional<double> rabi_hz,
           bool lab_frame, bool offline_prep, std::uint64_t seed, std::uint64_t shots, double pulse_time,
           double measure_time) {
            const ConfigFile cfg = config_arg(config);
            const QubitFrequencies freqs = qubit_frequencies(cfg.trap);
            const ProtocolSetup setup = setup_arg(cfg, pulse_time, measure_time, offline_prep, seed, shots, &freqs);
            return from_json(report_to_json(run_qdc(Message::parse(bob, claire), mode_arg(rabi_hz, lab_frame), setup)));
        },
        py::arg("bob"), py::arg("claire"), py::arg("config") = "paper", py::arg("rabi_hz") = py::none(),
        py::arg("lab_frame") = false, py::arg("offline_prep") = false, py::arg("seed") = 0,
        py::arg("shots") = 100000, py::arg("pulse_time") = 5e-6, py::arg("measure_time") = 250e-6);

    m.def(
        "exhaustive",
        [](const py::object& config, std::optional<double> rabi_hz, bool lab_frame, bool offline_prep,
           std::uint64_t seed, std::uint64_t shots) {
            const ConfigFile cfg = config_arg(config);
            const QubitFrequencies freqs = qubit_frequencies(cfg.trap);
            const ProtocolSetup setup = setup_arg(cfg, 5e-6, 250e-6, offline_prep, seed, shots, &freqs);
            py::list rows;
            for (const QdcReport& r : exhaustive(mode_arg(rabi_hz, lab_frame), setup)) rows.append(from_json(report_to_json(r)));
            return rows;
        },
        py::arg("config") = "paper", py::arg("rabi_hz") = py::none(), py::arg("lab_frame") = false,
        py::arg("offline_prep") = false, py::arg("seed") = 0, py::arg("shots") = 100000);

    m.def(
        "pulse_fidelity",
        [](int ion, double theta, double phi, double rabi_hz, const py::object& config) {
            return pulse_fidelity(ion, theta, phi, hz_to_rad(rabi_hz), effective_couplings(config_arg(config)));
        },
        py::arg("ion"), py::arg("theta"), py::arg("phi"), py::arg("rabi_hz"), py::arg("config") = "paper");

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the qdc command line in-process; returns (exit code, stdout, stderr).");

    m.attr("__version__") = QDC_VERSION;
}
