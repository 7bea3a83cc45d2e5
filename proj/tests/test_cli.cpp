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

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qdc/io.hpp"

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = qdc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(QDC_FIXTURE_DIR) + "/" + name; }

std::string scratch(const std::string& name) {
    const auto dir = std::filesystem::path(QDC_SCRATCH_DIR);
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

using qdc::json;

TEST_SUITE("cli") {
    TEST_CASE("params prints the deviation table") {
        const Outcome r = cli({"params"});
        CHECK(r.code == 0);
        CHECK(r.out.find("J/2pi") != std::string::npos);
        CHECK(r.out.find("target 1.000000e+04") != std::string::npos);
        CHECK(r.out.find("mode_freq_3") != std::string::npos);
        const Outcome j = cli({"params", "--format", "json"});
        REQUIRE(j.code == 0);
        const json p = json::parse(j.out);
        CHECK(p["deviations"].size() == 9);
        CHECK(p["couplings_rad_s"]["J12"] == p["couplings_rad_s"]["J23"]);
    }

    TEST_CASE("params from a file with explicit couplings") {
        const Outcome r = cli({"--config", fixture("explicit_couplings.json"), "params"});
        CHECK(r.code == 0);
        CHECK(r.out.find("config coupling override") != std::string::npos);
    }

    TEST_CASE("spectrum in every format") {
        const Outcome t = cli({"--config", "table3", "spectrum"});
        CHECK(t.code == 0);
        CHECK(t.out.find("|111>") != std::string::npos);
        const Outcome j = cli({"--config", "table3", "--format", "json", "spectrum"});
        REQUIRE(j.code == 0);
        const json s = json::parse(j.out);
        CHECK(s["eigenenergies"].size() == 8);
        CHECK(s["carriers"].size() == 12);
        const Outcome c = cli({"--config", "table3", "--format", "csv", "spectrum"});
        CHECK(c.code == 0);
        CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 21);
    }

    TEST_CASE("feasibility") {
        const Outcome r = cli({"feasibility", "--rabi", "1MHz"});
        CHECK(r.code == 0);
        CHECK(r.out.find("[pass] addressing ion 2") != std::string::npos);
        CHECK(r.out.find("lamb-dicke epsilon_max") != std::string::npos);
        const Outcome j = cli({"--format", "json", "feasibility", "--rabi", "20"});
        REQUIRE(j.code == 0);
        CHECK(json::parse(j.out)["all_passed"] == false);
        CHECK(cli({"feasibility"}).code == 2);
        CHECK(cli({"feasibility", "--rabi", "fast"}).code == 1);
    }

    TEST_CASE("compile then simulate") {
        const std::string sched = scratch("cnot12_schedule.json");
        const Outcome c = cli({"--config", "table3", "-o", sched, "compile", fixture("cnot12.json")});
        REQUIRE(c.code == 0);
        const json s = json::parse(slurp(sched));
        CHECK(s["ops"].size() == 18);
        CHECK(s["annotations"][0]["gate"] == "cnot 1 2");

        const Outcome r = cli({"--config", "table3", "simulate", sched, "--initial", "100"});
        REQUIRE(r.code == 0);
        const json out = json::parse(r.out);
        double p110 = 0.0;
        for (const auto& e : out["final"]) {
            if (e[0] == "110") p110 = e[1].get<double>() * e[1].get<double>() + e[2].get<double>() * e[2].get<double>();
        }
        CHECK(p110 > 1 - 1e-9);
        CHECK(out["elapsed"].get<double>() == doctest::Approx(2.82e-3).epsilon(1e-14));

        const Outcome d = cli({"--config", "table3", "--format", "text", "simulate", sched, "--mode", "drive",
                               "--rabi", "1MHz", "--trace"});
        CHECK(d.code == 0);
        CHECK(d.out.find("|000>") != std::string::npos);
        CHECK(cli({"simulate", sched, "--mode", "drive"}).code == 2);
    }

    TEST_CASE("compile with object-form gates and rabi timing") {
        const Outcome c = cli({"--config", "table3", "compile", fixture("ghz.json"), "--rabi-timing", "1MHz"});
        REQUIRE(c.code == 0);
        const json s = json::parse(c.out);
        CHECK(s["timing"].contains("rabi_hz"));
        CHECK(s["annotations"].size() == 3);
    }

    TEST_CASE("simulate a hand-written schedule in the lab frame") {
        const Outcome r = cli({"simulate", fixture("x2_schedule.json"), "--lab-frame"});
        REQUIRE(r.code == 0);
        const json out = json::parse(r.out);
        CHECK(out["measure_points"][0] == 2);
        CHECK(out["elapsed"].get<double>() == doctest::Approx(5e-6 + 1e-3 + 250e-6));
    }

    TEST_CASE("qdc run") {
        const Outcome r = cli({"--config", "table3", "qdc", "run", "--bob", "11", "--claire", "1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("decoded 111 (correct)") != std::string::npos);
        CHECK(r.out.find("claimed < 6 ms") != std::string::npos);
        const Outcome j = cli({"--config", "table3", "--format", "json", "--shots", "1000", "qdc", "run", "--bob",
                               "01", "--claire", "0", "--offline-prep"});
        REQUIRE(j.code == 0);
        const json rep = json::parse(j.out);
        CHECK(rep["decoded"] == "010");
        CHECK(rep["readout"] == "011");
        CHECK(rep["decoded_counts"]["010"] == 1000);
        CHECK(rep["timing"]["prep_offline"] == true);
        CHECK(cli({"qdc", "run", "--bob", "2", "--claire", "0"}).code == 1);
    }

    TEST_CASE("qdc exhaustive in all formats") {
        const Outcome t = cli({"--config", "table3", "qdc", "exhaustive"});
        CHECK(t.code == 0);
        CHECK(t.out.find("8/8 decoded correctly") != std::string::npos);
        const Outcome c = cli({"--config", "table3", "--format", "csv", "qdc", "exhaustive"});
        CHECK(c.code == 0);
        CHECK(c.out.rfind("message,decoded,fidelity,t_prep,t_encode,t_decode,t_measure,t_total\r\n", 0) == 0);
        const Outcome j = cli({"--config", "table3", "--format", "json", "--shots", "100", "qdc", "exhaustive",
                               "--mode", "drive", "--rabi", "2MHz"});
        REQUIRE(j.code == 0);
        CHECK(json::parse(j.out).size() == 8);
    }

    TEST_CASE("qdc sweep CSV") {
        const Outcome s = cli({"--config", "table3", "--shots", "100", "qdc", "sweep", "--rabi-from", "1kHz",
                               "--rabi-to", "1MHz", "--points", "4"});
        REQUIRE(s.code == 0);
        std::istringstream lines(s.out);
        std::string line;
        std::getline(lines, line);
        CHECK(line == "rabi_hz,rabi_over_J,pi_pulse_fidelity,qdc_min_fidelity,qdc_correct\r");
        int rows = 0;
        while (std::getline(lines, line)) ++rows;
        CHECK(rows == 4);
        CHECK(s.out.find("\r\n1e+06,") != std::string::npos);
        CHECK(cli({"qdc", "sweep", "--rabi-from", "1kHz", "--rabi-to", "1MHz", "--points", "0"}).code == 2);
    }

    TEST_CASE("determinism: identical arguments, identical bytes") {
        const std::vector<std::string> args{"--config", "table3", "--format", "json", "--seed", "7",
                                            "qdc", "exhaustive", "--mode", "drive", "--rabi", "50kHz"};
        CHECK(cli(args).out == cli(args).out);
    }

    TEST_CASE("usage errors exit 2, computation errors exit 1") {
        const Outcome f = cli({"frobnicate"});
        CHECK(f.code == 2);
        CHECK(f.err.find("Usage") != std::string::npos);
        CHECK(cli({}).code == 2);
        CHECK(cli({"qdc"}).code == 2);
        CHECK(cli({"--format", "yaml", "params"}).code == 2);
        CHECK(cli({"--format", "csv", "params"}).code == 2);
        CHECK(cli({"compile", fixture("does_not_exist.json")}).code == 2);
        CHECK(cli({"--help"}).code == 0);

        const Outcome m = cli({"--config", fixture("missing_spacing.json"), "params"});
        CHECK(m.code == 1);
        CHECK(m.err.find("spacing_m") != std::string::npos);
        const Outcome g = cli({"--config", "table3", "compile", fixture("bad_gate.json")});
        CHECK(g.code == 1);
        CHECK(g.err.find("cnot") != std::string::npos);
        const Outcome s = cli({"simulate", fixture("bad_schedule.json")});
        CHECK(s.code == 1);
        CHECK(s.err.find("theta") != std::string::npos);
        const Outcome u = cli({"compile", fixture("cnot12.json"), "--config", "paper"});
        CHECK(u.code == 0);
        CHECK(cli({"compile", fixture("cnot12.json"), "--no-such-flag"}).code == 2);
    }
}
