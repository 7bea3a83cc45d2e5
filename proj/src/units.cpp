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

#include "qdc/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace qdc {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits "2.78ms" into (2.78, "ms").
std::pair<double, std::string_view> split_number(std::string_view text, std::string_view what) {
    const auto s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || !std::isfinite(value)) {
        throw Error("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    }
    return {value, trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)))};
}

template <std::size_t N>
double parse_with_units(std::string_view text, std::string_view what,
                        const std::array<std::pair<std::string_view, double>, N>& units) {
    const auto [value, suffix] = split_number(text, what);
    if (value < 0.0) throw Error(std::string(what) + " must be non-negative: '" + std::string(text) + "'");
    if (suffix.empty()) return value;
    for (const auto& [name, scale] : units) {
        if (suffix == name) return value * scale;
    }
    throw Error("unknown unit '" + std::string(suffix) + "' in " + std::string(what) + " '" +
                std::string(text) + "'");
}

}  // namespace

double parse_time(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, double>, 6> units{{
        {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"\xC2\xB5s", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}}};
    return parse_with_units(text, "time", units);
}

double parse_frequency(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, double>, 4> units{
        {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}};
    return parse_with_units(text, "frequency", units);
}

std::string format_time(double seconds) {
    const double a = std::fabs(seconds);
    const char* unit = "s";
    double scaled = seconds;
    if (a == 0.0) {
        unit = "s";
    } else if (a < 1e-6) {
        scaled = seconds * 1e9;
        unit = "ns";
    } else if (a < 1e-3) {
        scaled = seconds * 1e6;
        unit = "us";
    } else if (a < 1.0) {
        scaled = seconds * 1e3;
        unit = "ms";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g %s", scaled, unit);
    return buf;
}

}  // namespace qdc
