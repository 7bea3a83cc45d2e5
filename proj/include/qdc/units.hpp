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

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Internally every frequency is an angular frequency in rad/s.
inline constexpr double hz_to_rad(double hz) { return kTwoPi * hz; }
inline constexpr double rad_to_hz(double rad_per_s) { return rad_per_s / kTwoPi; }

/// Parses a time such as "5us", "2.78ms", "250e-6" or "1 s" into seconds.
/// A bare number is taken as seconds.
double parse_time(std::string_view text);

/// Parses a frequency such as "1MHz", "12.6GHz" or "500" into Hz.
/// A bare number is taken as Hz.
double parse_frequency(std::string_view text);

/// Formats a duration with the most readable SI prefix ("2.82 ms").
std::string format_time(double seconds);

}  // namespace qdc
