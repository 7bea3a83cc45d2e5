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

#include "qdc/units.hpp"

using namespace qdc;

TEST_CASE("time strings with SI suffixes") {
    CHECK(parse_time("5us") == doctest::Approx(5e-6).epsilon(1e-15));
    CHECK(parse_time("2.78ms") == doctest::Approx(2.78e-3).epsilon(1e-15));
    CHECK(parse_time("250 us") == doctest::Approx(250e-6).epsilon(1e-15));
    CHECK(parse_time("1.5") == 1.5);
    CHECK(parse_time("3s") == 3.0);
    CHECK(parse_time("7ns") == doctest::Approx(7e-9).epsilon(1e-15));
    CHECK(parse_time("2ps") == doctest::Approx(2e-12).epsilon(1e-15));
    CHECK(parse_time("4\xC2\xB5s") == doctest::Approx(4e-6).epsilon(1e-15));
}

TEST_CASE("frequency strings") {
    CHECK(parse_frequency("1MHz") == 1e6);
    CHECK(parse_frequency("500 kHz") == 5e5);
    CHECK(parse_frequency("12.6GHz") == doctest::Approx(12.6e9));
    CHECK(parse_frequency("42") == 42.0);
    CHECK(parse_frequency("10Hz") == 10.0);
}

TEST_CASE("malformed quantities are rejected") {
    CHECK_THROWS_AS(parse_time(""), Error);
    CHECK_THROWS_AS(parse_time("fast"), Error);
    CHECK_THROWS_AS(parse_time("5 parsecs"), Error);
    CHECK_THROWS_AS(parse_time("-1ms"), Error);
    CHECK_THROWS_AS(parse_frequency("1 MHzz"), Error);
    CHECK_THROWS_AS(parse_frequency("MHz"), Error);
}

TEST_CASE("angular conversion is an exact factor of two pi") {
    CHECK(hz_to_rad(1.0) == kTwoPi);
    CHECK(rad_to_hz(hz_to_rad(12345.0)) == doctest::Approx(12345.0).epsilon(1e-15));
}

TEST_CASE("format_time picks a readable unit") {
    CHECK(format_time(2.82e-3) == "2.82 ms");
    CHECK(format_time(5e-6) == "5 us");
    CHECK(format_time(0.0) == "0 s");
}
