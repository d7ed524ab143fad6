// Copyright 2026 The spinbus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINBUS_UNITS_HPP
#define SPINBUS_UNITS_HPP

// Internal unit system: time in picoseconds, all frequencies and rates as
// angular frequencies in rad/ps.  A quoted frequency "f GHz" enters as
// 2*pi*f*1e-3 rad/ps, so a 100 GHz splitting has clock period 2*pi/delta
// = 10 ps.  Conversions happen once, at the configuration boundary; the
// rest of the code never sees Hz.

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "spinbus/errors.hpp"

namespace spinbus {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Speed of light in nm/ps.
inline constexpr double kSpeedOfLightNmPerPs = 299792.458;

// rad/ps per unit of ordinary frequency.
inline constexpr double kRadPerPsPerTHz = kTwoPi;
inline constexpr double kRadPerPsPerGHz = kTwoPi * 1e-3;

enum class Dimension {
    frequency,   // -> rad/ps (angular)
    time,        // -> ps
    rate,        // -> 1/ps
    length,      // -> nm
    angle,       // -> rad
    dimensionless,
};

namespace detail {

struct UnitEntry {
    const char* suffix;
    Dimension dim;
    double factor;
};

// Longest suffixes first so "ps" does not shadow "fs" etc.
inline constexpr UnitEntry kUnitTable[] = {
    {"THz", Dimension::frequency, kRadPerPsPerTHz},
    {"GHz", Dimension::frequency, kRadPerPsPerGHz},
    {"MHz", Dimension::frequency, kTwoPi * 1e-6},
    {"kHz", Dimension::frequency, kTwoPi * 1e-9},
    {"Hz", Dimension::frequency, kTwoPi * 1e-12},
    {"rad/ps", Dimension::frequency, 1.0},
    {"fs", Dimension::time, 1e-3},
    {"ps", Dimension::time, 1.0},
    {"ns", Dimension::time, 1e3},
    {"us", Dimension::time, 1e6},
    {"ms", Dimension::time, 1e9},
    {"s", Dimension::time, 1e12},
    {"/fs", Dimension::rate, 1e3},
    {"/ps", Dimension::rate, 1.0},
    {"/ns", Dimension::rate, 1e-3},
    {"/us", Dimension::rate, 1e-6},
    {"nm", Dimension::length, 1.0},
    {"um", Dimension::length, 1e3},
    {"deg", Dimension::angle, kPi / 180.0},
    {"rad", Dimension::angle, 1.0},
};

}  // namespace detail

// Parses "100GHz", "0.1 THz", "200ps", "0.005/ps", "950nm", "90deg", ...
// into the internal unit for the expected dimension.  Bare numbers are
// accepted only for Dimension::dimensionless; everything else must carry a
// suffix.
inline double parse_quantity(const std::string& text, Dimension expected) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse quantity '" + text + "'");
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string suffix = text.substr(pos);

    if (suffix.empty()) {
        if (expected == Dimension::dimensionless) return value;
        throw ConfigError("quantity '" + text + "' is missing a unit suffix");
    }
    if (expected == Dimension::dimensionless) {
        throw ConfigError("quantity '" + text + "' must be a bare number");
    }
    for (const auto& entry : detail::kUnitTable) {
        if (suffix == entry.suffix) {
            if (entry.dim != expected) {
                throw ConfigError("quantity '" + text + "' has the wrong dimension");
            }
            return value * entry.factor;
        }
    }
    throw ConfigError("unknown unit suffix '" + suffix + "' in '" + text + "'");
}

}  // namespace spinbus

#endif  // SPINBUS_UNITS_HPP
