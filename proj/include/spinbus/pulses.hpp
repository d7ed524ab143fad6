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

#ifndef SPINBUS_PULSES_HPP
#define SPINBUS_PULSES_HPP

// Pulse envelopes and clock-referenced pulse trains.
//
// All pulses are transform-limited: a real positive envelope times a constant
// carrier phase.  "fwhm" is always the full width at half maximum of the
// intensity envelope |Omega|^2; the amplitude envelope is sqrt(2) wider.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "spinbus/errors.hpp"
#include "spinbus/units.hpp"

namespace spinbus {

enum class PulseKind { gaussian, filtered_gaussian };

struct PulseShape {
    PulseKind kind = PulseKind::gaussian;
    double peak_rabi = 0.0;      // rad/ps
    double fwhm = 0.0;           // ps, intensity FWHM
    double center = 0.0;         // ps
    double carrier_phase = 0.0;  // rad

    void validate() const {
        if (fwhm <= 0.0) throw std::invalid_argument("PulseShape: fwhm must be positive");
        if (peak_rabi < 0.0) throw std::invalid_argument("PulseShape: peak_rabi must be >= 0");
    }

    // Standard deviation of the amplitude envelope exp(-(t-c)^2 / (2 sigma^2)).
    double amplitude_sigma() const { return fwhm / (2.0 * std::sqrt(std::log(2.0))); }
    double amplitude_fwhm() const { return std::sqrt(2.0) * fwhm; }
};

struct CavityFilter {
    double kappa = 0.0;  // 1/ps, cavity energy decay rate

    void validate() const {
        if (kappa <= 0.0) throw std::invalid_argument("CavityFilter: kappa must be positive");
    }
};

namespace detail {

// Scaled complementary error function exp(z^2) erfc(z) for z >= 0.
inline double erfcx_positive(double z) {
    if (z < 25.0) return std::exp(z * z) * std::erfc(z);
    // asymptotic expansion, relative error < 1e-16 for z >= 25
    double inv2z2 = 1.0 / (2.0 * z * z);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n <= 6; ++n) {
        term *= -(2.0 * n - 1.0) * inv2z2;
        sum += term;
    }
    return sum / (z * std::sqrt(kPi));
}

}  // namespace detail

inline std::complex<double> envelope_at(const PulseShape& p, double t) {
    p.validate();
    if (p.kind != PulseKind::gaussian) {
        throw std::invalid_argument("envelope_at: filtered pulses need a CavityFilter overload");
    }
    double sigma = p.amplitude_sigma();
    double x = (t - p.center) / sigma;
    return p.peak_rabi * std::exp(-0.5 * x * x) *
           std::complex<double>(std::cos(p.carrier_phase), std::sin(p.carrier_phase));
}

// Analytic value of integral |Omega(t)|^2 dt for a gaussian pulse.
inline double pulse_energy_integral(const PulseShape& p) {
    double sigma = p.amplitude_sigma();
    return p.peak_rabi * p.peak_rabi * sigma * std::sqrt(kPi);
}

// Single-pole cavity field filter, unit DC gain: h(tau) = (kappa/2) e^{-kappa tau/2}.
// Step response, for reference and tests.
inline double filter_step_response(const CavityFilter& f, double t) {
    f.validate();
    return t <= 0.0 ? 0.0 : 1.0 - std::exp(-0.5 * f.kappa * t);
}

// Cavity-filtered envelope S(t): the convolution of the peak-normalized
// gaussian input amplitude with h(tau), in closed form.  With k = kappa/2,
// x = t - center and sigma the amplitude width,
//   S(t) = k sigma sqrt(pi/2) erfcx(z) exp(-x^2/(2 sigma^2)),
//   z = (k sigma^2 - x) / (sigma sqrt(2)).
// The erfcx form stays finite on both tails; for z < 0 the reflection
// erfcx(z) = 2 exp(z^2) - erfcx(-z) splits off the pure ring-down term.
inline double filtered_envelope(const PulseShape& p, const CavityFilter& f, double t) {
    p.validate();
    f.validate();
    if (p.kind != PulseKind::gaussian && p.kind != PulseKind::filtered_gaussian) {
        throw std::invalid_argument("filtered_envelope: unsupported pulse kind");
    }
    double sigma = p.amplitude_sigma();
    double k = 0.5 * f.kappa;
    double x = t - p.center;
    double z = (k * sigma * sigma - x) / (sigma * std::sqrt(2.0));
    double prefactor = k * sigma * std::sqrt(kPi / 2.0);
    double gauss = std::exp(-0.5 * (x / sigma) * (x / sigma));
    if (z >= 0.0) {
        return prefactor * detail::erfcx_positive(z) * gauss;
    }
    // late times: x > k sigma^2 > 0, so the exponent below is negative
    double ringdown = 2.0 * std::exp(0.5 * k * k * sigma * sigma - k * x);
    return prefactor * (ringdown - detail::erfcx_positive(-z) * gauss);
}

// Complex envelope including peak Rabi and carrier phase, for either kind.
inline std::complex<double> envelope_at(const PulseShape& p, const CavityFilter& f, double t) {
    if (p.kind == PulseKind::gaussian) return envelope_at(p, t);
    return p.peak_rabi * filtered_envelope(p, f, t) *
           std::complex<double>(std::cos(p.carrier_phase), std::sin(p.carrier_phase));
}

// --- pulse trains -----------------------------------------------------------

struct TrainEntry {
    int slot = 0;                // which clock period the pulse belongs to
    double delay_fraction = 0.0; // in [0,1), fraction of the clock period
    PulseShape shape;
};

struct PulseTrain {
    double clock_period = 0.0;  // ps, = 2*pi/delta
    std::vector<TrainEntry> entries;
};

struct ScheduledPulse {
    double arrival_time = 0.0;  // ps, absolute center on the master clock
    PulseShape shape;
};

// Expands slot/delay-fraction entries into absolute arrival times.  Pulses
// whose centers sit closer than five amplitude FWHMs overlap too much for the
// disjoint-rotation composition to hold, and are rejected.
inline std::vector<ScheduledPulse> train_schedule(const PulseTrain& train) {
    if (train.clock_period <= 0.0) {
        throw std::invalid_argument("train_schedule: clock period must be positive");
    }
    std::vector<ScheduledPulse> out;
    out.reserve(train.entries.size());
    for (const auto& e : train.entries) {
        e.shape.validate();
        double frac = e.delay_fraction - std::floor(e.delay_fraction);  // modulo one period
        PulseShape shape = e.shape;
        double arrival = (static_cast<double>(e.slot) + frac) * train.clock_period;
        shape.center = arrival;
        out.push_back({arrival, shape});
    }
    std::sort(out.begin(), out.end(),
              [](const ScheduledPulse& a, const ScheduledPulse& b) {
                  return a.arrival_time < b.arrival_time;
              });
    for (std::size_t i = 1; i < out.size(); ++i) {
        double min_sep = 5.0 * std::max(out[i - 1].shape.amplitude_fwhm(),
                                        out[i].shape.amplitude_fwhm());
        if (out[i].arrival_time - out[i - 1].arrival_time < min_sep) {
            throw std::invalid_argument("train_schedule: pulses at " +
                                        std::to_string(out[i - 1].arrival_time) + " ps and " +
                                        std::to_string(out[i].arrival_time) +
                                        " ps overlap (separation under 5 amplitude FWHM)");
        }
    }
    return out;
}

}  // namespace spinbus

#endif  // SPINBUS_PULSES_HPP
