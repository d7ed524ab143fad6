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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "spinbus/pulses.hpp"
#include "spinbus/units.hpp"

using namespace spinbus;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gaussian envelope", "[pulses]") {
    PulseShape p;
    p.peak_rabi = 3.0;
    p.fwhm = 0.1;
    p.center = 1.0;
    p.carrier_phase = 0.4;

    SECTION("peak value at the center") {
        REQUIRE_THAT(std::abs(envelope_at(p, p.center)), WithinAbs(p.peak_rabi, 1e-14));
        REQUIRE_THAT(std::arg(envelope_at(p, p.center)), WithinAbs(0.4, 1e-14));
    }
    SECTION("intensity halves at fwhm/2 from the center") {
        double i0 = std::norm(envelope_at(p, p.center));
        double ihalf = std::norm(envelope_at(p, p.center + 0.5 * p.fwhm));
        REQUIRE_THAT(ihalf / i0, WithinAbs(0.5, 1e-12));
    }
    SECTION("zero amplitude pulse stays zero") {
        p.peak_rabi = 0.0;
        REQUIRE(std::abs(envelope_at(p, 0.93)) == 0.0);
    }
    SECTION("analytic pulse energy matches quadrature") {
        double sigma = p.amplitude_sigma();
        auto intensity = [&](double t) { return std::norm(envelope_at(p, t)); };
        double numeric =
            testing::trapezoid(intensity, p.center - 12 * sigma, p.center + 12 * sigma, 40000);
        REQUIRE_THAT(numeric, WithinRel(pulse_energy_integral(p), 1e-10));
    }
}

TEST_CASE("cavity filter", "[pulses]") {
    SECTION("step response of the single-pole filter") {
        CavityFilter f{2.0};
        REQUIRE(filter_step_response(f, -1.0) == 0.0);
        REQUIRE_THAT(filter_step_response(f, 0.7), WithinAbs(1.0 - std::exp(-0.7), 1e-14));
    }

    PulseShape p;
    p.peak_rabi = 1.0;
    p.fwhm = 20.0;
    p.center = 0.0;

    SECTION("closed form matches numerical convolution") {
        CavityFilter f{0.8};
        double sigma = p.amplitude_sigma();
        for (double t : {-25.0, -6.0, 0.0, 4.0, 18.0, 60.0}) {
            auto integrand = [&](double tau) {
                double u = std::exp(-0.5 * std::pow((t - tau - p.center) / sigma, 2.0));
                return 0.5 * f.kappa * std::exp(-0.5 * f.kappa * tau) * u;
            };
            // substitute tau in [0, 80/kappa]; the kernel is negligible beyond
            double numeric = testing::trapezoid(integrand, 0.0, 80.0 / f.kappa, 200000);
            REQUIRE_THAT(filtered_envelope(p, f, t), WithinAbs(numeric, 1e-8));
        }
    }
    SECTION("fast cavity passes the pulse through") {
        CavityFilter f{1000.0 / p.fwhm};
        double sigma = p.amplitude_sigma();
        double worst = 0.0;
        for (double t = -3.0 * p.fwhm; t <= 3.0 * p.fwhm; t += 0.37) {
            double direct = std::exp(-0.5 * std::pow((t - p.center) / sigma, 2.0));
            worst = std::max(worst, std::abs(filtered_envelope(p, f, t) - direct));
        }
        REQUIRE(worst < 1e-2);
    }
    SECTION("20 ps pulse through a Q=1000 optical cavity keeps most of its peak") {
        double omega = kTwoPi * kSpeedOfLightNmPerPs / 950.0;
        CavityFilter f{omega / 1000.0};
        double peak = 0.0;
        for (double t = -30.0; t <= 30.0; t += 0.01) {
            peak = std::max(peak, filtered_envelope(p, f, t));
        }
        REQUIRE(peak >= 0.9);
        REQUIRE(peak <= 1.0);
    }
    SECTION("very early and very late times stay finite and tiny") {
        CavityFilter f{0.5};
        REQUIRE(filtered_envelope(p, f, -400.0) >= 0.0);
        REQUIRE(filtered_envelope(p, f, -400.0) < 1e-30);
        REQUIRE(filtered_envelope(p, f, 900.0) >= 0.0);
        REQUIRE(filtered_envelope(p, f, 900.0) < 1e-30);
    }
}

TEST_CASE("train scheduling", "[pulses]") {
    PulseShape p;
    p.peak_rabi = 1.0;
    p.fwhm = 0.1;

    SECTION("zero delay in slot zero arrives at t = 0") {
        PulseTrain train{10.0, {{0, 0.0, p}}};
        auto sched = train_schedule(train);
        REQUIRE(sched.size() == 1);
        REQUIRE_THAT(sched[0].arrival_time, WithinAbs(0.0, 1e-14));
    }
    SECTION("quarter delay in slot two arrives at 22.5 ps") {
        PulseTrain train{10.0, {{2, 0.25, p}}};
        REQUIRE_THAT(train_schedule(train)[0].arrival_time, WithinAbs(22.5, 1e-12));
    }
    SECTION("overlapping pulses are rejected") {
        PulseTrain train{10.0, {{0, 0.0, p}, {0, 0.02, p}}};
        REQUIRE_THROWS_AS(train_schedule(train), std::invalid_argument);
    }
    SECTION("delays wrap modulo one period") {
        PulseTrain train{10.0, {{0, 1.25, p}}};
        REQUIRE_THAT(train_schedule(train)[0].arrival_time, WithinAbs(2.5, 1e-12));
    }
}
