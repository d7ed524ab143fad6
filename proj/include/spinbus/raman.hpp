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

#ifndef SPINBUS_RAMAN_HPP
#define SPINBUS_RAMAN_HPP

// Adiabatic-elimination effective theory of the driven Lambda system: the
// effective magnetic field, delay-controlled rotations, and the compiler from
// SU(2) targets to pulse trains.
//
// Sign conventions, fixed here and verified against the full master-equation
// dynamics by the test suite:
//
//  * In the computational basis (|0>,|1>) with sigma_z = diag(1,-1), the
//    effective qubit Hamiltonian is H_eff = G + B.S with S = sigma/2 and the
//    field components as given by effective_field().  Free precession
//    (B = (0,0,-delta)) then reproduces d rho_01/dt = +i delta rho_01.
//  * A pulse arriving a fraction f of a clock period after a clock edge
//    implements the delayed-rotation unitary with phase phi = -2 pi f; the
//    equatorial rotation axis advances with delay.  The propagator over one
//    full clock period, expressed in the computational basis, is
//    U(theta, pi - 2 pi f): the pi offset reflects that the bare Raman kick
//    axis (which defines "+x" of the rotation frame) is the -x direction of
//    the sigma_x Bloch frame.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "spinbus/dynamics.hpp"
#include "spinbus/pulses.hpp"
#include "spinbus/states.hpp"

namespace spinbus {

using Matrix2 = Eigen::Matrix2cd;

inline Matrix2 pauli_x() { return (Matrix2() << 0, 1, 1, 0).finished(); }
inline Matrix2 pauli_y() { return (Matrix2() << 0, -kI, kI, 0).finished(); }
inline Matrix2 pauli_z() { return (Matrix2() << 1, 0, 0, -1).finished(); }

// exp(-i phi S_z), exp(-i theta S_x) with S = sigma/2.
inline Matrix2 rz(double phi) {
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = std::exp(-kI * (0.5 * phi));
    m(1, 1) = std::exp(kI * (0.5 * phi));
    return m;
}

inline Matrix2 rx(double theta) {
    Matrix2 m;
    double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    m << c, -kI * s, -kI * s, c;
    return m;
}

inline double wrap_angle_2pi(double a) {
    double w = std::fmod(a, kTwoPi);
    return w < 0.0 ? w + kTwoPi : w;
}

struct EffectiveField {
    double bx = 0.0, by = 0.0, bz = 0.0;  // rad/ps
    double global_phase_rate = 0.0;       // rad/ps, the G(t) term
    bool adiabaticity_warning = false;    // |Delta| under 10x the other scales
};

// Effective field of the adiabatically eliminated Lambda system at one
// instant, for drive amplitudes omega0, omega1.
inline EffectiveField effective_field(const LambdaParams& p, Complex omega0, Complex omega1) {
    if (p.detuning == 0.0) {
        throw std::invalid_argument("effective_field: adiabatic elimination needs Delta != 0");
    }
    double denom = 4.0 * p.detuning * p.detuning + p.gamma * p.gamma;
    double n0 = std::norm(omega0), n1 = std::norm(omega1);
    EffectiveField f;
    f.bz = -p.delta + (p.detuning * (n1 - n0) + p.delta * n0) / denom;
    Complex transverse = -2.0 * p.detuning * std::conj(omega1) * omega0 / denom;
    f.bx = transverse.real();
    f.by = -transverse.imag();
    f.global_phase_rate = 0.5 * p.delta - 0.5 * p.detuning * (n0 + n1) / denom;
    double drive_scale = std::sqrt(std::max(n0, n1));
    f.adiabaticity_warning =
        std::abs(p.detuning) < 10.0 * std::max({drive_scale, std::abs(p.delta), p.gamma});
    return f;
}

// |Omega_eff| = sqrt( 4 Delta^2 |Omega1|^4 / (4 Delta^2 + Gamma^2)^2 + delta^2 )
// for the symmetric Lambda system.
inline double effective_rabi(const LambdaParams& p, Complex omega1) {
    double denom = 4.0 * p.detuning * p.detuning + p.gamma * p.gamma;
    double n1 = std::norm(omega1);
    double kick = 2.0 * std::abs(p.detuning) * n1 / denom;
    return std::sqrt(kick * kick + p.delta * p.delta);
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate_1d(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol * std::max(1.0, std::abs(whole)), 48);
}

}  // namespace detail

// Rotation angle delivered by one shaped pulse: the excess of the exact
// effective Rabi radical over the free-precession rate delta, integrated over
// the pulse.  The delta baseline is precession already carried by the clock
// factors of the delayed-rotation unitary, so only the excess turns the spin.
inline double pulse_rotation_angle(const LambdaParams& p, const PulseShape& pulse) {
    double sigma = pulse.amplitude_sigma();
    auto integrand = [&](double t) {
        return effective_rabi(p, envelope_at(pulse, t)) - std::abs(p.delta);
    };
    return detail::integrate_1d(integrand, pulse.center - 8.0 * sigma, pulse.center + 8.0 * sigma);
}

struct RotationSpec {
    double theta = 0.0;  // rad, in [0, 2 pi)
    double phi = 0.0;    // rad, in [0, 2 pi); clock phase of the rotation axis
};

// Delayed-rotation unitary U = -exp[-i theta (S_x cos phi - S_y sin phi)],
// global sign retained.  Identically equal to
// exp(i phi S_z) exp(-i theta S_x) exp(i (2 pi - phi) S_z).
inline Matrix2 rotation_unitary(const RotationSpec& spec) {
    double c = std::cos(0.5 * spec.theta), s = std::sin(0.5 * spec.theta);
    Matrix2 u;
    u(0, 0) = -c;
    u(1, 1) = -c;
    u(0, 1) = kI * s * std::exp(kI * spec.phi);
    u(1, 0) = kI * s * std::exp(-kI * spec.phi);
    return u;
}

// Eq-5 phase of a pulse arriving delay_fraction of a period after a clock
// edge.  phi is the precession still to run before the next edge.
inline double delay_fraction_to_phi(double delay_fraction) {
    return wrap_angle_2pi(-kTwoPi * delay_fraction);
}

// One-clock-period propagator in the computational basis for a pulse of
// rotation angle theta arriving at delay_fraction.  Equal to the delayed
// rotation conjugated into the sigma Bloch frame (axis flip x,y -> -x,-y).
inline Matrix2 period_propagator(double theta, double delay_fraction) {
    return rotation_unitary({theta, wrap_angle_2pi(kPi - kTwoPi * delay_fraction)});
}

// Gate distance insensitive to global phase: 1 - |tr(U^dag V)| / 2.
inline double su2_distance(const Matrix2& u, const Matrix2& v) {
    return 1.0 - 0.5 * std::abs((u.adjoint() * v).trace());
}

struct CompiledPulse {
    int slot = 0;
    double delay_fraction = 0.0;
    RotationSpec rotation;
};

struct CompiledSchedule {
    double clock_period = 0.0;
    std::vector<CompiledPulse> pulses;  // execution order
    double wait_fraction = 0.0;         // trailing free precession, fraction of a period
};

// Recomposition of a schedule: product of the emitted delayed-rotation
// unitaries (later pulses act from the left) followed by the trailing wait.
inline Matrix2 recompose(const CompiledSchedule& schedule) {
    Matrix2 u = Matrix2::Identity();
    for (const auto& p : schedule.pulses) u = rotation_unitary(p.rotation) * u;
    if (schedule.wait_fraction != 0.0) u = rz(-kTwoPi * schedule.wait_fraction) * u;
    return u;
}

// Compiles an arbitrary 2x2 unitary into at most three delayed rotations via
// Z-X-Z Euler angles.  The two z factors become the arrival delay of the
// middle pulse and a pair of pi rotations about axes split by half the
// residual z angle.  A pure z target compiles to an empty train plus a
// documented wait; free precession implements it.
inline CompiledSchedule compile_su2(const Matrix2& target, double clock_period) {
    if (clock_period <= 0.0) throw std::invalid_argument("compile_su2: bad clock period");
    if ((target.adjoint() * target - Matrix2::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("compile_su2: target is not unitary");
    }
    Complex det = target.determinant();
    Matrix2 u = target / std::sqrt(det);  // SU(2) up to overall sign

    CompiledSchedule schedule;
    schedule.clock_period = clock_period;

    const double kZeroTol = 1e-12;
    if (std::abs(u(0, 1)) < kZeroTol && std::abs(u(1, 0)) < kZeroTol) {
        // pure z rotation Rz(chi)
        double chi = -2.0 * std::arg(u(0, 0));
        schedule.wait_fraction = wrap_angle_2pi(-chi) / kTwoPi;
        return schedule;
    }

    // u = Rz(gamma) Rx(beta) Rz(alpha)
    double beta = 2.0 * std::atan2(std::abs(u(1, 0)), std::abs(u(0, 0)));
    double gp, gm;  // (gamma+alpha)/2, (gamma-alpha)/2
    if (std::abs(u(0, 0)) > kZeroTol) {
        gp = -std::arg(u(0, 0));
    } else {
        gp = 0.0;
    }
    gm = -std::arg(u(0, 1)) - 0.5 * kPi;
    double gamma = gp + gm;
    double psi = 2.0 * gp;  // residual z angle after pulling Rz(gamma) through

    auto push_pulse = [&](double theta, double axis_angle) {
        if (std::abs(theta) < 1e-12) return;
        RotationSpec spec;
        spec.theta = wrap_angle_2pi(theta);
        spec.phi = wrap_angle_2pi(-axis_angle);
        CompiledPulse p;
        p.rotation = spec;
        // delay phase equals the axis angle: phi = -2 pi f
        p.delay_fraction = wrap_angle_2pi(axis_angle) / kTwoPi;
        schedule.pulses.push_back(p);
    };

    // target ~ A(beta, gamma) Rz(psi); Rz(psi) via two pi rotations whose
    // axes are split by psi/2; rightmost factors execute first.
    double psi_w = wrap_angle_2pi(psi);
    if (psi_w > 1e-12 && kTwoPi - psi_w > 1e-12) {
        push_pulse(kPi, 0.0);
        push_pulse(kPi, 0.5 * psi);
    }
    push_pulse(beta, gamma);

    // pack into slots so arrival times increase
    double prev = -1.0;
    for (auto& p : schedule.pulses) {
        int slot = 0;
        while (slot + p.delay_fraction <= prev) ++slot;
        p.slot = slot;
        prev = slot + p.delay_fraction;
    }
    return schedule;
}

// Calibrates peak Rabi amplitudes so each compiled rotation angle comes out
// of a physical gaussian pulse of the given width, and lays the pulses onto
// the master clock.  Monotone bisection on the peak amplitude.
inline PulseTrain materialize_train(const CompiledSchedule& schedule, const LambdaParams& params,
                                    double pulse_fwhm) {
    PulseTrain train;
    train.clock_period = schedule.clock_period;
    for (const auto& p : schedule.pulses) {
        PulseShape shape;
        shape.fwhm = pulse_fwhm;
        shape.carrier_phase = 0.0;
        double lo = 0.0;
        double hi = std::sqrt(2.0 * std::abs(params.detuning) * p.rotation.theta /
                              (shape.amplitude_sigma() * std::sqrt(kPi)));
        shape.peak_rabi = hi;
        while (pulse_rotation_angle(params, shape) < p.rotation.theta) {
            lo = hi;
            hi *= 2.0;
            shape.peak_rabi = hi;
            if (hi > 1e12) throw NumericalError("materialize_train: cannot reach rotation angle");
        }
        for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
            shape.peak_rabi = 0.5 * (lo + hi);
            (pulse_rotation_angle(params, shape) < p.rotation.theta ? lo : hi) = shape.peak_rabi;
        }
        shape.peak_rabi = 0.5 * (lo + hi);
        train.entries.push_back({p.slot, p.delay_fraction, shape});
    }
    return train;
}

}  // namespace spinbus

#endif  // SPINBUS_RAMAN_HPP
