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

#ifndef SPINBUS_CAVITY_HPP
#define SPINBUS_CAVITY_HPP

// One dot-cavity qubus pass: the Lambda system coupled to a truncated photon
// space in a frame displaced by the coherent amplitude alpha, the conditional
// phase imprinted on the field, and the pass fidelity against amplitude-fitted
// coherent states.
//
// The displaced frame is fixed at the constant input amplitude alpha for the
// whole pass (a -> a + alpha, initial field state |n=0>); the pulse's time
// dependence lives entirely in the cavity-filtered envelope S(t).  Cavity
// photon loss is not a separate Lindblad channel; it enters through the
// effective emission rate Gamma = Gamma_L + (1 - kappa_c/kappa) F(Delta)
// Gamma_0 and through the waveguide loss multiplier applied downstream.

#include <cmath>
#include <complex>
#include <optional>

#include "spinbus/dynamics.hpp"
#include "spinbus/raman.hpp"
#include "spinbus/states.hpp"

namespace spinbus {

struct CavityParams {
    double g = 0.0;                  // rad/ps; 0 = derive from Q, V, lambda
    double kappa = 0.0;              // 1/ps; 0 = derive from Q
    double kappa_c_over_kappa = 1.0; // waveguide share of the cavity decay
    double gamma_l = 0.0;            // 1/ps, emission into non-cavity modes
    double gamma0 = 1.0 / 200.0;     // 1/ps, free-space decay of the dot
    double q_factor = 1000.0;
    double mode_volume = 1.0;        // cubic wavelengths in the medium
    double wavelength = 950.0;       // nm, in vacuum
    double refractive_index = 3.4;

    void validate() const {
        if (wavelength <= 0.0) throw std::invalid_argument("CavityParams: wavelength must be > 0");
        if (mode_volume <= 0.0) throw std::invalid_argument("CavityParams: mode volume must be > 0");
        if (refractive_index <= 0.0) throw std::invalid_argument("CavityParams: bad index");
        if (gamma_l < 0.0 || gamma0 <= 0.0) throw std::invalid_argument("CavityParams: bad rates");
        if (kappa_c_over_kappa < 0.0 || kappa_c_over_kappa > 1.0) {
            throw std::invalid_argument("CavityParams: kappa_c/kappa must lie in [0,1]");
        }
        if (q_factor <= 0.0 && kappa <= 0.0) {
            throw std::invalid_argument("CavityParams: need Q or kappa");
        }
    }
};

struct DerivedCavityRates {
    double g = 0.0;                 // rad/ps
    double kappa = 0.0;             // 1/ps
    double kappa_c = 0.0;           // 1/ps
    double purcell_resonant = 0.0;  // F_P
    double purcell = 0.0;           // F(Delta)
    double gamma = 0.0;             // effective emission rate for the pass
};

// Standard cavity-QED relations: kappa = omega/Q, g^2 = 3 pi c_m^3 Gamma_0 /
// (2 omega^2 V_m), resonant Purcell factor F_P = 3 Q lambda_m^3 / (4 pi^2
// V_m), Lorentzian suppression at detuning Delta, and the effective emission
// rate Gamma = Gamma_L + (1 - kappa_c/kappa) F(Delta) Gamma_0.
inline DerivedCavityRates derive_cavity_rates(const CavityParams& c, double detuning) {
    c.validate();
    DerivedCavityRates r;
    double omega = kTwoPi * kSpeedOfLightNmPerPs / c.wavelength;  // rad/ps
    r.kappa = c.kappa > 0.0 ? c.kappa : omega / c.q_factor;
    r.kappa_c = c.kappa_c_over_kappa * r.kappa;
    double lambda_m = c.wavelength / c.refractive_index;          // nm
    double vol_m = c.mode_volume * lambda_m * lambda_m * lambda_m;
    double c_m = kSpeedOfLightNmPerPs / c.refractive_index;
    r.g = c.g > 0.0 ? c.g
                    : std::sqrt(3.0 * kPi * c_m * c_m * c_m * c.gamma0 /
                                (2.0 * omega * omega * vol_m));
    double q_eff = omega / r.kappa;
    r.purcell_resonant = 3.0 * q_eff * lambda_m * lambda_m * lambda_m / (4.0 * kPi * kPi * vol_m);
    double half_kappa = 0.5 * r.kappa;
    r.purcell = r.purcell_resonant * half_kappa * half_kappa /
                (detuning * detuning + half_kappa * half_kappa);
    r.gamma = c.gamma_l + (1.0 - c.kappa_c_over_kappa) * r.purcell * c.gamma0;
    return r;
}

// J = delta g^2 / (4 Delta^2 + Gamma^2), the dispersive phase rate per photon.
inline double dispersive_coupling(double delta, double detuning, double gamma, double g) {
    return delta * g * g / (4.0 * detuning * detuning + gamma * gamma);
}

// Validity ratio r = [Delta g^2 |alpha|^2 / (4 Delta^2 + Gamma^2)] / delta.
// Callers treat r < 0.1 as comfortably dispersive.
inline double dispersive_validity(double delta, double detuning, double gamma, double g,
                                  Complex alpha) {
    if (delta == 0.0) throw std::invalid_argument("dispersive_validity: delta must be nonzero");
    return detuning * g * g * std::norm(alpha) /
           (4.0 * detuning * detuning + gamma * gamma) / delta;
}

struct QubusRun {
    double delta = 0.0;       // rad/ps
    double detuning = 0.0;    // rad/ps
    double t2 = 1.0;          // ps
    bool no_dephasing = false;
    CavityParams cavity;
    Complex alpha = 0.0;      // displaced-frame coherent amplitude
    PulseShape pulse;         // narrow-band gaussian input
    int n_max = 0;            // Fock truncation; 0 = choose automatically
    IntegratorConfig integrator{1e-9, 1e-9};
};

struct PassResult {
    DensityMatrix final_state;       // displaced frame, qubit frame removed
    double conditional_phase = 0.0;  // radians, |1> branch minus |0> branch
    double pass_fidelity = 0.0;      // with the relative qubit phase optimized
    double fidelity_chi0 = 0.0;      // with the relative qubit phase fixed to 0
    double chi_opt = 0.0;

    Complex branch_mean0 = 0.0, branch_mean1 = 0.0;  // displaced-frame <a> per branch
    Complex lab_mean0 = 0.0, lab_mean1 = 0.0;        // alpha + displaced means
    double population0 = 0.0, population1 = 0.0;
    double coherent_overlap0 = 0.0, coherent_overlap1 = 0.0;

    double validity_ratio = 0.0;
    bool validity_warning = false;   // ratio above 0.5
    bool zero_amplitude = false;     // conditional phase undefined
    double predicted_phase = 0.0;    // from the dispersive oracle
    double s_squared_integral = 0.0; // integral S^2(t) dt over the pass window
    int n_max_used = 0;
    IntegrationStats stats;
};

namespace detail {

inline double wrap_to_pi(double a) {
    double w = std::fmod(a + kPi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w - kPi;
}

struct PassWindow {
    double t0, t1;
};

inline PassWindow pass_window(const PulseShape& pulse, double kappa) {
    double sigma = pulse.amplitude_sigma();
    return {pulse.center - 7.0 * sigma, pulse.center + 7.0 * sigma + 40.0 / kappa};
}

}  // namespace detail

// Dispersive-oracle prediction of the conditional phase,
// integral of delta g^2 S^2(t) / (4 Delta^2 + Gamma^2) dt over the pass.
inline double predict_phase(const QubusRun& run) {
    auto rates = derive_cavity_rates(run.cavity, run.detuning);
    CavityFilter filter{rates.kappa};
    auto window = detail::pass_window(run.pulse, rates.kappa);
    double j0 = dispersive_coupling(run.delta, run.detuning, rates.gamma, rates.g);
    auto s2 = [&](double t) {
        double s = filtered_envelope(run.pulse, filter, t);
        return s * s;
    };
    return j0 * detail::integrate_1d(s2, window.t0, window.t1);
}

// Multiplicative waveguide-loss penalty on a fidelity.
inline double apply_waveguide_loss(double fidelity, double loss_fraction) {
    if (loss_fraction < 0.0 || loss_fraction > 1.0) {
        throw std::invalid_argument("apply_waveguide_loss: loss fraction must lie in [0,1]");
    }
    return fidelity * (1.0 - loss_fraction);
}

// Simulates one qubus pass from (|0> + |1>)/sqrt(2) (x) |n=0> in the
// displaced frame and extracts the conditional field phase and the pass
// fidelity against mean-amplitude-matched coherent states with the relative
// qubit phase chi optimized.
inline PassResult simulate_pass(const QubusRun& run) {
    auto rates = derive_cavity_rates(run.cavity, run.detuning);
    PassResult result;
    result.validity_ratio =
        dispersive_validity(run.delta, run.detuning, rates.gamma, rates.g, run.alpha);
    if (result.validity_ratio > 1.0) {
        throw NumericalError("simulate_pass: dispersive validity ratio " +
                             std::to_string(result.validity_ratio) +
                             " above 1; the dispersive model does not apply");
    }
    result.validity_warning = result.validity_ratio > 0.5;

    CavityFilter filter{rates.kappa};
    auto window = detail::pass_window(run.pulse, rates.kappa);
    auto s2 = [&](double t) {
        double s = filtered_envelope(run.pulse, filter, t);
        return s * s;
    };
    result.s_squared_integral = detail::integrate_1d(s2, window.t0, window.t1);
    result.predicted_phase =
        dispersive_coupling(run.delta, run.detuning, rates.gamma, rates.g) *
        result.s_squared_integral;

    // Truncation sized by the worst branch excursion in the displaced frame:
    // each branch rotates the lab amplitude by roughly its integrated Stark
    // phase, so the field wanders |alpha| |e^{i phi} - 1| from the frame
    // origin, on top of the conditional split |alpha theta|.
    int n_max = run.n_max;
    if (n_max <= 0) {
        double g2s = rates.g * rates.g * result.s_squared_integral;
        double phi0 = g2s / (4.0 * run.detuning);
        double phi1 = g2s / (4.0 * (run.detuning - run.delta));
        double chord = std::max(std::min(2.0, std::abs(2.0 * std::sin(0.5 * phi0))),
                                std::min(2.0, std::abs(2.0 * std::sin(0.5 * phi1))));
        double excursion = std::abs(run.alpha) * chord + 0.5;
        double by_excursion = excursion * excursion + 8.0 * excursion + 10.0;
        double split = std::abs(run.alpha) * result.predicted_phase;
        double by_rule = 4.0 * split * split + 10.0;
        n_max = static_cast<int>(std::ceil(std::max(by_excursion, by_rule)));
    }
    result.n_max_used = n_max;
    int fock_dim = n_max + 1;

    LambdaParams params;
    params.delta = run.delta;
    params.detuning = run.detuning;
    params.gamma = rates.gamma;
    params.t2 = run.t2;
    params.no_dephasing = run.no_dephasing;
    params.drive = CavityDrive{rates.g, run.pulse, filter, run.alpha, fock_dim};

    KetState plus(
        (Vector(3) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0).finished(), Basis{});
    KetState initial = tensor(plus, fock_coherent(0.0, fock_dim));  // displaced-frame vacuum
    DensityMatrix rho0 = projector_onto(initial);

    Trajectory traj = integrate(params, rho0, {window.t0, window.t1}, run.integrator);
    result.stats = traj.stats;
    Matrix rho = traj.final_state();

    double leakage = 0.0;
    for (int dot = 0; dot < 3; ++dot) {
        for (int n = fock_dim - 2; n < fock_dim; ++n) {
            leakage += rho(dot * fock_dim + n, dot * fock_dim + n).real();
        }
    }
    if (leakage > 1e-6) {
        throw TruncationError("simulate_pass: population " + std::to_string(leakage) +
                              " in the top two Fock levels; increase n_max above " +
                              std::to_string(n_max));
    }

    // Remove the deterministic qubit precession accumulated by the window end
    // so chi = 0 is referenced in the frame co-rotating at delta.
    Complex frame = std::exp(kI * run.delta * window.t1);
    rho.middleRows(fock_dim, fock_dim) *= frame;
    rho.middleCols(fock_dim, fock_dim) *= std::conj(frame);

    DensityMatrix rho_final(rho, Basis{fock_dim});
    Matrix a_op = fock_annihilation(fock_dim);

    Matrix block0 = partial_trace_dot(rho_final, 0);
    Matrix block1 = partial_trace_dot(rho_final, 1);
    result.population0 = block0.trace().real();
    result.population1 = block1.trace().real();
    if (result.population0 <= 0.0 || result.population1 <= 0.0) {
        throw NumericalError("simulate_pass: a qubit branch lost all population");
    }
    result.branch_mean0 = (a_op * block0).trace() / result.population0;
    result.branch_mean1 = (a_op * block1).trace() / result.population1;
    result.lab_mean0 = run.alpha + result.branch_mean0;
    result.lab_mean1 = run.alpha + result.branch_mean1;

    double amp_floor = 1e-9 * (1.0 + std::abs(run.alpha));
    if (std::abs(result.lab_mean0) < amp_floor || std::abs(result.lab_mean1) < amp_floor) {
        result.zero_amplitude = true;
        result.conditional_phase = 0.0;
    } else {
        result.conditional_phase =
            detail::wrap_to_pi(std::arg(result.lab_mean1) - std::arg(result.lab_mean0));
    }

    Vector fit0 = fock_coherent(result.branch_mean0, fock_dim);
    Vector fit1 = fock_coherent(result.branch_mean1, fock_dim);
    result.coherent_overlap0 = (fit0.adjoint() * block0 * fit0).real() / result.population0;
    result.coherent_overlap1 = (fit1.adjoint() * block1 * fit1).real() / result.population1;

    // F(chi) = (F00 + F11)/2 + |c| cos(chi + arg c); the optimum is analytic.
    Matrix cross = rho.block(0, fock_dim, fock_dim, fock_dim);
    Complex c01 = 0.5 * (fit0.adjoint() * cross * fit1)(0, 0);
    double f00 = 0.5 * (fit0.adjoint() * block0 * fit0).real();
    double f11 = 0.5 * (fit1.adjoint() * block1 * fit1).real();
    result.pass_fidelity = f00 + f11 + std::abs(c01);
    result.chi_opt = -std::arg(c01);
    result.fidelity_chi0 = f00 + f11 + c01.real();
    result.final_state = std::move(rho_final);
    return result;
}

struct AlphaTuning {
    double alpha = 0.0;          // tuned |alpha| (phase fixed to 0)
    double product = 0.0;        // achieved |alpha theta|
    PassResult pass;
    int passes_run = 0;
};

// Finds |alpha| with |alpha * theta(alpha)| equal to `target` by bisection,
// guarded by the dispersive-validity ceiling.  theta is nearly independent of
// alpha in the dispersive regime, so the bracket from one probe pass is tight
// and the search converges in a handful of passes.
inline AlphaTuning tune_alpha(QubusRun run, double target, double rel_tol = 1e-3) {
    if (target <= 0.0) throw std::invalid_argument("tune_alpha: target must be positive");
    auto rates = derive_cavity_rates(run.cavity, run.detuning);
    double r1 = dispersive_validity(run.delta, run.detuning, rates.gamma, rates.g, 1.0);
    if (r1 <= 0.0) throw TuningError("tune_alpha: no dispersive coupling (g = 0?)");
    double alpha_ceiling = std::sqrt(1.0 / r1);  // validity ratio 1.0

    AlphaTuning tuning;
    auto evaluate = [&](double alpha) {
        run.alpha = alpha;
        tuning.pass = simulate_pass(run);
        ++tuning.passes_run;
        return alpha * std::abs(tuning.pass.conditional_phase);
    };

    double probe = 0.2 * alpha_ceiling;
    double f_probe = evaluate(probe);
    if (f_probe <= 0.0) {
        throw TuningError("tune_alpha: conditional phase vanished at the probe amplitude");
    }
    double theta_est = f_probe / probe;
    double alpha_star = target / theta_est;
    if (alpha_star > alpha_ceiling) {
        throw TuningError(
            "tune_alpha: |alpha theta| = " + std::to_string(target) + " needs alpha = " +
            std::to_string(alpha_star) + ", above the dispersive-validity ceiling " +
            std::to_string(alpha_ceiling) + " (|alpha theta| at the ceiling is about " +
            std::to_string(theta_est * alpha_ceiling) + ")");
    }

    double lo = 0.8 * alpha_star;
    double hi = std::min(1.25 * alpha_star, alpha_ceiling);
    double mid = alpha_star;
    for (int it = 0; it < 24; ++it) {
        double f = evaluate(mid);
        if (std::abs(f - target) <= rel_tol * target) {
            tuning.alpha = mid;
            tuning.product = f;
            return tuning;
        }
        (f < target ? lo : hi) = mid;
        mid = 0.5 * (lo + hi);
    }
    throw TuningError("tune_alpha: bisection failed to reach the target product");
}

}  // namespace spinbus

#endif  // SPINBUS_CAVITY_HPP
