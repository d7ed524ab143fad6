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

#ifndef SPINBUS_DYNAMICS_HPP
#define SPINBUS_DYNAMICS_HPP

// Rotating-frame Hamiltonian and master equation of the driven three-level
// Lambda system, plus the adaptive embedded Runge-Kutta integrator.
//
//   H(t) = delta P1 + Delta Pe
//        + sum_j [ Omega_j(t) sigma_j^+ / 2 + Omega_j^dag(t) sigma_j^- / 2 ]
//
//   drho/dt = -i [H, rho]
//           - (Gamma/2) ( Pe rho + rho Pe - sum_j sigma_j^- rho sigma_j^+ )
//           - (1/T2)    ( P1 rho P0 + P0 rho P1 )
//
// Spontaneous emission recycles |e> into both ground states at Gamma/2 each;
// pure dephasing damps only the 0<->1 coherence.  For the two-qubit cavity
// drive, Omega_j(t) = g S(t) (a + alpha) acts on dot3 (x) fock(N) in the
// frame displaced by the constant amplitude alpha.

#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "spinbus/pulses.hpp"
#include "spinbus/states.hpp"

namespace spinbus {

using EnvelopeFn = std::function<Complex(double)>;

// Classical drive: the intense focused pulse treated as a c-number field.
struct ClassicalDrive {
    EnvelopeFn omega0;
    EnvelopeFn omega1;
};

// Cavity drive: Jaynes-Cummings coupling g modulated by the filtered pulse
// envelope S(t), with the photon operator displaced by alpha.
struct CavityDrive {
    double g = 0.0;          // rad/ps, vacuum Rabi coupling
    PulseShape input_pulse;  // narrow-band gaussian entering the cavity
    CavityFilter filter;
    Complex alpha = 0.0;     // displaced-frame amplitude
    int fock_dim = 0;        // photon levels kept (N+1)
};

using DriveSpec = std::variant<ClassicalDrive, CavityDrive>;

struct LambdaParams {
    double delta = 0.0;      // rad/ps, ground-state (Zeeman) splitting
    double detuning = 0.0;   // rad/ps, Delta
    double gamma = 0.0;      // 1/ps, spontaneous emission rate of |e>
    double t2 = 1.0;         // ps, spin decoherence time
    bool no_dephasing = false;  // explicit T2 = infinity switch
    DriveSpec drive = ClassicalDrive{};

    double clock_period() const { return kTwoPi / delta; }
    double dephasing_rate() const { return no_dephasing ? 0.0 : 1.0 / t2; }

    void validate() const {
        if (gamma < 0.0) throw std::invalid_argument("LambdaParams: gamma must be >= 0");
        if (!no_dephasing && t2 <= 0.0) throw std::invalid_argument("LambdaParams: t2 must be > 0");
    }
};

inline ClassicalDrive symmetric_gaussian_drive(const PulseShape& pulse) {
    auto env = [pulse](double t) { return envelope_at(pulse, t); };
    return ClassicalDrive{env, env};
}

inline ClassicalDrive symmetric_train_drive(const PulseTrain& train) {
    auto scheduled = train_schedule(train);
    auto env = [scheduled](double t) {
        Complex sum = 0.0;
        for (const auto& sp : scheduled) sum += envelope_at(sp.shape, t);
        return sum;
    };
    return ClassicalDrive{env, env};
}

// Evaluates H(t) and the dissipative part of the master equation.  One
// instance owns all static matrices and scratch space, so the integrator's
// right-hand side costs a single dense multiply plus block updates.
class MasterSystem {
  public:
    explicit MasterSystem(LambdaParams params) : params_(std::move(params)) {
        params_.validate();
        if (const auto* cav = std::get_if<CavityDrive>(&params_.drive)) {
            if (cav->fock_dim < 2) {
                throw std::invalid_argument("CavityDrive: fock_dim must be at least 2");
            }
            basis_ = Basis{cav->fock_dim};
        } else {
            const auto& cl = std::get<ClassicalDrive>(params_.drive);
            if (!cl.omega0 || !cl.omega1) {
                throw std::invalid_argument("ClassicalDrive: both envelopes must be defined");
            }
            basis_ = Basis{};
        }
        build_static();
        h_.resize(basis_.dim(), basis_.dim());
        m_.resize(basis_.dim(), basis_.dim());
    }

    const Basis& basis() const { return basis_; }
    const LambdaParams& params() const { return params_; }

    void hamiltonian(double t, Matrix& h) {
        h = h_static_;
        if (const auto* cav = std::get_if<CavityDrive>(&params_.drive)) {
            double s = filtered_envelope(cav->input_pulse, cav->filter, t);
            h.noalias() += (cav->g * s) * coupling_;
        } else {
            const auto& cl = std::get<ClassicalDrive>(params_.drive);
            Complex w0 = cl.omega0(t);
            Complex w1 = cl.omega1(t);
            h(kDotExcited, 0) += 0.5 * w0;
            h(0, kDotExcited) += 0.5 * std::conj(w0);
            h(kDotExcited, 1) += 0.5 * w1;
            h(1, kDotExcited) += 0.5 * std::conj(w1);
        }
    }

    Matrix hamiltonian(double t) {
        Matrix h;
        hamiltonian(t, h);
        return h;
    }

    // drho/dt.  `out` must not alias `rho`.
    void rhs(double t, const Matrix& rho, Matrix& out) {
        hamiltonian(t, h_);
        m_.noalias() = h_ * rho;
        out = kI * (m_.adjoint() - m_);  // -i (H rho - rho H) for Hermitian inputs

        int nf = basis_.composite() ? basis_.fock_dim : 1;
        int eoff = kDotExcited * nf;
        double g2 = 0.5 * params_.gamma;
        if (g2 != 0.0) {
            out.middleRows(eoff, nf) -= g2 * rho.middleRows(eoff, nf);
            out.middleCols(eoff, nf) -= g2 * rho.middleCols(eoff, nf);
            const auto ee = rho.block(eoff, eoff, nf, nf);
            out.block(0, 0, nf, nf) += g2 * ee;
            out.block(nf, nf, nf, nf) += g2 * ee;
        }
        double dz = params_.dephasing_rate();
        if (dz != 0.0) {
            out.block(nf, 0, nf, nf) -= dz * rho.block(nf, 0, nf, nf);
            out.block(0, nf, nf, nf) -= dz * rho.block(0, nf, nf, nf);
        }
    }

  private:
    void build_static() {
        int dim = basis_.dim();
        h_static_ = Matrix::Zero(dim, dim);
        int nf = basis_.composite() ? basis_.fock_dim : 1;
        for (int n = 0; n < nf; ++n) {
            h_static_(1 * nf + n, 1 * nf + n) = params_.delta;
            h_static_(2 * nf + n, 2 * nf + n) = params_.detuning;
        }
        if (const auto* cav = std::get_if<CavityDrive>(&params_.drive)) {
            Matrix a_disp = fock_annihilation(cav->fock_dim);
            a_disp += cav->alpha * Matrix::Identity(cav->fock_dim, cav->fock_dim);
            Matrix raise = Matrix::Zero(dim, dim);
            for (int j = 0; j <= 1; ++j) {
                raise.block(2 * nf, j * nf, nf, nf) += a_disp;
            }
            coupling_ = 0.5 * (raise + raise.adjoint());
        }
    }

    LambdaParams params_;
    Basis basis_;
    Matrix h_static_;
    Matrix coupling_;  // cavity variant only
    Matrix h_, m_;     // scratch
};

inline OperatorMatrix hamiltonian_at(const LambdaParams& params, double t) {
    MasterSystem sys(params);
    return OperatorMatrix(sys.hamiltonian(t), sys.basis());
}

inline Matrix master_rhs(const LambdaParams& params, const DensityMatrix& rho, double t) {
    MasterSystem sys(params);
    require_same_basis(rho.basis, sys.basis(), "master_rhs");
    Matrix out(rho.elements.rows(), rho.elements.cols());
    sys.rhs(t, rho.elements, out);
    return out;
}

// --- adaptive integrator ------------------------------------------------

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 0.0;      // 0 = span length
    double initial_step = 0.0;  // 0 = automatic
    long max_steps = 20'000'000;

    void validate() const {
        if (rel_tol <= 0.0 || abs_tol <= 0.0) {
            throw std::invalid_argument("IntegratorConfig: tolerances must be positive");
        }
    }
};

struct IntegrationStats {
    long steps_accepted = 0;
    long steps_rejected = 0;
    long rhs_evaluations = 0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
    IntegrationStats stats;

    const Matrix& final_state() const { return states.back(); }
};

class IntegrationError : public NumericalError {
  public:
    IntegrationError(const std::string& msg, Trajectory partial)
        : NumericalError(msg), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

  private:
    Trajectory partial_;
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
inline constexpr double kDpC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kDpA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
inline constexpr double kDpB5[7] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84,  0.0};
inline constexpr double kDpB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

inline double error_ratio(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol,
                          double rtol) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j) {
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
            double scale = atol + rtol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
            worst = std::max(worst, std::abs(err(i, j)) / scale);
        }
    }
    return worst;
}

}  // namespace detail

// Integrates the master equation from rho0 over [t0, t1].  The trajectory
// holds the initial state, `store_points` interior samples on an even grid,
// and the final state.  Hermiticity is restored after every accepted step.
inline Trajectory integrate(const LambdaParams& params, const DensityMatrix& rho0,
                            std::pair<double, double> span, const IntegratorConfig& cfg = {},
                            int store_points = 0) {
    cfg.validate();
    MasterSystem sys(params);
    require_same_basis(rho0.basis, sys.basis(), "integrate");
    rho0.validate();

    const double t0 = span.first;
    const double t1 = span.second;
    if (!(t1 > t0)) throw std::invalid_argument("integrate: need t1 > t0");
    const double span_len = t1 - t0;
    const double hmax = cfg.max_step > 0.0 ? cfg.max_step : span_len;

    std::vector<double> sample_times;
    for (int k = 1; k <= store_points; ++k) {
        sample_times.push_back(t0 + span_len * k / (store_points + 1));
    }
    sample_times.push_back(t1);

    Trajectory traj;
    traj.times.push_back(t0);
    traj.states.push_back(rho0.elements);

    const Eigen::Index dim = rho0.elements.rows();
    Matrix y = rho0.elements;
    Matrix k[7], ytmp(dim, dim), y5(dim, dim), y4(dim, dim), err(dim, dim);
    for (auto& ki : k) ki.resize(dim, dim);

    double t = t0;
    sys.rhs(t, y, k[0]);
    ++traj.stats.rhs_evaluations;

    double h = cfg.initial_step;
    if (h <= 0.0) {
        double fn = k[0].norm();
        h = fn > 0.0 ? 0.01 * (y.norm() + cfg.abs_tol) / fn : span_len / 100.0;
    }
    h = std::min(h, hmax);

    std::size_t next_sample = 0;
    auto fail = [&](const std::string& msg) {
        throw IntegrationError("integrate: " + msg + " at t = " + std::to_string(t) + " ps",
                               std::move(traj));
    };

    while (t < t1) {
        if (traj.stats.steps_accepted + traj.stats.steps_rejected >= cfg.max_steps) {
            fail("max_steps exceeded");
        }
        double target = sample_times[next_sample];
        bool hit_sample = false;
        if (t + h >= target - 1e-14 * span_len) {
            h = target - t;
            hit_sample = true;
        }
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0)) {
            fail("step size underflow (tolerance unreachable)");
        }

        for (int s = 1; s < 7; ++s) {
            ytmp = y;
            for (int q = 0; q < s; ++q) {
                if (detail::kDpA[s][q] != 0.0) ytmp.noalias() += (h * detail::kDpA[s][q]) * k[q];
            }
            sys.rhs(t + detail::kDpC[s] * h, ytmp, k[s]);
        }
        traj.stats.rhs_evaluations += 6;

        y5 = y;
        y4 = y;
        for (int s = 0; s < 7; ++s) {
            if (detail::kDpB5[s] != 0.0) y5.noalias() += (h * detail::kDpB5[s]) * k[s];
            if (detail::kDpB4[s] != 0.0) y4.noalias() += (h * detail::kDpB4[s]) * k[s];
        }
        err = y5 - y4;
        double ratio = detail::error_ratio(err, y, y5, cfg.abs_tol, cfg.rel_tol);

        if (ratio <= 1.0) {
            t += h;
            y = 0.5 * (y5 + y5.adjoint().eval());
            ++traj.stats.steps_accepted;
            if (hit_sample) {
                traj.times.push_back(t);
                traj.states.push_back(y);
                if (++next_sample >= sample_times.size()) break;
            }
            sys.rhs(t, y, k[0]);
            ++traj.stats.rhs_evaluations;
            double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
            h = std::min({h * std::clamp(grow, 0.2, 5.0), hmax});
        } else {
            ++traj.stats.steps_rejected;
            h *= std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 1.0);
        }
    }
    return traj;
}

}  // namespace spinbus

#endif  // SPINBUS_DYNAMICS_HPP
