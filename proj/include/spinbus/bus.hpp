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

#ifndef SPINBUS_BUS_HPP
#define SPINBUS_BUS_HPP

// Exact coherent-state phase-space engine for qubit-conditioned bus programs.
//
// A program is an ordered list of operations, first entry executed first.
// The algebra is exact:
//   displace(beta):        alpha -> alpha + beta, phase += Im(beta conj(alpha))
//                          (the D(a)D(b) = e^{i Im(a conj(b))} D(a+b) convention)
//   cond_rotate(q, theta): alpha -> alpha e^{i z_q theta}, no phase
// with z_q = +-1 the S_z eigenvalue of qubit q scaled to +-1.  Coherent
// states rotate rigidly because the rotation generator is theta z_q a^dag a.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "spinbus/cavity.hpp"
#include "spinbus/states.hpp"

namespace spinbus {

struct BusOp {
    enum class Kind { displace, cond_rotate };
    Kind kind = Kind::displace;
    Complex beta = 0.0;   // displace only
    int qubit_id = 1;     // cond_rotate only, 1 or 2
    double theta = 0.0;   // cond_rotate only

    static BusOp displace(Complex beta) {
        BusOp op;
        op.kind = Kind::displace;
        op.beta = beta;
        return op;
    }
    static BusOp cond_rotate(int qubit_id, double theta) {
        if (qubit_id != 1 && qubit_id != 2) {
            throw std::invalid_argument("BusOp: qubit_id must be 1 or 2");
        }
        BusOp op;
        op.kind = Kind::cond_rotate;
        op.qubit_id = qubit_id;
        op.theta = theta;
        return op;
    }
};

struct BusProgram {
    std::vector<BusOp> ops;  // execution order
};

struct BranchState {
    int z1 = +1, z2 = +1;
    Complex amplitude = 0.0;
    double phase = 0.0;  // accumulated, radians
    bool closed = false; // returned to the start amplitude
};

struct BusEvaluation {
    std::array<BranchState, 4> branches;  // (z1,z2) = (+,+), (+,-), (-,+), (-,-)
    Eigen::Matrix4cd gate;                // diag(e^{i phase}) in that branch order
    bool all_closed = false;

    // Phi_e = phi(+,+) - phi(+,-) - phi(-,+) + phi(-,-)
    double entangling_phase() const {
        return branches[0].phase - branches[1].phase - branches[2].phase + branches[3].phase;
    }
};

inline BusEvaluation evaluate(const BusProgram& program, Complex start_amplitude) {
    BusEvaluation out;
    const int zs[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
    for (int b = 0; b < 4; ++b) {
        BranchState branch;
        branch.z1 = zs[b][0];
        branch.z2 = zs[b][1];
        branch.amplitude = start_amplitude;
        for (const auto& op : program.ops) {
            if (op.kind == BusOp::Kind::displace) {
                branch.phase += (op.beta * std::conj(branch.amplitude)).imag();
                branch.amplitude += op.beta;
            } else {
                int z = op.qubit_id == 1 ? branch.z1 : branch.z2;
                branch.amplitude *= std::exp(kI * (static_cast<double>(z) * op.theta));
            }
        }
        branch.closed = std::abs(branch.amplitude - start_amplitude) < 1e-12;
        out.branches[b] = branch;
    }
    out.gate.setZero();
    out.all_closed = true;
    for (int b = 0; b < 4; ++b) {
        out.gate(b, b) = std::exp(kI * out.branches[b].phase);
        out.all_closed = out.all_closed && out.branches[b].closed;
    }
    return out;
}

// Conditional-displacement commutator loop along orthogonal quadratures,
//   [R1(t) D(beta) R1(-t)] [R2(t) D(i beta) R2(-t)]
//   [R1(t) D(-beta) R1(-t)] [R2(t) D(-i beta) R2(-t)],
// rightmost factor executed first.  Closed for every branch; the entangling
// phase is Phi_e = -8 beta^2 sin^2 theta.
inline BusProgram build_cz(double beta, double theta) {
    if (!(beta > 0.0)) throw std::invalid_argument("build_cz: beta must be positive");
    if (!(theta > 0.0 && theta < 0.5 * kPi)) {
        throw std::invalid_argument("build_cz: theta must lie in (0, pi/2)");
    }
    BusProgram p;
    auto gadget = [&p, theta](int qubit, Complex displacement) {
        p.ops.push_back(BusOp::cond_rotate(qubit, -theta));
        p.ops.push_back(BusOp::displace(displacement));
        p.ops.push_back(BusOp::cond_rotate(qubit, theta));
    };
    gadget(2, Complex(0.0, -beta));
    gadget(1, Complex(-beta, 0.0));
    gadget(2, Complex(0.0, beta));
    gadget(1, Complex(beta, 0.0));
    return p;
}

// Bus displacement magnitude that makes build_cz maximally entangling
// (|Phi_e| = pi) for a given per-pass rotation theta.
inline double cz_beta_for_pi(double theta) {
    double s = std::abs(std::sin(theta));
    if (s <= 0.0) throw std::invalid_argument("cz_beta_for_pi: sin(theta) vanishes");
    return std::sqrt(kPi / 8.0) / s;
}

// Independent oracle: applies the program to truncated-Fock coherent states
// with explicit displacement and number-rotation matrices, and compares each
// branch against the phase-space prediction e^{i phi} |alpha_final>.
// Returns the worst vector distance over the four branches.
inline double verify_against_fock(const BusProgram& program, int n_max,
                                  Complex start_amplitude = 0.0) {
    if (n_max < 3) throw std::invalid_argument("verify_against_fock: n_max too small");
    int dim = n_max + 1;
    auto prediction = evaluate(program, start_amplitude);

    std::vector<Matrix> displacements;
    displacements.reserve(program.ops.size());
    for (const auto& op : program.ops) {
        if (op.kind == BusOp::Kind::displace) {
            displacements.push_back(fock_displacement(op.beta, dim));
        }
    }

    double worst = 0.0;
    for (const auto& branch : prediction.branches) {
        Vector psi = fock_coherent(start_amplitude, dim);
        std::size_t di = 0;
        for (const auto& op : program.ops) {
            if (op.kind == BusOp::Kind::displace) {
                psi = displacements[di++] * psi;
            } else {
                int z = op.qubit_id == 1 ? branch.z1 : branch.z2;
                for (int n = 0; n < dim; ++n) {
                    psi(n) *= std::exp(kI * (static_cast<double>(z) * op.theta *
                                             static_cast<double>(n)));
                }
            }
            double leak = std::norm(psi(dim - 1)) + std::norm(psi(dim - 2));
            if (leak > 1e-8) {
                throw TruncationError("verify_against_fock: truncation leakage " +
                                      std::to_string(leak) + "; increase n_max");
            }
        }
        Vector expect = std::exp(kI * branch.phase) * fock_coherent(branch.amplitude, dim);
        worst = std::max(worst, (psi - expect).norm());
    }
    return worst;
}

// Composes per-pass physical fidelities into a gate-level estimate.
inline double gate_fidelity_estimate(const std::vector<double>& pass_fidelities,
                                     double waveguide_loss) {
    double product = 1.0;
    for (double f : pass_fidelities) {
        if (f < 0.0 || f > 1.0) {
            throw std::invalid_argument("gate_fidelity_estimate: pass fidelity outside [0,1]");
        }
        product *= f;
    }
    return apply_waveguide_loss(product, waveguide_loss);
}

}  // namespace spinbus

#endif  // SPINBUS_BUS_HPP
