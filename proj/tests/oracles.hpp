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

#ifndef SPINBUS_TESTS_ORACLES_HPP
#define SPINBUS_TESTS_ORACLES_HPP

// Test-only oracles, kept independent of the adaptive integration path they
// cross-check: a fixed-step classical RK4 march, brute-force quadrature, and
// seeded random generators.

#include <complex>
#include <random>

#include "spinbus/dynamics.hpp"
#include "spinbus/raman.hpp"

namespace spinbus::testing {

// Classical fixed-step 4th-order Runge-Kutta on the same right-hand side.
inline Matrix fixed_step_rk4(const LambdaParams& params, const Matrix& rho0, double t0, double t1,
                             double h) {
    MasterSystem sys(params);
    Eigen::Index dim = rho0.rows();
    Matrix y = rho0;
    Matrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);
    long steps = static_cast<long>(std::ceil((t1 - t0) / h));
    double hs = (t1 - t0) / static_cast<double>(steps);
    double t = t0;
    for (long i = 0; i < steps; ++i) {
        sys.rhs(t, y, k1);
        tmp = y + 0.5 * hs * k1;
        sys.rhs(t + 0.5 * hs, tmp, k2);
        tmp = y + 0.5 * hs * k2;
        sys.rhs(t + 0.5 * hs, tmp, k3);
        tmp = y + hs * k3;
        sys.rhs(t + hs, tmp, k4);
        y += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += hs;
    }
    return y;
}

// Plain trapezoid quadrature, for cross-checking closed forms.
template <typename F>
double trapezoid(F f, double a, double b, int n) {
    double h = (b - a) / n;
    double sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) sum += f(a + i * h);
    return sum * h;
}

inline Eigen::Matrix2cd random_su2(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::Vector4d q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    q.normalize();
    Eigen::Matrix2cd u;
    u << Complex(q(0), q(3)), Complex(q(2), q(1)), Complex(-q(2), q(1)), Complex(q(0), -q(3));
    return u;
}

inline KetState random_pure_dot3(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector v(3);
    for (int i = 0; i < 3; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return KetState(v, Basis{});
}

// Embeds a qubit ket into the three-level space with no excited amplitude.
inline KetState embed_qubit(const Eigen::Vector2cd& q) {
    Vector v(3);
    v << q(0), q(1), 0.0;
    return KetState(v, Basis{});
}

inline Eigen::Vector3d bloch_of(const Matrix& rho) {
    Complex r01 = rho(0, 1);
    return {2.0 * r01.real(), -2.0 * r01.imag(), rho(0, 0).real() - rho(1, 1).real()};
}

}  // namespace spinbus::testing

#endif  // SPINBUS_TESTS_ORACLES_HPP
