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

#ifndef SPINBUS_STATES_HPP
#define SPINBUS_STATES_HPP

// States, operators and density matrices for the three-level dot, the
// truncated photon space, and their tensor product.
//
// Basis conventions, fixed once for the whole library:
//   * dot levels are ordered (|0>, |1>, |e>); indices 0, 1, 2;
//   * composite space dot3 (x) fock(N) is ordered dot-major:
//     index = dot * (N+1) + n.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "spinbus/errors.hpp"
#include "spinbus/units.hpp"

namespace spinbus {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

inline constexpr int kDotGround0 = 0;
inline constexpr int kDotGround1 = 1;
inline constexpr int kDotExcited = 2;

// Identifies the Hilbert space a vector or matrix lives on.  fock_dim == 0
// means the bare three-level dot; fock_dim == N+1 means dot3 (x) fock(N).
struct Basis {
    int fock_dim = 0;

    int dim() const { return 3 * (fock_dim > 0 ? fock_dim : 1); }
    bool composite() const { return fock_dim > 0; }
    bool operator==(const Basis&) const = default;

    std::string label() const {
        if (fock_dim == 0) return "dot3";
        return "dot3*fock(" + std::to_string(fock_dim - 1) + ")";
    }
};

inline void require_same_basis(const Basis& a, const Basis& b, const char* where) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(where) + ": basis mismatch (" + a.label() +
                                    " vs " + b.label() + ")");
    }
}

struct KetState {
    Vector amplitudes;
    Basis basis;

    KetState() = default;
    KetState(Vector amps, Basis b) : amplitudes(std::move(amps)), basis(b) {
        if (amplitudes.size() != basis.dim()) {
            throw std::invalid_argument("KetState: dimension does not match basis " + basis.label());
        }
        normalize();
    }

    void normalize() {
        double n = amplitudes.norm();
        if (n <= 0.0) throw std::invalid_argument("KetState: zero vector");
        amplitudes /= n;
    }
};

struct OperatorMatrix {
    Matrix elements;
    Basis basis;

    OperatorMatrix() = default;
    OperatorMatrix(Matrix m, Basis b) : elements(std::move(m)), basis(b) {
        if (elements.rows() != basis.dim() || elements.cols() != basis.dim()) {
            throw std::invalid_argument("OperatorMatrix: dimension does not match basis " +
                                        basis.label());
        }
    }
};

struct DensityMatrix {
    Matrix elements;
    Basis basis;

    DensityMatrix() = default;
    DensityMatrix(Matrix m, Basis b) : elements(std::move(m)), basis(b) {
        if (elements.rows() != basis.dim() || elements.cols() != basis.dim()) {
            throw std::invalid_argument("DensityMatrix: dimension does not match basis " +
                                        basis.label());
        }
    }

    double hermiticity_defect() const {
        return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
    }
    double trace_real() const { return elements.trace().real(); }

    // Physicality check used by tests and at integration entry points.
    void validate(double herm_tol = 1e-10, double trace_tol = 1e-9) const {
        if (hermiticity_defect() > herm_tol) {
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        }
        if (std::abs(elements.trace() - Complex(1.0, 0.0)) > trace_tol) {
            throw std::invalid_argument("DensityMatrix: trace differs from 1");
        }
    }
};

inline DensityMatrix projector_onto(const KetState& psi) {
    return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint(), psi.basis);
}

// --- dot-space constructors ---------------------------------------------

inline KetState dot_ket(int level) {
    if (level < 0 || level > 2) throw std::invalid_argument("dot_ket: level must be 0, 1 or e(2)");
    Vector v = Vector::Zero(3);
    v(level) = 1.0;
    return KetState(std::move(v), Basis{});
}

inline OperatorMatrix dot_projector(int level) {
    if (level < 0 || level > 2) throw std::invalid_argument("dot_projector: bad level");
    Matrix m = Matrix::Zero(3, 3);
    m(level, level) = 1.0;
    return OperatorMatrix(std::move(m), Basis{});
}

// sigma_j^+ = |e><j|, the raising operator for ground state j.
inline OperatorMatrix dot_sigma_plus(int j) {
    if (j != 0 && j != 1) throw std::invalid_argument("dot_sigma_plus: j must be 0 or 1");
    Matrix m = Matrix::Zero(3, 3);
    m(kDotExcited, j) = 1.0;
    return OperatorMatrix(std::move(m), Basis{});
}

inline OperatorMatrix dot_sigma_minus(int j) {
    if (j != 0 && j != 1) throw std::invalid_argument("dot_sigma_minus: j must be 0 or 1");
    Matrix m = Matrix::Zero(3, 3);
    m(j, kDotExcited) = 1.0;
    return OperatorMatrix(std::move(m), Basis{});
}

inline OperatorMatrix identity_on(Basis b) {
    return OperatorMatrix(Matrix::Identity(b.dim(), b.dim()), b);
}

// --- photon-space constructors ------------------------------------------

inline Matrix fock_annihilation(int fock_dim) {
    if (fock_dim < 1) throw std::invalid_argument("fock_annihilation: need at least one level");
    Matrix a = Matrix::Zero(fock_dim, fock_dim);
    for (int n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// Coherent state truncated to fock_dim levels and renormalized.
inline Vector fock_coherent(Complex alpha, int fock_dim) {
    if (fock_dim < 1) throw std::invalid_argument("fock_coherent: need at least one level");
    Vector v(fock_dim);
    // amplitudes alpha^n / sqrt(n!) built recursively, weight applied at the end
    Complex amp = 1.0;
    v(0) = amp;
    for (int n = 1; n < fock_dim; ++n) {
        amp *= alpha / std::sqrt(static_cast<double>(n));
        v(n) = amp;
    }
    v *= std::exp(-0.5 * std::norm(alpha));
    double norm = v.norm();
    if (norm <= 0.0) throw NumericalError("fock_coherent: truncated norm vanished");
    return v / norm;
}

// Unitary displacement D(beta) = exp(beta a^dag - beta^* a) in the truncated
// Fock space, via the spectral decomposition of the (Hermitian) generator.
inline Matrix fock_displacement(Complex beta, int fock_dim) {
    Matrix a = fock_annihilation(fock_dim);
    Matrix gen = beta * a.adjoint() - std::conj(beta) * a;  // anti-Hermitian
    Matrix h = -kI * gen;                                   // Hermitian
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("fock_displacement: eigensolver failed");
    Vector phases(fock_dim);
    for (int k = 0; k < fock_dim; ++k) phases(k) = std::exp(kI * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// --- generic operations ---------------------------------------------------

// Fidelity F = <psi| rho |psi>.  The imaginary part must vanish for a
// Hermitian rho; it is asserted below 1e-10 and discarded.
inline double fidelity(const DensityMatrix& rho, const KetState& psi) {
    require_same_basis(rho.basis, psi.basis, "fidelity");
    Complex f = psi.amplitudes.adjoint() * rho.elements * psi.amplitudes;
    if (std::abs(f.imag()) > 1e-10) {
        throw NumericalError("fidelity: imaginary part " + std::to_string(f.imag()));
    }
    return f.real();
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace detail {
inline Basis composite_basis(const Basis& dot, const Basis& field_like, int field_dim,
                             const char* where) {
    if (dot.composite() || field_like.composite()) {
        throw std::invalid_argument(std::string(where) + ": nested composites not supported");
    }
    (void)field_like;
    return Basis{field_dim};
}
}  // namespace detail

// Kronecker product, dot index major.  The right factor is interpreted as the
// photon space when the result is used as a composite dot3 (x) fock(N) object.
inline OperatorMatrix tensor(const OperatorMatrix& dot_op, const Matrix& field_op) {
    if (dot_op.basis.composite()) throw std::invalid_argument("tensor: left factor must be dot3");
    if (field_op.rows() != field_op.cols()) throw std::invalid_argument("tensor: field op not square");
    Basis b{static_cast<int>(field_op.rows())};
    return OperatorMatrix(kronecker(dot_op.elements, field_op), b);
}

inline KetState tensor(const KetState& dot_ket_state, const Vector& field_ket) {
    if (dot_ket_state.basis.composite()) throw std::invalid_argument("tensor: left factor must be dot3");
    Basis b{static_cast<int>(field_ket.size())};
    Vector out(dot_ket_state.amplitudes.size() * field_ket.size());
    for (Eigen::Index i = 0; i < dot_ket_state.amplitudes.size(); ++i) {
        out.segment(i * field_ket.size(), field_ket.size()) =
            dot_ket_state.amplitudes(i) * field_ket;
    }
    return KetState(std::move(out), b);
}

// <j| rho |j> block of a composite-space density matrix: the (unnormalized)
// field state conditioned on the dot being in level j.  Its trace is the
// population of level j.
inline Matrix partial_trace_dot(const DensityMatrix& rho, int j) {
    if (!rho.basis.composite()) {
        throw std::invalid_argument("partial_trace_dot: state is not on a composite basis");
    }
    if (j < 0 || j > 2) throw std::invalid_argument("partial_trace_dot: dot state must be 0, 1 or e(2)");
    int nf = rho.basis.fock_dim;
    return rho.elements.block(j * nf, j * nf, nf, nf);
}

}  // namespace spinbus

#endif  // SPINBUS_STATES_HPP
