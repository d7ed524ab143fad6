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
#include "spinbus/states.hpp"

using namespace spinbus;
using Catch::Matchers::WithinAbs;

TEST_CASE("fidelity on reference states", "[states]") {
    KetState zero = dot_ket(0);
    KetState one = dot_ket(1);

    SECTION("projector onto the same state") {
        REQUIRE_THAT(fidelity(projector_onto(zero), zero), WithinAbs(1.0, 1e-14));
    }
    SECTION("maximally mixed dot state") {
        DensityMatrix mixed(Matrix::Identity(3, 3) / 3.0, Basis{});
        REQUIRE_THAT(fidelity(mixed, one), WithinAbs(1.0 / 3.0, 1e-14));
    }
    SECTION("equal superposition against a basis state") {
        Vector v(3);
        v << 1.0, 1.0, 0.0;
        KetState plus(v, Basis{});
        REQUIRE_THAT(fidelity(projector_onto(plus), zero), WithinAbs(0.5, 1e-14));
    }
    SECTION("basis mismatch is rejected") {
        DensityMatrix composite(Matrix::Identity(6, 6) / 6.0, Basis{2});
        REQUIRE_THROWS_AS(fidelity(composite, zero), std::invalid_argument);
    }
    SECTION("unit fidelity iff the pure states coincide") {
        std::mt19937_64 rng(41);
        for (int i = 0; i < 40; ++i) {
            KetState a = testing::random_pure_dot3(rng);
            KetState b = testing::random_pure_dot3(rng);
            REQUIRE_THAT(fidelity(projector_onto(a), a), WithinAbs(1.0, 1e-12));
            double overlap = std::norm(a.amplitudes.adjoint().dot(b.amplitudes));
            REQUIRE_THAT(fidelity(projector_onto(a), b), WithinAbs(overlap, 1e-12));
        }
    }
}

TEST_CASE("tensor products", "[states]") {
    SECTION("identity times identity") {
        OperatorMatrix id2 = identity_on(Basis{});
        Matrix idf = Matrix::Identity(4, 4);
        OperatorMatrix prod = tensor(id2, idf);
        REQUIRE(prod.basis.fock_dim == 4);
        REQUIRE((prod.elements - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("ground state times vacuum is the first basis vector") {
        KetState k = tensor(dot_ket(0), fock_coherent(0.0, 5));
        REQUIRE_THAT(std::abs(k.amplitudes(0)), WithinAbs(1.0, 1e-14));
        REQUIRE_THAT(k.amplitudes.tail(14).norm(), WithinAbs(0.0, 1e-14));
    }
    SECTION("superposition spreads over dot-major indices") {
        Vector v(3);
        v << 1.0, 1.0, 0.0;
        KetState plus(v, Basis{});
        KetState k = tensor(plus, fock_coherent(0.0, 3));
        REQUIRE_THAT(std::abs(k.amplitudes(0)), WithinAbs(1.0 / std::sqrt(2.0), 1e-14));
        REQUIRE_THAT(std::abs(k.amplitudes(3)), WithinAbs(1.0 / std::sqrt(2.0), 1e-14));
    }
    SECTION("associativity and bilinearity on random operators") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> gauss;
        auto rand_mat = [&](int n) {
            Matrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
            return m;
        };
        for (int rep = 0; rep < 10; ++rep) {
            Matrix a = rand_mat(2), b = rand_mat(3), c = rand_mat(2);
            REQUIRE((kronecker(kronecker(a, b), c) - kronecker(a, kronecker(b, c)))
                        .cwiseAbs()
                        .maxCoeff() < 1e-14);
            Complex s(gauss(rng), gauss(rng));
            REQUIRE((kronecker(s * a, b) - s * kronecker(a, b)).cwiseAbs().maxCoeff() < 1e-13);
            REQUIRE((kronecker(a + c, b) - kronecker(a, b) - kronecker(c, b))
                        .cwiseAbs()
                        .maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("conditional field blocks", "[states]") {
    int fd = 6;
    Vector coh = fock_coherent(Complex(0.7, -0.2), fd);

    SECTION("product state concentrates in one block") {
        KetState k = tensor(dot_ket(0), coh);
        DensityMatrix rho = projector_onto(k);
        Matrix b0 = partial_trace_dot(rho, 0);
        Matrix b1 = partial_trace_dot(rho, 1);
        REQUIRE_THAT(b0.trace().real(), WithinAbs(1.0, 1e-12));
        REQUIRE(b1.cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("superposition splits the population") {
        Vector v(3);
        v << 1.0, 1.0, 0.0;
        KetState k = tensor(KetState(v, Basis{}), fock_coherent(0.0, fd));
        DensityMatrix rho = projector_onto(k);
        REQUIRE_THAT(partial_trace_dot(rho, 0)(0, 0).real(), WithinAbs(0.5, 1e-12));
    }
    SECTION("block traces add up to the full trace") {
        std::mt19937_64 rng(19);
        std::normal_distribution<double> gauss;
        Matrix m(3 * fd, 3 * fd);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
        Matrix rho_m = m * m.adjoint();
        rho_m /= rho_m.trace();
        DensityMatrix rho(rho_m, Basis{fd});
        double total = 0.0;
        for (int j = 0; j < 3; ++j) total += partial_trace_dot(rho, j).trace().real();
        REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
    }
    SECTION("bad dot index is rejected") {
        DensityMatrix rho(Matrix::Identity(3 * fd, 3 * fd) / (3.0 * fd), Basis{fd});
        REQUIRE_THROWS_AS(partial_trace_dot(rho, 3), std::invalid_argument);
    }
}

TEST_CASE("displacement operators on Fock space", "[states]") {
    SECTION("displacing vacuum gives the coherent state") {
        Complex beta(0.45, -0.3);
        int dim = 24;
        Matrix d = fock_displacement(beta, dim);
        Vector vac = Vector::Zero(dim);
        vac(0) = 1.0;
        Vector coh = fock_coherent(beta, dim);
        REQUIRE((d * vac - coh).norm() < 1e-10);
    }
    SECTION("displacement is unitary") {
        Matrix d = fock_displacement(Complex(0.2, 0.9), 16);
        REQUIRE((d.adjoint() * d - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("coherent state has Poisson mean") {
        int dim = 40;
        Complex alpha(1.1, 0.4);
        Vector coh = fock_coherent(alpha, dim);
        Matrix a = fock_annihilation(dim);
        Complex mean = coh.adjoint() * a * coh;
        REQUIRE(std::abs(mean - alpha) < 1e-10);
    }
}
