// Copyright 2026 The vqtrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "helpers.hpp"

#include "vqtrain/errors.hpp"

#include <doctest.h>

using namespace vqtrain;
using namespace vqtrain::testing;

TEST_CASE("zero state has a single unit amplitude") {
    for (int n : {1, 2, 3}) {
        const StateVector s = zero_state(n);
        CHECK(s.dimension() == (1 << n));
        CHECK(s[0] == Complex(1.0, 0.0));
        CHECK(s.amplitudes().tail(s.dimension() - 1).cwiseAbs().maxCoeff() == 0.0);
        CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(zero_state(0), SizeError);
    CHECK_THROWS_AS(zero_state(25), SizeError);
}

TEST_CASE("unnormalized amplitudes are rejected") {
    CHECK_THROWS_AS(StateVector(1, ComplexVector::Ones(2)), ContractError);
    CHECK_THROWS_AS(StateVector(2, ComplexVector::Ones(2) / std::sqrt(2.0)), SizeError);
}

TEST_CASE("gate truth tables") {
    SUBCASE("RY(pi)|0> = |1> up to sign") {
        const StateVector s = apply_gate(zero_state(1), Gate::rotation(GateKind::RY, 0, 0), kPi);
        CHECK(std::abs(s[0]) < 1e-15);
        CHECK(std::abs(std::abs(s[1]) - 1.0) < 1e-15);
    }
    SUBCASE("CNOT |10> = |11> with qubit 0 as control and most significant bit") {
        StateVector s(2, ComplexVector::Unit(4, 0b10));
        s = apply_gate(s, Gate::entangler(GateKind::CNOT, 0, 1));
        CHECK(std::abs(s[0b11] - Complex(1.0)) < 1e-15);
    }
    SUBCASE("CPHASE |11> = -|11>") {
        const StateVector s = apply_gate(StateVector(2, ComplexVector::Unit(4, 3)), Gate::entangler(GateKind::CPHASE, 0, 1));
        CHECK(std::abs(s[3] + Complex(1.0)) < 1e-15);
    }
    SUBCASE("sqrt(iSWAP) central block") {
        const double r = 1.0 / std::sqrt(2.0);
        const StateVector s = apply_gate(StateVector(2, ComplexVector::Unit(4, 1)), Gate::entangler(GateKind::SQRT_ISWAP, 0, 1));
        CHECK(std::abs(s[1] - Complex(r, 0)) < 1e-15);
        CHECK(std::abs(s[2] - Complex(0, r)) < 1e-15);
        const StateVector t = apply_gate(StateVector(2, ComplexVector::Unit(4, 3)), Gate::entangler(GateKind::SQRT_ISWAP, 0, 1));
        CHECK(std::abs(t[3] - Complex(1.0)) < 1e-15);
    }
}

TEST_CASE("rotations match exp(-i theta sigma / 2)") {
    std::mt19937_64 rng(11);
    const StateVector psi = random_state(3, rng);
    const double theta = 0.731;
    for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ}) {
        const char p = kind == GateKind::RX ? 'X' : kind == GateKind::RY ? 'Y' : 'Z';
        for (int q = 0; q < 3; ++q) {
            ComplexMatrix single = std::cos(theta / 2) * ComplexMatrix::Identity(2, 2) -
                                   Complex(0, std::sin(theta / 2)) * pauli(p);
            ComplexMatrix full = ComplexMatrix::Identity(1, 1);
            for (int k = 0; k < 3; ++k) full = kron(full, k == q ? single : ComplexMatrix::Identity(2, 2));
            const ComplexVector expect = full * psi.amplitudes();
            const StateVector got = apply_gate(psi, Gate::rotation(kind, q, 0), theta);
            CHECK((got.amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("apply_gate contract errors") {
    const StateVector s = zero_state(2);
    CHECK_THROWS_AS(apply_gate(s, Gate::rotation(GateKind::RY, 0, 0)), ContractError);
    CHECK_THROWS_AS(apply_gate(s, Gate::entangler(GateKind::CNOT, 0, 1), 0.3), ContractError);
    CHECK_THROWS_AS(apply_gate(s, Gate::rotation(GateKind::RY, 2, 0), 0.3), IndexError);
    CHECK_THROWS_AS(apply_gate(s, Gate::entangler(GateKind::CNOT, 1, 1)), IndexError);
}

TEST_CASE("fidelity") {
    CHECK(fidelity(zero_state(1), zero_state(1)) == 1.0);
    const StateVector plus = apply_gate(zero_state(1), Gate::rotation(GateKind::RY, 0, 0), kPi / 2);
    CHECK(fidelity(zero_state(1), plus) == doctest::Approx(0.5).epsilon(1e-15));
    std::mt19937_64 rng(3);
    const StateVector a = random_state(3, rng);
    const StateVector b = random_state(3, rng);
    Complex sum = 0;
    for (int i = 0; i < 8; ++i) sum += std::conj(a[i]) * b[i];
    CHECK(std::abs(fidelity(a, b) - std::norm(sum)) < 1e-14);
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-15));
    CHECK_THROWS_AS(fidelity(a, zero_state(2)), SizeError);
}

TEST_CASE("global phase invariance of fidelity") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector a = random_state(3, rng);
        const StateVector b = random_state(3, rng);
        const StateVector pa(3, a.amplitudes() * std::polar(1.0, 0.37 * trial));
        CHECK(std::abs(fidelity(pa, b) - fidelity(a, b)) < 1e-14);
    }
}

TEST_CASE("norm preservation and unitarity over random gate sequences") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> kind_pick(0, 5);
    std::uniform_int_distribution<int> qubit_pick(0, 3);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    StateVector a = random_state(4, rng);
    StateVector b = random_state(4, rng);
    const double f0 = fidelity(a, b);
    for (int g = 0; g < 300; ++g) {
        const auto kind = static_cast<GateKind>(kind_pick(rng));
        const int q0 = qubit_pick(rng);
        int q1 = qubit_pick(rng);
        while (q1 == q0) q1 = qubit_pick(rng);
        const Gate gate = is_rotation(kind) ? Gate::rotation(kind, q0, 0) : Gate::entangler(kind, q0, q1);
        const std::optional<double> th = is_rotation(kind) ? std::optional<double>(angle(rng)) : std::nullopt;
        a = apply_gate(a, gate, th);
        b = apply_gate(b, gate, th);
    }
    CHECK(std::abs(a.amplitudes().norm() - 1.0) < 1e-10);
    CHECK(std::abs(fidelity(a, b) - f0) < 1e-10);
}

TEST_CASE("exact evolution") {
    const Hamiltonian z(1, pauli('Z'));
    std::mt19937_64 rng(23);
    const StateVector psi = random_state(2, rng);
    const Hamiltonian h2 = random_hamiltonian(2, rng);
    SUBCASE("t = 0 is the identity") {
        CHECK(evolve_exact(psi, h2, 0.0).amplitudes() == psi.amplitudes());
    }
    SUBCASE("eigenstate stays put") {
        CHECK(fidelity(evolve_exact(zero_state(1), z, 1.234), zero_state(1)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("sigma_z on |+> follows cos^2(t)") {
        const StateVector plus(1, ComplexVector::Constant(2, Complex(1.0 / std::sqrt(2.0))));
        CHECK(std::abs(fidelity(evolve_exact(plus, z, 0.3), plus) - std::pow(std::cos(0.3), 2)) < 1e-14);
    }
    SUBCASE("matches the Taylor oracle") {
        const ComplexVector expect = expm_oracle(h2.matrix(), 0.7) * psi.amplitudes();
        CHECK((evolve_exact(psi, h2, 0.7).amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("group property and norm") {
        const StateVector once = evolve_exact(psi, h2, 0.9);
        const StateVector twice = evolve_exact(evolve_exact(psi, h2, 0.4), h2, 0.5);
        CHECK((once.amplitudes() - twice.amplitudes()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(std::abs(once.amplitudes().norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("Hamiltonian validation and expectation") {
    ComplexMatrix bad = pauli('Z');
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(Hamiltonian(1, bad), ContractError);
    const Hamiltonian z(1, pauli('Z'));
    CHECK(expectation(zero_state(1), z) == doctest::Approx(1.0));
    const StateVector plus(1, ComplexVector::Constant(2, Complex(1.0 / std::sqrt(2.0))));
    CHECK(std::abs(expectation(plus, z)) < 1e-15);
    std::mt19937_64 rng(29);
    const Hamiltonian h = random_hamiltonian(3, rng);
    const StateVector psi = random_state(3, rng);
    const Complex direct = psi.amplitudes().dot(h.matrix() * psi.amplitudes());
    CHECK(std::abs(direct.imag()) < 1e-10);
    CHECK(std::abs(expectation(psi, h) - direct.real()) < 1e-12);
}

TEST_CASE("Pauli-term assembly matches Kronecker products") {
    const PauliTerm terms[] = {{0.7, {{0, 'X'}, {2, 'Y'}}}, {-1.3, {{1, 'Z'}}}, {0.4, {{2, 'X'}, {2, 'X'}}}};
    const Hamiltonian h = from_pauli_terms(3, terms);
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    // A repeated qubit multiplies its operators: X X = I.
    const ComplexMatrix expect = 0.7 * kron(kron(pauli('X'), i2), pauli('Y')) -
                                 1.3 * kron(kron(i2, pauli('Z')), i2) + 0.4 * ComplexMatrix::Identity(8, 8);
    CHECK((h.matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);
}
