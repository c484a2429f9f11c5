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

#include "vqtrain/ansatz.hpp"
#include "vqtrain/errors.hpp"

#include <doctest.h>

using namespace vqtrain;
using namespace vqtrain::testing;

namespace {

int count_kind(const CircuitSpec& c, GateKind k) {
    int n = 0;
    for (const Gate& g : c.gates()) n += g.kind == k;
    return n;
}

ParamVector random_theta(const CircuitSpec& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_parameters(c.n_params(), rng);
}

const AnsatzKind kAll[] = {AnsatzKind::YZ_CNOT, AnsatzKind::YZ_SQRT_ISWAP, AnsatzKind::R_CPHASE};

} // namespace

TEST_CASE("parameter counts and gate layout") {
    const CircuitSpec c = build_ansatz(AnsatzKind::YZ_CNOT, 4, 2);
    CHECK(c.n_params() == 16);
    CHECK(count_kind(c, GateKind::RY) == 8);
    CHECK(count_kind(c, GateKind::RZ) == 8);
    // Odd layer pairs (0,1),(2,3); even layer pairs (1,2).
    CHECK(count_kind(c, GateKind::CNOT) == 3);
    std::vector<std::array<int, 2>> pairs;
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::CNOT) pairs.push_back(g.qubits);
    }
    CHECK(pairs == std::vector<std::array<int, 2>>{{0, 1}, {2, 3}, {1, 2}});

    const CircuitSpec r = build_ansatz(AnsatzKind::R_CPHASE, 3, 2, 42);
    CHECK(r.n_params() == 6);
    CHECK(count_kind(r, GateKind::CPHASE) == 4);
    CHECK(r.gates().front().kind == GateKind::RY);
    CHECK_FALSE(r.gates().front().parameter_slot.has_value());
    CHECK(r.gates().front().fixed_angle == doctest::Approx(kPi / 2));
}

TEST_CASE("every slot is used exactly once") {
    for (AnsatzKind k : kAll) {
        const CircuitSpec c = build_ansatz(k, 5, 3, 7);
        std::vector<int> seen(static_cast<std::size_t>(c.n_params()), 0);
        for (const Gate& g : c.gates()) {
            if (g.parameter_slot) ++seen[static_cast<std::size_t>(*g.parameter_slot)];
        }
        for (int s : seen) CHECK(s == 1);
        CHECK(c.n_params() == (k == AnsatzKind::R_CPHASE ? 15 : 30));
    }
}

TEST_CASE("sqrt(iSWAP) variant differs only in the entangler") {
    const CircuitSpec a = build_ansatz(AnsatzKind::YZ_CNOT, 4, 1);
    const CircuitSpec b = build_ansatz(AnsatzKind::YZ_SQRT_ISWAP, 4, 1);
    REQUIRE(a.gates().size() == b.gates().size());
    for (std::size_t i = 0; i < a.gates().size(); ++i) {
        Gate g = a.gates()[i];
        if (g.kind == GateKind::CNOT) g.kind = GateKind::SQRT_ISWAP;
        CHECK(g == b.gates()[i]);
    }
}

TEST_CASE("R-CPHASE axes are fixed by the seed") {
    const CircuitSpec a = build_ansatz(AnsatzKind::R_CPHASE, 4, 5, 99);
    const CircuitSpec b = build_ansatz(AnsatzKind::R_CPHASE, 4, 5, 99);
    CHECK(a.serialize() == b.serialize());
    CHECK(a == b);
    const CircuitSpec c = build_ansatz(AnsatzKind::R_CPHASE, 4, 5, 100);
    CHECK(a.serialize() != c.serialize());
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(build_ansatz(AnsatzKind::YZ_CNOT, 1, 1), SizeError);
    CHECK_THROWS_AS(build_ansatz(AnsatzKind::YZ_CNOT, 3, 0), SizeError);
    CHECK_THROWS_AS(build_ansatz(static_cast<AnsatzKind>(77), 3, 1), ContractError);
    CHECK_THROWS_AS(parse_ansatz_kind("yz-cz"), ContractError);
    CHECK(parse_ansatz_kind("yz-sqiswap") == AnsatzKind::YZ_SQRT_ISWAP);
    CHECK_THROWS_AS(prepare(build_ansatz(AnsatzKind::YZ_CNOT, 2, 1), ParamVector::Zero(3)), SizeError);
}

TEST_CASE("prepare") {
    const CircuitSpec c = build_ansatz(AnsatzKind::YZ_CNOT, 2, 1);
    CHECK(fidelity(prepare(c, ParamVector::Zero(4)), zero_state(2)) == doctest::Approx(1.0));

    // theta = (pi, 0, 0, 0): RY(pi) on qubit 0, then CNOT(0, 1).
    ParamVector theta = ParamVector::Zero(4);
    theta[0] = kPi;
    ComplexMatrix ry(2, 2);
    ry << std::cos(kPi / 2), -std::sin(kPi / 2), std::sin(kPi / 2), std::cos(kPi / 2);
    ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const ComplexVector expect = cnot * kron(ry, ComplexMatrix::Identity(2, 2)) * ComplexVector::Unit(4, 0);
    CHECK((prepare(c, theta).amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-14);

    const CircuitSpec big = build_ansatz(AnsatzKind::R_CPHASE, 5, 3, 1);
    const ParamVector t = random_theta(big, 2);
    CHECK(prepare(big, t).amplitudes() == prepare(big, t).amplitudes());
}

TEST_CASE("single-qubit tangent is analytic") {
    const CircuitSpec c = build_product_ansatz(1);
    const double th = 0.8;
    const ComplexMatrix t = tangents(c, ParamVector::Constant(1, th));
    CHECK(std::abs(t(0, 0) - Complex(-0.5 * std::sin(th / 2))) < 1e-15);
    CHECK(std::abs(t(1, 0) - Complex(0.5 * std::cos(th / 2))) < 1e-15);
}

TEST_CASE("tangents match central finite differences") {
    const double delta = 1e-5;
    for (AnsatzKind k : kAll) {
        for (int n : {2, 4, 6}) {
            const CircuitSpec c = build_ansatz(k, n, 2, 3);
            const ParamVector theta = random_theta(c, 10 + n);
            const ComplexMatrix t = tangents(c, theta);
            const StateVector psi = prepare(c, theta);
            double worst = 0.0;
            double worst_norm_term = 0.0;
            for (int j = 0; j < c.n_params(); ++j) {
                ParamVector up = theta, down = theta;
                up[j] += delta;
                down[j] -= delta;
                const ComplexVector fd = (prepare(c, up).amplitudes() - prepare(c, down).amplitudes()) / (2 * delta);
                worst = std::max(worst, (fd - t.col(j)).cwiseAbs().maxCoeff());
                worst_norm_term = std::max(worst_norm_term, std::abs(t.col(j).dot(psi.amplitudes()).real()));
            }
            CHECK(worst < 1e-8);
            CHECK(worst_norm_term < 1e-12);
        }
    }
}

TEST_CASE("gradients: adjoint, tangent, parameter shift and finite differences agree") {
    for (AnsatzKind k : kAll) {
        for (int n : {3, 4, 6}) {
            const CircuitSpec c = build_ansatz(k, n, 2, 5);
            const StateVector target = prepare(c, random_theta(c, 100 + n));
            const ParamVector theta = random_theta(c, 200 + n);
            const RealVector adj = fidelity_gradient(c, theta, target);
            const RealVector shift = parameter_shift_gradient(c, theta, target);
            const RealVector tan = fidelity_gradient(prepare(c, theta), tangents(c, theta), target);
            CHECK((adj - shift).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((adj - tan).cwiseAbs().maxCoeff() < 1e-12);
            const double delta = 1e-5;
            for (int j = 0; j < c.n_params(); j += 3) {
                ParamVector up = theta, down = theta;
                up[j] += delta;
                down[j] -= delta;
                const double fd = (fidelity(prepare(c, up), target) - fidelity(prepare(c, down), target)) / (2 * delta);
                CHECK(std::abs(fd - adj[j]) < 1e-8);
            }
        }
    }
}

TEST_CASE("gradient examples") {
    const CircuitSpec one = build_product_ansatz(1);
    const StateVector one_state(1, ComplexVector::Unit(2, 1));
    const RealVector g = fidelity_gradient(one, ParamVector::Constant(1, kPi / 2), one_state);
    CHECK(g[0] == doctest::Approx(0.5).epsilon(1e-14));
    for (double th : {0.1, 1.0, 2.5}) {
        const RealVector s = parameter_shift_gradient(one, ParamVector::Constant(1, th), one_state);
        CHECK(std::abs(s[0] - 0.5 * std::sin(th)) < 1e-12);
    }
    const CircuitSpec c = build_ansatz(AnsatzKind::YZ_CNOT, 4, 2);
    const ParamVector theta = random_theta(c, 9);
    const StateVector at = prepare(c, theta);
    CHECK(fidelity_gradient(c, theta, at).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(parameter_shift_gradient(c, theta, at).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("random parameters lie in [0, 2pi)") {
    std::mt19937_64 rng(1);
    const ParamVector p = random_parameters(1000, rng);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.maxCoeff() < 2 * kPi);
}
