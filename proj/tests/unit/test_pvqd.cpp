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
#include "vqtrain/pvqd.hpp"

#include <doctest.h>

using namespace vqtrain;
using namespace vqtrain::testing;

namespace {

ComplexMatrix site(int n, int q, char p) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int k = 0; k < n; ++k) out = kron(out, k == q ? pauli(p) : pauli('I'));
    return out;
}

double variance(const Hamiltonian& h, const StateVector& psi) {
    const ComplexVector hv = h.matrix() * psi.amplitudes();
    const double mean = psi.amplitudes().dot(hv).real();
    return hv.squaredNorm() - mean * mean;
}

} // namespace

TEST_CASE("transverse-field Ising Hamiltonian and magnetization") {
    const int n = 3;
    const Eigen::Index d = 8;
    ComplexMatrix expect = ComplexMatrix::Zero(d, d);
    for (int q = 0; q + 1 < n; ++q) expect += 0.25 * site(n, q, 'Z') * site(n, q + 1, 'Z');
    expect += 0.25 * site(n, 2, 'Z') * site(n, 0, 'Z');
    for (int q = 0; q < n; ++q) expect += site(n, q, 'X');
    CHECK((transverse_ising_hamiltonian(n, 0.25, 1.0, true).matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);
    const Hamiltonian m = magnetization_operator(4);
    CHECK(expectation(zero_state(4), m) == doctest::Approx(1.0));
    CHECK(expectation(StateVector(4, ComplexVector::Unit(16, 1)), m) == doctest::Approx(0.5));
}

TEST_CASE("evolution fidelity: short-time expansion and the gamma bound") {
    std::mt19937_64 rng(3);
    const Hamiltonian h = transverse_ising_hamiltonian(4, 0.25, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = random_state(4, rng);
        const double dt = 1e-3;
        const double k = evolution_fidelity(h, psi, dt);
        CHECK(std::abs((1.0 - k) - variance(h, psi) * dt * dt) < 1e-9);
        for (double t : {0.05, 0.2, 0.5}) {
            CHECK(evolution_fidelity(h, psi, t) >= gamma_bound(h, psi, t) - 1e-12);
        }
    }
}

TEST_CASE("gamma bound examples") {
    const Hamiltonian h = transverse_ising_hamiltonian(3, 0.25, 1.0);
    const SpectralDecomposition spec(h);
    const StateVector eigen(3, spec.eigenvectors().col(2));
    CHECK(gamma_bound(h, eigen, 0.7) == doctest::Approx(1.0));
    // Equal superposition of the extreme levels: the bound is saturated at
    // first order and clipped at zero for long times.
    const double spread = spec.eigenvalues()[7] - spec.eigenvalues()[0];
    const StateVector ends =
        StateVector::normalized(3, spec.eigenvectors().col(0) + spec.eigenvectors().col(7));
    CHECK(gamma_bound(spec, ends, 0.1) == doctest::Approx(1.0 - 0.25 * spread * spread * 0.01));
    CHECK(gamma_bound(spec, ends, 10.0) == 0.0);
    CHECK(evolution_fidelity(h, ends, 0.1) == doctest::Approx(std::pow(std::cos(0.05 * spread), 2)));
}

TEST_CASE("barren plateau bound") {
    const Metric f(2.0 * RealMatrix::Identity(4, 4));
    const BarrenPlateauBound b = barren_plateau_bound(f, 0.5, 1.0, 4);
    CHECK(b.value == doctest::Approx(8.0 / 16.0 * std::log(2.0) * 0.25));
    CHECK(b.fidelity_ceiling == doctest::Approx(std::exp(-0.5)));
    CHECK(b.gamma_below_ceiling);
    CHECK_FALSE(barren_plateau_bound(f, 0.9, 1.0, 4).gamma_below_ceiling);
    CHECK_THROWS_AS(barren_plateau_bound(f, 0.9, 0.8, 4), DomainError);
    CHECK_THROWS_AS(barren_plateau_bound(f, 0.0, 0.8, 4), DomainError);
}

TEST_CASE("targets") {
    const CircuitSpec c = build_ansatz(AnsatzKind::YZ_CNOT, 3, 2);
    std::mt19937_64 rng(2);
    const ParamVector theta = random_parameters(c.n_params(), rng);
    const ComplexVector psi = prepare(c, theta).amplitudes();
    const Hamiltonian h = transverse_ising_hamiltonian(3, 0.25, 1.0);
    CHECK((trotter_target(c, theta, h, 0.2).amplitudes() - expm_oracle(h.matrix(), 0.2) * psi)
              .cwiseAbs()
              .maxCoeff() < 1e-11);
    const ComplexMatrix split = expm_oracle(transverse_ising_hamiltonian(3, 0.0, 1.0).matrix(), 0.2) *
                                expm_oracle(transverse_ising_hamiltonian(3, 0.25, 0.0).matrix(), 0.2);
    CHECK((product_formula_target(c, theta, 0.25, 1.0, 0.2).amplitudes() - split * psi).cwiseAbs().maxCoeff() <
          1e-11);
    CHECK_THROWS_AS(trotter_target(c, theta, transverse_ising_hamiltonian(2, 1, 1), 0.1), SizeError);
}

TEST_CASE("pvqd run structure") {
    PvqdConfig cfg{build_ansatz(AnsatzKind::YZ_CNOT, 3, 4)};
    cfg.trotter_steps = 4;
    cfg.train_iterations = 8;
    const PvqdTrajectory a = pvqd_run(cfg);
    const PvqdTrajectory b = pvqd_run(cfg);
    REQUIRE(a.steps.size() == 5);
    CHECK(a.steps[0].time == 0.0);
    CHECK(a.steps[0].magnetization == doctest::Approx(1.0));
    for (std::size_t k = 1; k < a.steps.size(); ++k) {
        const PvqdStep& s = a.steps[k];
        CHECK(s.time == doctest::Approx(0.2 * static_cast<double>(k)));
        CHECK(s.error.empty());
        CHECK(s.fidelity_pre_train >= s.gamma_bound - 1e-12);
        CHECK(s.final_loss >= 0.0);
        CHECK(s.final_loss <= 1.0);
        CHECK(std::abs(s.magnetization - s.magnetization_exact) < 0.1);
        CHECK(s.fidelity_exact == b.steps[k].fidelity_exact);
    }
    CHECK(a.final_theta == b.final_theta);
    cfg.trotter_steps = 0;
    CHECK_THROWS_AS(pvqd_run(cfg), ContractError);
}
