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

#include "vqtrain/pvqd.hpp"

#include "vqtrain/errors.hpp"

#include <cmath>
#include <limits>

namespace vqtrain {

Hamiltonian transverse_ising_hamiltonian(int n_qubits, double J, double h, bool periodic) {
    if (n_qubits < 1) throw SizeError("Ising chain needs at least one qubit");
    std::vector<PauliTerm> terms;
    for (int n = 0; n + 1 < n_qubits; ++n) terms.push_back({J, {{n, 'Z'}, {n + 1, 'Z'}}});
    if (periodic && n_qubits > 2) terms.push_back({J, {{n_qubits - 1, 'Z'}, {0, 'Z'}}});
    for (int n = 0; n < n_qubits; ++n) terms.push_back({h, {{n, 'X'}}});
    return from_pauli_terms(n_qubits, terms);
}

Hamiltonian magnetization_operator(int n_qubits) {
    std::vector<PauliTerm> terms;
    for (int n = 0; n < n_qubits; ++n) terms.push_back({1.0 / n_qubits, {{n, 'Z'}}});
    return from_pauli_terms(n_qubits, terms);
}

StateVector trotter_target(const CircuitSpec& circuit, const ParamVector& theta,
                           const Hamiltonian& hamiltonian, double dt) {
    if (hamiltonian.n_qubits() != circuit.n_qubits()) throw SizeError("Hamiltonian size mismatch");
    return evolve_exact(prepare(circuit, theta), hamiltonian, dt);
}

StateVector product_formula_target(const CircuitSpec& circuit, const ParamVector& theta,
                                   double J, double h, double dt, bool periodic) {
    const int n = circuit.n_qubits();
    const StateVector psi = prepare(circuit, theta);
    const StateVector mid = evolve_exact(psi, transverse_ising_hamiltonian(n, J, 0.0, periodic), dt);
    return evolve_exact(mid, transverse_ising_hamiltonian(n, 0.0, h, periodic), dt);
}

double evolution_fidelity(const Hamiltonian& hamiltonian, const StateVector& psi, double dt) {
    return fidelity(psi, evolve_exact(psi, hamiltonian, dt));
}

double gamma_bound(const SpectralDecomposition& spectrum, const StateVector& psi, double dt) {
    if (spectrum.eigenvectors().rows() != psi.dimension()) throw SizeError("state/Hamiltonian size mismatch");
    const RealVector weights = (spectrum.eigenvectors().adjoint() * psi.amplitudes()).cwiseAbs2();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        if (weights[k] > kOverlapFloor) {
            lo = std::min(lo, spectrum.eigenvalues()[k]);
            hi = std::max(hi, spectrum.eigenvalues()[k]);
        }
    }
    const double spread = hi > lo ? hi - lo : 0.0;
    return std::max(0.0, 1.0 - 0.25 * (spread * dt) * (spread * dt));
}

double gamma_bound(const Hamiltonian& hamiltonian, const StateVector& psi, double dt) {
    return gamma_bound(SpectralDecomposition(hamiltonian), psi, dt);
}

BarrenPlateauBound barren_plateau_bound(const Metric& metric, double gamma, double k0, int n_params) {
    if (n_params <= 0) throw ContractError("parameter count must be positive");
    if (!(k0 > 0.0 && k0 <= 1.0)) throw DomainError("K0 must lie in (0, 1]");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    if (gamma > k0) throw DomainError("gamma exceeds the maximal fidelity K0");
    BarrenPlateauBound out;
    const double m = n_params;
    out.value = metric.trace() / (m * m) * std::log(k0 / gamma) * gamma * gamma;
    out.fidelity_ceiling = k0 * std::exp(-0.5);
    out.gamma_below_ceiling = gamma <= out.fidelity_ceiling;
    return out;
}

PvqdTrajectory pvqd_run(const PvqdConfig& config) {
    const CircuitSpec& circuit = config.circuit;
    const int n = circuit.n_qubits();
    if (config.trotter_steps < 1) throw ContractError("need at least one Trotter step");
    if (config.train_iterations < 1) throw ContractError("need at least one training iteration");
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw ContractError("time step must be positive");

    const Hamiltonian hamiltonian = transverse_ising_hamiltonian(n, config.J, config.h, config.periodic);
    const SpectralDecomposition spectrum(hamiltonian);
    const Hamiltonian magnet = magnetization_operator(n);
    OptimizerConfig opt = config.optimizer;
    opt.iterations = config.train_iterations;

    ParamVector theta = config.initial_theta.size() == 0 ? ParamVector::Zero(circuit.n_params())
                                                         : config.initial_theta;
    if (theta.size() != circuit.n_params()) throw SizeError("initial parameters size mismatch");
    const StateVector start = prepare(circuit, theta);

    PvqdTrajectory out;
    PvqdStep first;
    first.fidelity_exact = 1.0;
    first.magnetization = first.magnetization_exact = expectation(start, magnet);
    first.gamma_bound = first.fidelity_pre_train = 1.0;
    out.steps.push_back(first);

    for (int k = 1; k <= config.trotter_steps; ++k) {
        PvqdStep row;
        row.step = k;
        row.time = k * config.dt;
        const StateVector psi = prepare(circuit, theta);
        const StateVector target =
            config.product_formula
                ? product_formula_target(circuit, theta, config.J, config.h, config.dt, config.periodic)
                : StateVector::normalized(n, spectrum.evolve(psi.amplitudes(), config.dt));
        row.fidelity_pre_train = fidelity(psi, target);
        row.gamma_bound = gamma_bound(spectrum, psi, config.dt);
        try {
            const TrainTrace trace = train(circuit, theta, target, opt);
            theta = trace.final_theta;
            row.final_loss = trace.rows.back().infidelity;
        } catch (const Error& e) {
            row.error = e.what();
            row.final_loss = 1.0 - fidelity(prepare(circuit, theta), target);
        }
        const StateVector now = prepare(circuit, theta);
        const StateVector exact = StateVector::normalized(n, spectrum.evolve(start.amplitudes(), row.time));
        row.fidelity_exact = fidelity(now, exact);
        row.magnetization = expectation(now, magnet);
        row.magnetization_exact = expectation(exact, magnet);
        out.steps.push_back(row);
    }
    out.final_theta = theta;
    return out;
}

} // namespace vqtrain
