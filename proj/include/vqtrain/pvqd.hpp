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

/**
 * @file
 * Projected variational quantum dynamics: each short-time evolution step is
 * re-learned by the circuit through fidelity training, with the
 * time-energy lower bound on the per-step start fidelity.
 */
#pragma once

#include "vqtrain/optimize.hpp"

namespace vqtrain {

/// H = J sum Z Z (nearest neighbours) + h sum X. Open chain unless `periodic`.
Hamiltonian transverse_ising_hamiltonian(int n_qubits, double J, double h, bool periodic = false);

/// (1/N) sum_i Z_i.
Hamiltonian magnetization_operator(int n_qubits);

/// exp(-i H dt) |psi(theta)>, computed exactly.
StateVector trotter_target(const CircuitSpec& circuit, const ParamVector& theta,
                           const Hamiltonian& hamiltonian, double dt);

/// First-order product formula exp(-i h X dt) exp(-i J ZZ dt) |psi(theta)>.
StateVector product_formula_target(const CircuitSpec& circuit, const ParamVector& theta,
                                   double J, double h, double dt, bool periodic = false);

/// |<psi| exp(-i H dt) |psi>|^2.
double evolution_fidelity(const Hamiltonian& hamiltonian, const StateVector& psi, double dt);

inline constexpr double kOverlapFloor = 1e-12;

/// max(0, 1 - (dE dt)^2 / 4), dE spanning the eigenvalues whose eigenstates
/// overlap psi by more than kOverlapFloor.
double gamma_bound(const Hamiltonian& hamiltonian, const StateVector& psi, double dt);
double gamma_bound(const SpectralDecomposition& spectrum, const StateVector& psi, double dt);

struct BarrenPlateauBound {
    double value = 0.0;
    /// The bound applies while the start fidelity stays below K0 e^{-1/2}.
    double fidelity_ceiling = 0.0;
    bool gamma_below_ceiling = false;
};

/// var(dK) >= Tr(F)/M^2 log(K0/gamma) gamma^2.
BarrenPlateauBound barren_plateau_bound(const Metric& metric, double gamma, double k0, int n_params);

struct PvqdConfig {
    CircuitSpec circuit;
    double J = 0.25;
    double h = 1.0;
    double dt = 0.2;
    int trotter_steps = 10;
    int train_iterations = 20;
    OptimizerConfig optimizer = OptimizerConfig::for_method(Method::A_GQNG, 20, 0);
    bool product_formula = false;
    bool periodic = false;
    /// Start parameters; empty means all zeros (|0...0> for the built-in ansaetze).
    ParamVector initial_theta;
};

struct PvqdStep {
    int step = 0;
    double time = 0.0;
    double fidelity_exact = 0.0;
    double magnetization = 0.0;
    double magnetization_exact = 0.0;
    double final_loss = 0.0;
    double gamma_bound = 0.0;
    double fidelity_pre_train = 0.0;
    std::string error; ///< empty unless training failed at this step
};

struct PvqdTrajectory {
    std::vector<PvqdStep> steps; ///< step 0 is the initial state
    ParamVector final_theta;
};

PvqdTrajectory pvqd_run(const PvqdConfig& config);

} // namespace vqtrain
