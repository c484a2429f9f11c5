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
 * Quantum optimal control of a driven Ising chain with piecewise-constant
 * transverse fields. Gradients and the control-space metric come from
 * central finite differences of the evolved state.
 */
#pragma once

#include "vqtrain/geometry.hpp"
#include "vqtrain/optimize.hpp"

namespace vqtrain {

/// H0 = sum XX (nearest neighbours) + h sum Z + g sum X. Open chain unless
/// `periodic` is set, which adds the (N-1, 0) bond for N > 2.
Hamiltonian ising_hamiltonian(int n_qubits, double h, double g, bool periodic = false);

struct GroundState {
    StateVector state;
    double energy = 0.0;
    double gap = 0.0;
    /// True when the two lowest levels are closer than 1e-10. The
    /// lowest-index eigenvector is returned in that case.
    bool degenerate = false;
};

/// Lowest eigenvector with its largest-magnitude amplitude made real positive.
GroundState ground_state(const Hamiltonian& hamiltonian);

/// Piecewise-constant drive: step p applies exp(-i H_p dt) with
/// H_p = sum XX + sum_n amplitudes(p, n) Z_n + g sum X.
struct ControlProtocol {
    int n_qubits = 0;
    int steps = 0;
    double dt = 1.0;
    RealMatrix amplitudes; ///< steps x n_qubits
    double g = 0.0;
    bool periodic = false;

    int n_params() const noexcept { return steps * n_qubits; }
    double total_time() const noexcept { return steps * dt; }
    void validate() const;

    /// Step-major flattening: index p * n_qubits + n.
    ParamVector flatten() const;
    ControlProtocol with_parameters(const ParamVector& values) const;
};

/// Amplitudes uniform in [-1, 1].
ControlProtocol random_protocol(int n_qubits, int steps, double dt, double g,
                                std::mt19937_64& rng, bool periodic = false);

struct ControlProblem {
    ControlProtocol protocol;
    StateVector target;
    StateVector initial;
    double fd_delta_gradient = 1e-5;
    double fd_delta_metric = 1e-4;
};

/// Target = ground state of H0(target_h, target_g); initial = |0...0>.
ControlProblem make_control_problem(ControlProtocol protocol, double target_h, double target_g);

StateVector evolve_protocol(const ControlProblem& problem);
double protocol_fidelity(const ControlProblem& problem);

/// Central differences of the fidelity over all d*N amplitudes, step-major.
RealVector control_gradient(const ControlProblem& problem);

/// QFIM assembled from finite-difference tangents of the final state.
Metric control_qfim(const ControlProblem& problem);

/// The control problem seen as an objective over the flattened amplitudes.
class ControlObjective final : public Objective {
public:
    explicit ControlObjective(ControlProblem problem);

    int dimension() const override { return problem_.protocol.n_params(); }
    double fidelity(const ParamVector& theta) const override;
    Evaluation evaluate(const ParamVector& theta, bool with_metric) const override;

    const ControlProblem& problem() const noexcept { return problem_; }

private:
    ControlProblem problem_;
};

/// Trains from the amplitudes stored in the problem's protocol.
TrainTrace train_control(const ControlProblem& problem, const OptimizerConfig& config);

} // namespace vqtrain
