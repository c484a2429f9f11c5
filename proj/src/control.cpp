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

#include "vqtrain/control.hpp"

#include "vqtrain/errors.hpp"

#include <cmath>
#include <vector>

namespace vqtrain {
namespace {

// Real symmetric generator with cached eigenbasis; applies exp(-i H t).
struct RealPropagator {
    RealVector eigenvalues;
    RealMatrix eigenvectors;

    RealPropagator(const RealMatrix& h) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
        eigenvalues = solver.eigenvalues();
        eigenvectors = solver.eigenvectors();
    }

    ComplexVector apply(const ComplexVector& psi, double t) const {
        ComplexVector coeff = eigenvectors.transpose().cast<Complex>() * psi;
        for (Eigen::Index k = 0; k < coeff.size(); ++k) {
            coeff[k] *= std::polar(1.0, -eigenvalues[k] * t);
        }
        return eigenvectors.cast<Complex>() * coeff;
    }

    ComplexMatrix matrix(double t) const {
        ComplexVector phases(eigenvalues.size());
        for (Eigen::Index k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, -eigenvalues[k] * t);
        const ComplexMatrix v = eigenvectors.cast<Complex>();
        return v * phases.asDiagonal() * v.transpose();
    }
};

RealVector diag_z(int n, int qubit) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    RealVector z(dim);
    const int shift = n - 1 - qubit;
    for (Eigen::Index i = 0; i < dim; ++i) z[i] = ((i >> shift) & 1) ? -1.0 : 1.0;
    return z;
}

// sum XX + g sum X, the drive-independent part of every step.
RealMatrix drift_matrix(int n, double g, bool periodic) {
    return ising_hamiltonian(n, 0.0, g, periodic).matrix().real();
}

// Per-step Hamiltonians share the drift; only the Z diagonal changes.
class StepBuilder {
public:
    explicit StepBuilder(const ControlProtocol& p) : drift_(drift_matrix(p.n_qubits, p.g, p.periodic)) {
        for (int n = 0; n < p.n_qubits; ++n) z_.push_back(diag_z(p.n_qubits, n));
    }

    RealMatrix hamiltonian(const RealVector& row) const {
        RealMatrix h = drift_;
        RealVector d = RealVector::Zero(h.rows());
        for (std::size_t n = 0; n < z_.size(); ++n) d += row[static_cast<Eigen::Index>(n)] * z_[n];
        h.diagonal() += d;
        return h;
    }

private:
    RealMatrix drift_;
    std::vector<RealVector> z_;
};

void check_problem(const ControlProblem& problem) {
    problem.protocol.validate();
    const int n = problem.protocol.n_qubits;
    if (problem.target.n_qubits() != n || problem.initial.n_qubits() != n) {
        throw SizeError("control target/initial size does not match the protocol");
    }
}

// Forward states psi_0..psi_d and backward bras b_p = (U_d ... U_{p+1})^dagger target.
struct Trajectory {
    std::vector<ComplexVector> forward;
    std::vector<ComplexVector> backward;
};

Trajectory sweep(const ControlProblem& problem, const StepBuilder& builder,
                 std::vector<RealPropagator>& props) {
    const ControlProtocol& p = problem.protocol;
    props.clear();
    props.reserve(static_cast<std::size_t>(p.steps));
    Trajectory tr;
    tr.forward.push_back(problem.initial.amplitudes());
    for (int s = 0; s < p.steps; ++s) {
        props.emplace_back(builder.hamiltonian(p.amplitudes.row(s).transpose()));
        tr.forward.push_back(props.back().apply(tr.forward.back(), p.dt));
    }
    tr.backward.assign(static_cast<std::size_t>(p.steps) + 1, ComplexVector());
    tr.backward[static_cast<std::size_t>(p.steps)] = problem.target.amplitudes();
    for (int s = p.steps; s >= 1; --s) {
        // U^dagger = exp(+i H dt).
        tr.backward[static_cast<std::size_t>(s - 1)] =
            props[static_cast<std::size_t>(s - 1)].apply(tr.backward[static_cast<std::size_t>(s)], -p.dt);
    }
    return tr;
}

} // namespace

Hamiltonian ising_hamiltonian(int n_qubits, double h, double g, bool periodic) {
    if (n_qubits < 1) throw SizeError("Ising chain needs at least one qubit");
    std::vector<PauliTerm> terms;
    for (int n = 0; n + 1 < n_qubits; ++n) terms.push_back({1.0, {{n, 'X'}, {n + 1, 'X'}}});
    if (periodic && n_qubits > 2) terms.push_back({1.0, {{n_qubits - 1, 'X'}, {0, 'X'}}});
    for (int n = 0; n < n_qubits; ++n) {
        if (h != 0.0) terms.push_back({h, {{n, 'Z'}}});
        if (g != 0.0) terms.push_back({g, {{n, 'X'}}});
    }
    if (terms.empty()) {
        return Hamiltonian(n_qubits, ComplexMatrix::Zero(Eigen::Index{1} << n_qubits, Eigen::Index{1} << n_qubits));
    }
    return from_pauli_terms(n_qubits, terms);
}

GroundState ground_state(const Hamiltonian& hamiltonian) {
    const SpectralDecomposition eig(hamiltonian);
    ComplexVector v = eig.eigenvectors().col(0);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    v *= std::conj(v[arg]) / std::abs(v[arg]);
    v[arg] = Complex{v[arg].real(), 0.0};
    GroundState out{StateVector::normalized(hamiltonian.n_qubits(), v), eig.eigenvalues()[0], 0.0, false};
    if (eig.eigenvalues().size() > 1) {
        out.gap = eig.eigenvalues()[1] - eig.eigenvalues()[0];
        out.degenerate = out.gap < 1e-10;
    }
    return out;
}

void ControlProtocol::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) throw SizeError("protocol qubit count out of range");
    if (steps < 0) throw ContractError("protocol step count must be non-negative");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractError("protocol timestep must be positive");
    if (amplitudes.rows() != steps || amplitudes.cols() != n_qubits) {
        throw SizeError("amplitude grid must be steps x n_qubits");
    }
}

ParamVector ControlProtocol::flatten() const {
    ParamVector out(n_params());
    for (int p = 0; p < steps; ++p) {
        for (int n = 0; n < n_qubits; ++n) out[p * n_qubits + n] = amplitudes(p, n);
    }
    return out;
}

ControlProtocol ControlProtocol::with_parameters(const ParamVector& values) const {
    if (values.size() != n_params()) throw SizeError("parameter count does not match the protocol");
    ControlProtocol out = *this;
    for (int p = 0; p < steps; ++p) {
        for (int n = 0; n < n_qubits; ++n) out.amplitudes(p, n) = values[p * n_qubits + n];
    }
    return out;
}

ControlProtocol random_protocol(int n_qubits, int steps, double dt, double g,
                                std::mt19937_64& rng, bool periodic) {
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    ControlProtocol p{n_qubits, steps, dt, RealMatrix(steps, n_qubits), g, periodic};
    for (int s = 0; s < steps; ++s) {
        for (int n = 0; n < n_qubits; ++n) p.amplitudes(s, n) = uniform(rng);
    }
    p.validate();
    return p;
}

ControlProblem make_control_problem(ControlProtocol protocol, double target_h, double target_g) {
    protocol.validate();
    const int n = protocol.n_qubits;
    const bool periodic = protocol.periodic;
    StateVector target = ground_state(ising_hamiltonian(n, target_h, target_g, periodic)).state;
    return ControlProblem{std::move(protocol), std::move(target), zero_state(n)};
}

StateVector evolve_protocol(const ControlProblem& problem) {
    check_problem(problem);
    const ControlProtocol& p = problem.protocol;
    const StepBuilder builder(p);
    ComplexVector psi = problem.initial.amplitudes();
    for (int s = 0; s < p.steps; ++s) {
        psi = RealPropagator(builder.hamiltonian(p.amplitudes.row(s).transpose())).apply(psi, p.dt);
    }
    return StateVector::normalized(p.n_qubits, std::move(psi));
}

double protocol_fidelity(const ControlProblem& problem) {
    return fidelity(evolve_protocol(problem), problem.target);
}

RealVector control_gradient(const ControlProblem& problem) {
    check_problem(problem);
    const double delta = problem.fd_delta_gradient;
    if (!(delta > 0.0)) throw ContractError("finite-difference step must be positive");
    const ControlProtocol& p = problem.protocol;
    const StepBuilder builder(p);
    std::vector<RealPropagator> props;
    const Trajectory tr = sweep(problem, builder, props);
    RealVector grad(p.n_params());
    for (int s = 0; s < p.steps; ++s) {
        const ComplexVector& before = tr.forward[static_cast<std::size_t>(s)];
        const ComplexVector& bra = tr.backward[static_cast<std::size_t>(s) + 1];
        for (int n = 0; n < p.n_qubits; ++n) {
            double k[2];
            for (int sign = 0; sign < 2; ++sign) {
                RealVector row = p.amplitudes.row(s).transpose();
                row[n] += sign == 0 ? delta : -delta;
                const ComplexVector after = RealPropagator(builder.hamiltonian(row)).apply(before, p.dt);
                k[sign] = std::norm(bra.dot(after));
            }
            grad[s * p.n_qubits + n] = (k[0] - k[1]) / (2.0 * delta);
        }
    }
    return grad;
}

namespace {

// Finite-difference tangents of the final state, one column per amplitude.
ComplexMatrix control_tangents(const ControlProblem& problem, ComplexVector& final_state) {
    const double delta = problem.fd_delta_metric;
    if (!(delta > 0.0)) throw ContractError("finite-difference step must be positive");
    const ControlProtocol& p = problem.protocol;
    const StepBuilder builder(p);
    std::vector<RealPropagator> props;
    const Trajectory tr = sweep(problem, builder, props);
    final_state = tr.forward.back();
    const Eigen::Index dim = final_state.size();
    // suffix[s] = U_d ... U_{s+1}
    std::vector<ComplexMatrix> suffix(static_cast<std::size_t>(p.steps) + 1);
    suffix[static_cast<std::size_t>(p.steps)] = ComplexMatrix::Identity(dim, dim);
    for (int s = p.steps - 1; s >= 0; --s) {
        suffix[static_cast<std::size_t>(s)] =
            suffix[static_cast<std::size_t>(s) + 1] * props[static_cast<std::size_t>(s)].matrix(p.dt);
    }
    ComplexMatrix t(dim, p.n_params());
    for (int s = 0; s < p.steps; ++s) {
        const ComplexVector& before = tr.forward[static_cast<std::size_t>(s)];
        for (int n = 0; n < p.n_qubits; ++n) {
            RealVector up = p.amplitudes.row(s).transpose();
            RealVector down = up;
            up[n] += delta;
            down[n] -= delta;
            const ComplexVector diff = RealPropagator(builder.hamiltonian(up)).apply(before, p.dt) -
                                       RealPropagator(builder.hamiltonian(down)).apply(before, p.dt);
            t.col(s * p.n_qubits + n) = suffix[static_cast<std::size_t>(s) + 1] * diff / (2.0 * delta);
        }
    }
    return t;
}

} // namespace

Metric control_qfim(const ControlProblem& problem) {
    check_problem(problem);
    ComplexVector psi;
    const ComplexMatrix t = control_tangents(problem, psi);
    return qfim_from_tangents(psi, t);
}

ControlObjective::ControlObjective(ControlProblem problem) : problem_(std::move(problem)) {
    check_problem(problem_);
}

double ControlObjective::fidelity(const ParamVector& theta) const {
    ControlProblem p = problem_;
    p.protocol = problem_.protocol.with_parameters(theta);
    return protocol_fidelity(p);
}

Evaluation ControlObjective::evaluate(const ParamVector& theta, bool with_metric) const {
    ControlProblem p = problem_;
    p.protocol = problem_.protocol.with_parameters(theta);
    Evaluation out;
    out.fidelity = protocol_fidelity(p);
    out.gradient = control_gradient(p);
    if (with_metric) out.metric = control_qfim(p);
    return out;
}

TrainTrace train_control(const ControlProblem& problem, const OptimizerConfig& config) {
    const ControlObjective objective(problem);
    return train(objective, problem.protocol.flatten(), config);
}

} // namespace vqtrain
