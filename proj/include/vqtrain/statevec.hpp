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
 * Dense statevector engine: states, gates, Hamiltonians and exact evolution.
 *
 * Basis convention: qubit 0 is the most significant bit of the basis index,
 * so |q0 q1 ... q_{n-1}> maps to index sum_k q_k 2^{n-1-k}.
 */
#pragma once

#include "vqtrain/types.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vqtrain {

inline constexpr int kMaxQubits = 24;

class StateVector {
public:
    /// Wraps amplitudes that are already unit norm (checked to 1e-10).
    StateVector(int n_qubits, ComplexVector amplitudes);

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    static StateVector normalized(int n_qubits, ComplexVector amplitudes);

    int n_qubits() const noexcept { return n_qubits_; }
    Eigen::Index dimension() const noexcept { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

    /// Mutable access for in-place kernels. Callers keep the norm invariant.
    ComplexVector& mutable_amplitudes() noexcept { return amplitudes_; }

private:
    int n_qubits_;
    ComplexVector amplitudes_;
};

enum class GateKind { RX, RY, RZ, CNOT, CPHASE, SQRT_ISWAP };

bool is_rotation(GateKind kind) noexcept;
int gate_arity(GateKind kind) noexcept;
std::string to_string(GateKind kind);

/// One gate of a circuit.
///
/// Rotations are R_a(t) = exp(-i t sigma^a / 2). A rotation either reads its
/// angle from a parameter slot or carries a fixed angle (R-CPHASE's initial
/// RY(pi/2) layer). For CNOT qubits[0] is the control.
struct Gate {
    GateKind kind = GateKind::RY;
    std::array<int, 2> qubits{0, -1};
    std::optional<int> parameter_slot;
    double fixed_angle = 0.0;

    static Gate rotation(GateKind kind, int qubit, int slot);
    static Gate fixed_rotation(GateKind kind, int qubit, double angle);
    static Gate entangler(GateKind kind, int first, int second);

    bool operator==(const Gate&) const = default;
};

/// |0...0> on n qubits, 1 <= n <= kMaxQubits.
StateVector zero_state(int n_qubits);

/// Returns U_gate * state. An angle must be given iff the gate is a rotation.
StateVector apply_gate(StateVector state, const Gate& gate, std::optional<double> angle = std::nullopt);

/// |<a|b>|^2, clamped to [0, 1].
double fidelity(const StateVector& a, const StateVector& b);

/// <a|b> for equally sized raw vectors.
Complex inner(const ComplexVector& a, const ComplexVector& b);

namespace kernels {

// In-place gate kernels on raw amplitude vectors of n qubits. No validation.
void apply(ComplexVector& psi, int n_qubits, const Gate& gate, double angle);
void apply_inverse(ComplexVector& psi, int n_qubits, const Gate& gate, double angle);
// Multiplies by the rotation generator -i sigma^a / 2 of a rotation gate.
void apply_generator(ComplexVector& psi, int n_qubits, const Gate& gate);
void apply_pauli(ComplexVector& psi, int n_qubits, int qubit, char pauli);

} // namespace kernels

/// Dense Hermitian operator on n qubits (hbar = 1).
class Hamiltonian {
public:
    /// Validates the shape and Hermiticity (max |H - H^dagger| < 1e-12).
    Hamiltonian(int n_qubits, ComplexMatrix matrix);

    int n_qubits() const noexcept { return n_qubits_; }
    Eigen::Index dimension() const noexcept { return matrix_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    bool is_real() const noexcept { return real_; }

    Hamiltonian operator+(const Hamiltonian& other) const;
    Hamiltonian operator*(double scale) const;

private:
    int n_qubits_;
    ComplexMatrix matrix_;
    bool real_;
};

/// coefficient * (product of single-qubit Paulis). ops holds (qubit, 'X'|'Y'|'Z').
struct PauliTerm {
    double coefficient = 1.0;
    std::vector<std::pair<int, char>> ops;
};

Hamiltonian from_pauli_terms(int n_qubits, std::span<const PauliTerm> terms);

/// Eigendecomposition of a Hamiltonian, reusable for many evolution times.
class SpectralDecomposition {
public:
    explicit SpectralDecomposition(const Hamiltonian& hamiltonian);

    const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
    const ComplexMatrix& eigenvectors() const noexcept { return eigenvectors_; }

    /// exp(-i H t).
    ComplexMatrix propagator(double t) const;
    ComplexVector evolve(const ComplexVector& psi, double t) const;

private:
    RealVector eigenvalues_;
    ComplexMatrix eigenvectors_;
};

/// exp(-i H t) |state> via Hermitian eigendecomposition.
StateVector evolve_exact(const StateVector& state, const Hamiltonian& hamiltonian, double t);

/// <psi|H|psi>.
double expectation(const StateVector& state, const Hamiltonian& hamiltonian);

} // namespace vqtrain
