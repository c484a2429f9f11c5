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
#include "vqtrain/statevec.hpp"

#include "vqtrain/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace vqtrain {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw SizeError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                        std::to_string(kMaxQubits) + "]");
    }
}

Eigen::Index dimension_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

inline std::size_t mask_of(int n_qubits, int qubit) {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

// Applies [[a, b], [c, d]] to the given qubit.
void apply_1q(ComplexVector& psi, int n, int qubit, Complex a, Complex b, Complex c, Complex d) {
    const std::size_t mask = mask_of(n, qubit);
    const std::size_t dim = static_cast<std::size_t>(psi.size());
    Complex* data = psi.data();
    for (std::size_t hi = 0; hi < dim; hi += 2 * mask) {
        for (std::size_t lo = 0; lo < mask; ++lo) {
            const std::size_t i0 = hi + lo;
            const std::size_t i1 = i0 + mask;
            const Complex x = data[i0];
            const Complex y = data[i1];
            data[i0] = a * x + b * y;
            data[i1] = c * x + d * y;
        }
    }
}

void apply_diag_1q(ComplexVector& psi, int n, int qubit, Complex d0, Complex d1) {
    const std::size_t mask = mask_of(n, qubit);
    const std::size_t dim = static_cast<std::size_t>(psi.size());
    Complex* data = psi.data();
    for (std::size_t i = 0; i < dim; ++i) {
        data[i] *= (i & mask) ? d1 : d0;
    }
}

void apply_cnot(ComplexVector& psi, int n, int control, int target) {
    const std::size_t cmask = mask_of(n, control);
    const std::size_t tmask = mask_of(n, target);
    const std::size_t dim = static_cast<std::size_t>(psi.size());
    Complex* data = psi.data();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(data[i], data[i | tmask]);
        }
    }
}

void apply_cz(ComplexVector& psi, int n, int q0, int q1) {
    const std::size_t both = mask_of(n, q0) | mask_of(n, q1);
    const std::size_t dim = static_cast<std::size_t>(psi.size());
    Complex* data = psi.data();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) == both) data[i] = -data[i];
    }
}

// sqrt(iSWAP) acts on span{|01>, |10>} as [[1, s], [s, 1]] / sqrt(2) with s = +-i.
void apply_sqrt_iswap(ComplexVector& psi, int n, int q0, int q1, bool inverse) {
    const std::size_t m0 = mask_of(n, q0);
    const std::size_t m1 = mask_of(n, q1);
    const double r = 1.0 / std::sqrt(2.0);
    const Complex off = inverse ? Complex{0.0, -r} : Complex{0.0, r};
    const std::size_t dim = static_cast<std::size_t>(psi.size());
    Complex* data = psi.data();
    for (std::size_t i = 0; i < dim; ++i) {
        // i has q0 = 0, q1 = 1; partner has q0 = 1, q1 = 0.
        if (!(i & m0) && (i & m1)) {
            const std::size_t j = (i | m0) & ~m1;
            const Complex x = data[i];
            const Complex y = data[j];
            data[i] = r * x + off * y;
            data[j] = off * x + r * y;
        }
    }
}

void apply_rotation(ComplexVector& psi, int n, GateKind kind, int qubit, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
    case GateKind::RX:
        apply_1q(psi, n, qubit, c, -kI * s, -kI * s, c);
        break;
    case GateKind::RY:
        apply_1q(psi, n, qubit, c, -s, s, c);
        break;
    case GateKind::RZ:
        apply_diag_1q(psi, n, qubit, Complex{c, -s}, Complex{c, s});
        break;
    default:
        throw ContractError("not a rotation gate");
    }
}

void validate_gate(const Gate& gate, int n_qubits) {
    const int arity = gate_arity(gate.kind);
    for (int k = 0; k < arity; ++k) {
        const int q = gate.qubits[static_cast<std::size_t>(k)];
        if (q < 0 || q >= n_qubits) {
            throw IndexError("qubit index " + std::to_string(q) + " out of range for " +
                             std::to_string(n_qubits) + " qubits");
        }
    }
    if (arity == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw IndexError("two-qubit gate on identical qubits");
    }
}

} // namespace

bool is_rotation(GateKind kind) noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

int gate_arity(GateKind kind) noexcept { return is_rotation(kind) ? 1 : 2; }

std::string to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CPHASE: return "CPHASE";
    case GateKind::SQRT_ISWAP: return "SQRT_ISWAP";
    }
    return "?";
}

Gate Gate::rotation(GateKind kind, int qubit, int slot) {
    if (!is_rotation(kind)) throw ContractError("parameterized gate must be a rotation");
    if (slot < 0) throw IndexError("negative parameter slot");
    Gate g;
    g.kind = kind;
    g.qubits = {qubit, -1};
    g.parameter_slot = slot;
    return g;
}

Gate Gate::fixed_rotation(GateKind kind, int qubit, double angle) {
    if (!is_rotation(kind)) throw ContractError("fixed-angle gate must be a rotation");
    Gate g;
    g.kind = kind;
    g.qubits = {qubit, -1};
    g.fixed_angle = angle;
    return g;
}

Gate Gate::entangler(GateKind kind, int first, int second) {
    if (is_rotation(kind)) throw ContractError("entangler must be a two-qubit gate");
    if (first == second) throw IndexError("two-qubit gate on identical qubits");
    Gate g;
    g.kind = kind;
    g.qubits = {first, second};
    return g;
}

StateVector::StateVector(int n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amplitudes_.size() != dimension_of(n_qubits)) {
        throw SizeError("amplitude vector length " + std::to_string(amplitudes_.size()) +
                        " != 2^" + std::to_string(n_qubits));
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ContractError("state is not normalized (norm " + std::to_string(norm) + ")");
    }
}

StateVector StateVector::normalized(int n_qubits, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ContractError("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return StateVector(n_qubits, std::move(amplitudes));
}

StateVector zero_state(int n_qubits) {
    check_qubit_count(n_qubits);
    ComplexVector amps = ComplexVector::Zero(dimension_of(n_qubits));
    amps[0] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector apply_gate(StateVector state, const Gate& gate, std::optional<double> angle) {
    validate_gate(gate, state.n_qubits());
    if (is_rotation(gate.kind) != angle.has_value()) {
        throw ContractError(is_rotation(gate.kind) ? "rotation gate requires an angle"
                                                   : "entangling gate takes no angle");
    }
    kernels::apply(state.mutable_amplitudes(), state.n_qubits(), gate, angle.value_or(0.0));
    return state;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw SizeError("inner product of mismatched vectors");
    return a.dot(b); // Eigen's dot conjugates the first argument.
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) throw SizeError("fidelity of states with different qubit counts");
    const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
    return std::clamp(f, 0.0, 1.0);
}

namespace kernels {

void apply(ComplexVector& psi, int n, const Gate& gate, double angle) {
    switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        apply_rotation(psi, n, gate.kind, gate.qubits[0], angle);
        break;
    case GateKind::CNOT:
        apply_cnot(psi, n, gate.qubits[0], gate.qubits[1]);
        break;
    case GateKind::CPHASE:
        apply_cz(psi, n, gate.qubits[0], gate.qubits[1]);
        break;
    case GateKind::SQRT_ISWAP:
        apply_sqrt_iswap(psi, n, gate.qubits[0], gate.qubits[1], false);
        break;
    }
}

void apply_inverse(ComplexVector& psi, int n, const Gate& gate, double angle) {
    switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        apply_rotation(psi, n, gate.kind, gate.qubits[0], -angle);
        break;
    case GateKind::CNOT:
    case GateKind::CPHASE:
        apply(psi, n, gate, angle);
        break;
    case GateKind::SQRT_ISWAP:
        apply_sqrt_iswap(psi, n, gate.qubits[0], gate.qubits[1], true);
        break;
    }
}

void apply_pauli(ComplexVector& psi, int n, int qubit, char pauli) {
    switch (pauli) {
    case 'X':
        apply_1q(psi, n, qubit, 0.0, 1.0, 1.0, 0.0);
        break;
    case 'Y':
        apply_1q(psi, n, qubit, 0.0, -kI, kI, 0.0);
        break;
    case 'Z':
        apply_diag_1q(psi, n, qubit, 1.0, -1.0);
        break;
    default:
        throw ContractError(std::string("unknown Pauli '") + pauli + "'");
    }
}

void apply_generator(ComplexVector& psi, int n, const Gate& gate) {
    const int q = gate.qubits[0];
    const Complex h = -0.5 * kI;
    switch (gate.kind) {
    case GateKind::RX:
        apply_1q(psi, n, q, 0.0, h, h, 0.0);
        break;
    case GateKind::RY:
        apply_1q(psi, n, q, 0.0, -h * kI, h * kI, 0.0);
        break;
    case GateKind::RZ:
        apply_diag_1q(psi, n, q, h, -h);
        break;
    default:
        throw ContractError("entangling gates have no generator");
    }
}

} // namespace kernels

Hamiltonian::Hamiltonian(int n_qubits, ComplexMatrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    check_qubit_count(n_qubits);
    const Eigen::Index dim = dimension_of(n_qubits);
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw SizeError("Hamiltonian must be 2^n x 2^n");
    }
    const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym >= 1e-12) {
        throw ContractError("Hamiltonian is not Hermitian (max |H - H^dagger| = " +
                            std::to_string(asym) + ")");
    }
    // Symmetrize away round-off so downstream solvers see an exactly Hermitian input.
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
    real_ = matrix_.imag().cwiseAbs().maxCoeff() == 0.0;
}

Hamiltonian Hamiltonian::operator+(const Hamiltonian& other) const {
    if (other.n_qubits_ != n_qubits_) throw SizeError("adding Hamiltonians of different sizes");
    return Hamiltonian(n_qubits_, matrix_ + other.matrix_);
}

Hamiltonian Hamiltonian::operator*(double scale) const {
    return Hamiltonian(n_qubits_, matrix_ * scale);
}

Hamiltonian from_pauli_terms(int n_qubits, std::span<const PauliTerm> terms) {
    check_qubit_count(n_qubits);
    const Eigen::Index dim = dimension_of(n_qubits);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (const PauliTerm& term : terms) {
        for (const auto& [q, p] : term.ops) {
            if (q < 0 || q >= n_qubits) throw IndexError("Pauli term qubit out of range");
            if (p != 'X' && p != 'Y' && p != 'Z') {
                throw ContractError(std::string("unknown Pauli '") + p + "'");
            }
        }
        for (Eigen::Index col = 0; col < dim; ++col) {
            auto row = static_cast<std::size_t>(col);
            Complex phase = term.coefficient;
            // Operators act right to left on the running basis index.
            for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
                const std::size_t mask = mask_of(n_qubits, it->first);
                const bool bit = (row & mask) != 0;
                if (it->second == 'Z') {
                    if (bit) phase = -phase;
                } else {
                    if (it->second == 'Y') phase *= bit ? -kI : kI;
                    row ^= mask;
                }
            }
            h(static_cast<Eigen::Index>(row), col) += phase;
        }
    }
    return Hamiltonian(n_qubits, std::move(h));
}

SpectralDecomposition::SpectralDecomposition(const Hamiltonian& hamiltonian) {
    if (hamiltonian.is_real()) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(hamiltonian.matrix().real());
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hamiltonian.matrix());
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
    }
}

ComplexMatrix SpectralDecomposition::propagator(double t) const {
    ComplexVector phases(eigenvalues_.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases[k] = std::polar(1.0, -eigenvalues_[k] * t);
    }
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexVector SpectralDecomposition::evolve(const ComplexVector& psi, double t) const {
    ComplexVector coeffs = eigenvectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs[k] *= std::polar(1.0, -eigenvalues_[k] * t);
    }
    return eigenvectors_ * coeffs;
}

StateVector evolve_exact(const StateVector& state, const Hamiltonian& hamiltonian, double t) {
    if (state.n_qubits() != hamiltonian.n_qubits()) throw SizeError("state/Hamiltonian size mismatch");
    if (!std::isfinite(t)) throw ContractError("evolution time must be finite");
    if (t == 0.0) return state;
    SpectralDecomposition spectrum(hamiltonian);
    return StateVector::normalized(state.n_qubits(), spectrum.evolve(state.amplitudes(), t));
}

double expectation(const StateVector& state, const Hamiltonian& hamiltonian) {
    if (state.n_qubits() != hamiltonian.n_qubits()) throw SizeError("state/Hamiltonian size mismatch");
    return state.amplitudes().dot(hamiltonian.matrix() * state.amplitudes()).real();
}

} // namespace vqtrain
