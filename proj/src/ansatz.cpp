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
#include "vqtrain/ansatz.hpp"

#include "vqtrain/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace vqtrain {

namespace {

void check_theta(const CircuitSpec& circuit, const ParamVector& theta) {
    if (theta.size() != circuit.n_params()) {
        throw SizeError("parameter vector has length " + std::to_string(theta.size()) +
                        ", circuit expects " + std::to_string(circuit.n_params()));
    }
}

double angle_of(const Gate& gate, const ParamVector& theta) {
    return gate.parameter_slot ? theta[*gate.parameter_slot] : gate.fixed_angle;
}

void append_yz_layer(std::vector<Gate>& gates, int n, int layer, int& slot, GateKind entangler) {
    for (int q = 0; q < n; ++q) gates.push_back(Gate::rotation(GateKind::RY, q, slot++));
    for (int q = 0; q < n; ++q) gates.push_back(Gate::rotation(GateKind::RZ, q, slot++));
    // Layers are 1-indexed: odd layers pair (0,1),(2,3),..., even layers (1,2),(3,4),...
    const int first = (layer % 2 == 1) ? 0 : 1;
    for (int q = first; q + 1 < n; q += 2) gates.push_back(Gate::entangler(entangler, q, q + 1));
}

} // namespace

std::string to_string(AnsatzKind kind) {
    switch (kind) {
    case AnsatzKind::YZ_CNOT: return "yz-cnot";
    case AnsatzKind::YZ_SQRT_ISWAP: return "yz-sqiswap";
    case AnsatzKind::R_CPHASE: return "r-cphase";
    case AnsatzKind::PRODUCT_RY: return "product-ry";
    }
    return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
    if (name == "yz-cnot") return AnsatzKind::YZ_CNOT;
    if (name == "yz-sqiswap") return AnsatzKind::YZ_SQRT_ISWAP;
    if (name == "r-cphase") return AnsatzKind::R_CPHASE;
    throw ContractError("unknown ansatz '" + std::string(name) +
                        "' (valid: yz-cnot, yz-sqiswap, r-cphase)");
}

CircuitSpec::CircuitSpec(AnsatzKind kind, int n_qubits, int layers, std::vector<Gate> gates,
                         std::optional<std::uint64_t> axis_seed)
    : kind_(kind), n_qubits_(n_qubits), layers_(layers), n_params_(0), gates_(std::move(gates)),
      axis_seed_(axis_seed) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) throw SizeError("qubit count out of range");
    std::vector<int> seen;
    for (const Gate& g : gates_) {
        for (int k = 0; k < gate_arity(g.kind); ++k) {
            const int q = g.qubits[static_cast<std::size_t>(k)];
            if (q < 0 || q >= n_qubits) throw IndexError("gate qubit out of range");
        }
        if (g.parameter_slot) {
            const int s = *g.parameter_slot;
            if (s >= static_cast<int>(seen.size())) seen.resize(static_cast<std::size_t>(s) + 1, 0);
            ++seen[static_cast<std::size_t>(s)];
        }
    }
    for (std::size_t s = 0; s < seen.size(); ++s) {
        if (seen[s] != 1) {
            throw ContractError("parameter slot " + std::to_string(s) + " used " +
                                std::to_string(seen[s]) + " times");
        }
    }
    n_params_ = static_cast<int>(seen.size());
}

std::string CircuitSpec::serialize() const {
    std::ostringstream out;
    for (const Gate& g : gates_) {
        out << to_string(g.kind) << " q" << g.qubits[0];
        if (gate_arity(g.kind) == 2) out << " q" << g.qubits[1];
        if (g.parameter_slot) {
            out << " p" << *g.parameter_slot;
        } else if (is_rotation(g.kind)) {
            out << " a" << g.fixed_angle;
        }
        out << '\n';
    }
    return out.str();
}

CircuitSpec build_ansatz(AnsatzKind kind, int n_qubits, int layers,
                         std::optional<std::uint64_t> axis_seed) {
    if (n_qubits < 2 || n_qubits > kMaxQubits) {
        throw SizeError("layered ansatz needs 2 <= qubits <= " + std::to_string(kMaxQubits));
    }
    if (layers < 1) throw SizeError("layered ansatz needs at least one layer");
    std::vector<Gate> gates;
    int slot = 0;
    switch (kind) {
    case AnsatzKind::YZ_CNOT:
    case AnsatzKind::YZ_SQRT_ISWAP: {
        const GateKind ent = kind == AnsatzKind::YZ_CNOT ? GateKind::CNOT : GateKind::SQRT_ISWAP;
        for (int l = 1; l <= layers; ++l) append_yz_layer(gates, n_qubits, l, slot, ent);
        return CircuitSpec(kind, n_qubits, layers, std::move(gates));
    }
    case AnsatzKind::R_CPHASE: {
        const std::uint64_t seed = axis_seed.value_or(0);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> axis(0, 2);
        constexpr GateKind axes[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
        for (int q = 0; q < n_qubits; ++q) {
            gates.push_back(Gate::fixed_rotation(GateKind::RY, q, std::numbers::pi / 2));
        }
        for (int l = 1; l <= layers; ++l) {
            for (int q = 0; q < n_qubits; ++q) gates.push_back(Gate::rotation(axes[axis(rng)], q, slot++));
            for (int q = 0; q + 1 < n_qubits; ++q) gates.push_back(Gate::entangler(GateKind::CPHASE, q, q + 1));
        }
        return CircuitSpec(kind, n_qubits, layers, std::move(gates), seed);
    }
    case AnsatzKind::PRODUCT_RY:
        return build_product_ansatz(n_qubits);
    }
    throw ContractError("unknown ansatz kind");
}

CircuitSpec build_product_ansatz(int n_qubits) {
    std::vector<Gate> gates;
    for (int q = 0; q < n_qubits; ++q) gates.push_back(Gate::rotation(GateKind::RY, q, q));
    return CircuitSpec(AnsatzKind::PRODUCT_RY, n_qubits, 1, std::move(gates));
}

StateVector prepare(const CircuitSpec& circuit, const ParamVector& theta) {
    check_theta(circuit, theta);
    StateVector state = zero_state(circuit.n_qubits());
    ComplexVector& psi = state.mutable_amplitudes();
    for (const Gate& g : circuit.gates()) kernels::apply(psi, circuit.n_qubits(), g, angle_of(g, theta));
    return state;
}

ComplexMatrix tangents(const CircuitSpec& circuit, const ParamVector& theta) {
    check_theta(circuit, theta);
    const int n = circuit.n_qubits();
    const auto& gates = circuit.gates();
    ComplexMatrix out(Eigen::Index{1} << n, circuit.n_params());
    ComplexVector psi = zero_state(n).amplitudes();
    ComplexVector branch(psi.size());
    for (std::size_t g = 0; g < gates.size(); ++g) {
        kernels::apply(psi, n, gates[g], angle_of(gates[g], theta));
        if (!gates[g].parameter_slot) continue;
        branch = psi;
        kernels::apply_generator(branch, n, gates[g]);
        for (std::size_t rest = g + 1; rest < gates.size(); ++rest) {
            kernels::apply(branch, n, gates[rest], angle_of(gates[rest], theta));
        }
        out.col(*gates[g].parameter_slot) = branch;
    }
    return out;
}

RealVector fidelity_gradient(const CircuitSpec& circuit, const ParamVector& theta,
                             const StateVector& target) {
    check_theta(circuit, theta);
    if (target.n_qubits() != circuit.n_qubits()) throw SizeError("target size mismatch");
    const int n = circuit.n_qubits();
    const auto& gates = circuit.gates();
    ComplexVector psi = prepare(circuit, theta).amplitudes();
    const Complex overlap = psi.dot(target.amplitudes()); // <psi|t>
    ComplexVector bra = target.amplitudes();               // U_{>g}^dagger |t>
    ComplexVector scratch(psi.size());
    RealVector grad = RealVector::Zero(circuit.n_params());
    for (std::size_t g = gates.size(); g-- > 0;) {
        const Gate& gate = gates[g];
        if (gate.parameter_slot) {
            scratch = psi;
            kernels::apply_generator(scratch, n, gate);
            grad[*gate.parameter_slot] = 2.0 * (bra.dot(scratch) * overlap).real();
        }
        const double a = angle_of(gate, theta);
        kernels::apply_inverse(psi, n, gate, a);
        kernels::apply_inverse(bra, n, gate, a);
    }
    return grad;
}

RealVector fidelity_gradient(const StateVector& psi, const ComplexMatrix& tangent_columns,
                             const StateVector& target) {
    if (psi.n_qubits() != target.n_qubits() || tangent_columns.rows() != psi.dimension()) {
        throw SizeError("gradient inputs have mismatched dimensions");
    }
    const Complex overlap = psi.amplitudes().dot(target.amplitudes());
    const ComplexVector projections = tangent_columns.adjoint() * target.amplitudes(); // <d_j psi|t>
    // 2 Re[<t|d_j psi><psi|t>] = 2 Re[conj(<d_j psi|t>) <psi|t>]
    return 2.0 * (projections.conjugate() * overlap).real();
}

RealVector parameter_shift_gradient(const CircuitSpec& circuit, const ParamVector& theta,
                                    const StateVector& target) {
    check_theta(circuit, theta);
    const double shift = std::numbers::pi / 2;
    RealVector grad(circuit.n_params());
    ParamVector shifted = theta;
    for (int j = 0; j < circuit.n_params(); ++j) {
        shifted[j] = theta[j] + shift;
        const double plus = fidelity(prepare(circuit, shifted), target);
        shifted[j] = theta[j] - shift;
        const double minus = fidelity(prepare(circuit, shifted), target);
        shifted[j] = theta[j];
        grad[j] = 0.5 * (plus - minus);
    }
    return grad;
}

ParamVector random_parameters(int n_params, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    ParamVector theta(n_params);
    for (int j = 0; j < n_params; ++j) theta[j] = uniform(rng);
    return theta;
}

} // namespace vqtrain
