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
 * Parameterized circuits: YZ-CNOT, YZ-sqrt(iSWAP), R-CPHASE and the product
 * RY ansatz, plus state preparation and exact derivatives.
 */
#pragma once

#include "vqtrain/statevec.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace vqtrain {

enum class AnsatzKind { YZ_CNOT, YZ_SQRT_ISWAP, R_CPHASE, PRODUCT_RY };

/// CLI spelling: yz-cnot, yz-sqiswap, r-cphase (product ansatz: product-ry).
std::string to_string(AnsatzKind kind);
/// Parses the CLI spelling of the three circuit ansaetze. Throws ContractError
/// naming the valid choices.
AnsatzKind parse_ansatz_kind(std::string_view name);

/// Immutable gate list with parameter-slot bookkeeping.
class CircuitSpec {
public:
    CircuitSpec(AnsatzKind kind, int n_qubits, int layers, std::vector<Gate> gates,
                std::optional<std::uint64_t> axis_seed = std::nullopt);

    AnsatzKind kind() const noexcept { return kind_; }
    int n_qubits() const noexcept { return n_qubits_; }
    int layers() const noexcept { return layers_; }
    int n_params() const noexcept { return n_params_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    std::optional<std::uint64_t> axis_seed() const noexcept { return axis_seed_; }

    /// One line per gate, e.g. "RY q3 p7" or "CNOT q0 q1".
    std::string serialize() const;

    bool operator==(const CircuitSpec&) const = default;

private:
    AnsatzKind kind_;
    int n_qubits_;
    int layers_;
    int n_params_;
    std::vector<Gate> gates_;
    std::optional<std::uint64_t> axis_seed_;
};

/// Builds one of the layered ansaetze. axis_seed only affects R_CPHASE
/// (defaults to 0 there).
CircuitSpec build_ansatz(AnsatzKind kind, int n_qubits, int layers,
                         std::optional<std::uint64_t> axis_seed = std::nullopt);

/// prod_n RY(theta_n)|0>: M = N and QFIM = identity.
CircuitSpec build_product_ansatz(int n_qubits);

/// U(theta)|0...0>.
StateVector prepare(const CircuitSpec& circuit, const ParamVector& theta);

/// Column j holds d|psi(theta)>/d theta_j, obtained by inserting the rotation
/// generator at the gate that owns slot j.
ComplexMatrix tangents(const CircuitSpec& circuit, const ParamVector& theta);

/// dK/dtheta_j = 2 Re[<t|d_j psi><psi|t>] with K = |<t|psi(theta)>|^2.
/// Computed with a single reverse sweep over the circuit.
RealVector fidelity_gradient(const CircuitSpec& circuit, const ParamVector& theta,
                             const StateVector& target);

/// Same gradient from precomputed tangents.
RealVector fidelity_gradient(const StateVector& psi, const ComplexMatrix& tangent_columns,
                             const StateVector& target);

/// dK/dtheta_j = [K(theta + pi/2 e_j) - K(theta - pi/2 e_j)] / 2.
RealVector parameter_shift_gradient(const CircuitSpec& circuit, const ParamVector& theta,
                                    const StateVector& target);

/// Uniform draw from [0, 2 pi) per slot.
ParamVector random_parameters(int n_params, std::mt19937_64& rng);

} // namespace vqtrain
