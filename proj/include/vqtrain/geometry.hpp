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
 * Quantum Fisher information metric, regularized fractional matrix powers
 * and the generalized quantum natural gradient F^{-beta} grad K.
 */
#pragma once

#include "vqtrain/ansatz.hpp"

namespace vqtrain {

/// Real symmetric PSD metric on parameter space.
class Metric {
public:
    /// Checks symmetry (1e-10, scaled by the largest entry) and the
    /// eigenvalue floor -1e-9, then symmetrizes.
    explicit Metric(RealMatrix matrix);

    const RealMatrix& matrix() const noexcept { return matrix_; }
    Eigen::Index size() const noexcept { return matrix_.rows(); }
    double trace() const { return matrix_.trace(); }
    /// Tr(F^2).
    double trace_squared() const { return matrix_.squaredNorm(); }

private:
    RealMatrix matrix_;
};

struct GradientConfig {
    double beta = 0.0;
    double epsilon_r = 0.0;
    /// Clamp sub-floor eigenvalues even for beta > 1/2 without
    /// regularization instead of raising. Exposes the unregularized
    /// instability in stability studies.
    bool clamp_ill_conditioned = false;

    /// 0.1 for beta > 1/2, 0 otherwise.
    static double default_regularization(double beta) { return beta > 0.5 ? 0.1 : 0.0; }
};

/// Relative eigenvalue floor: eigenvalues below kEigenFloor * max(eig) are
/// clamped (beta <= 1/2) or rejected (beta > 1/2 with no regularization).
inline constexpr double kEigenFloor = 1e-10;

/// F_ij = 4 Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>].
Metric qfim(const CircuitSpec& circuit, const ParamVector& theta);

/// Same metric from a state and its tangent columns.
Metric qfim_from_tangents(const ComplexVector& psi, const ComplexMatrix& tangent_columns);

/// (F + epsilon_r I)^{-beta}. beta = 0 returns the identity exactly.
RealMatrix fractional_inverse(const Metric& metric, double beta, double epsilon_r,
                              bool clamp_ill_conditioned = false);

enum class FloorPolicy {
    Clamp,  ///< raise sub-floor eigenvalues to the floor
    Reject, ///< throw ConditioningError on any sub-floor eigenvalue
};

/// (F + epsilon_r I)^{power} for any real power. Eigenvalues below the floor
/// are handled per policy when the power is negative and clamped otherwise.
RealMatrix spectral_power(const RealMatrix& matrix, double power, double epsilon_r,
                          FloorPolicy policy = FloorPolicy::Clamp);

/// G_beta = (F + epsilon_r I)^{-beta} grad. beta = 0 returns grad unchanged.
RealVector gqng(const Metric& metric, const RealVector& grad, const GradientConfig& config);

/// Fidelity after theta' = theta + alpha G_beta on the Gaussian kernel model,
/// where displacement = theta - theta_target:
///   K' = K exp[-(alpha^2 g^T F^{1-2 beta} g + 2 alpha d^T F^{1-beta} g) / 4].
double predicted_update_fidelity(double k_now, const Metric& metric, const RealVector& grad,
                                 double beta, double alpha, const RealVector& displacement);

} // namespace vqtrain
