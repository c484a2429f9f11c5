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
#include "vqtrain/geometry.hpp"

#include "vqtrain/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace vqtrain {

Metric::Metric(RealMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw SizeError("metric must be square");
    if (matrix_.size() == 0) return;
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    const double asym = (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        throw ContractError("metric is not symmetric (max asymmetry " + std::to_string(asym) + ")");
    }
    matrix_ = 0.5 * (matrix_ + matrix_.transpose()).eval();
    const double lowest = Eigen::SelfAdjointEigenSolver<RealMatrix>(matrix_, Eigen::EigenvaluesOnly)
                              .eigenvalues()
                              .minCoeff();
    if (lowest < -1e-9 * scale) {
        throw ContractError("metric is not positive semidefinite (eigenvalue " +
                            std::to_string(lowest) + ")");
    }
}

Metric qfim_from_tangents(const ComplexVector& psi, const ComplexMatrix& tangent_columns) {
    if (tangent_columns.rows() != psi.size()) throw SizeError("tangent/state dimension mismatch");
    const ComplexMatrix gram = tangent_columns.adjoint() * tangent_columns; // <d_i|d_j>
    const ComplexVector berry = tangent_columns.adjoint() * psi;            // <d_i|psi>
    // The imaginary (Berry curvature) part is antisymmetric and drops out of
    // every quadratic form d^T F d, so only the real part is kept.
    const ComplexMatrix geometric = gram - berry * berry.adjoint();
    return Metric(4.0 * geometric.real());
}

Metric qfim(const CircuitSpec& circuit, const ParamVector& theta) {
    return qfim_from_tangents(prepare(circuit, theta).amplitudes(), tangents(circuit, theta));
}

RealMatrix spectral_power(const RealMatrix& matrix, double power, double epsilon_r,
                          FloorPolicy policy) {
    if (epsilon_r < 0.0) throw ContractError("regularization must be non-negative");
    const Eigen::Index m = matrix.rows();
    if (power == 0.0) return RealMatrix::Identity(m, m);
    RealMatrix shifted = matrix;
    shifted.diagonal().array() += epsilon_r;
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(shifted);
    RealVector lambda = solver.eigenvalues();
    const double top = lambda.maxCoeff();
    if (power < 0.0 && !(top > 0.0)) {
        throw ConditioningError("cannot take a negative power of a zero metric", top);
    }
    const double floor = kEigenFloor * top;
    for (Eigen::Index k = 0; k < m; ++k) {
        if (lambda[k] >= floor) continue;
        if (power < 0.0 && policy == FloorPolicy::Reject) {
            std::ostringstream msg;
            msg << "metric power " << power << " is ill-conditioned: eigenvalue " << lambda[k]
                << " below floor " << floor << " (add regularization)";
            throw ConditioningError(msg.str(), lambda[k]);
        }
        lambda[k] = floor;
    }
    const RealVector powered = lambda.array().pow(power);
    return solver.eigenvectors() * powered.asDiagonal() * solver.eigenvectors().transpose();
}

RealMatrix fractional_inverse(const Metric& metric, double beta, double epsilon_r,
                              bool clamp_ill_conditioned) {
    if (beta < 0.0 || beta > 1.0) throw ContractError("beta must lie in [0, 1]");
    const bool strict = beta > 0.5 && epsilon_r == 0.0 && !clamp_ill_conditioned;
    return spectral_power(metric.matrix(), -beta, epsilon_r,
                          strict ? FloorPolicy::Reject : FloorPolicy::Clamp);
}

RealVector gqng(const Metric& metric, const RealVector& grad, const GradientConfig& config) {
    if (grad.size() != metric.size()) throw SizeError("gradient/metric size mismatch");
    if (config.beta == 0.0) {
        if (config.epsilon_r < 0.0) throw ContractError("regularization must be non-negative");
        return grad;
    }
    return fractional_inverse(metric, config.beta, config.epsilon_r, config.clamp_ill_conditioned) * grad;
}

double predicted_update_fidelity(double k_now, const Metric& metric, const RealVector& grad,
                                 double beta, double alpha, const RealVector& displacement) {
    if (grad.size() != metric.size() || displacement.size() != metric.size()) {
        throw SizeError("predicted_update_fidelity size mismatch");
    }
    if (alpha == 0.0) return k_now;
    const RealMatrix& f = metric.matrix();
    const double quadratic = grad.dot(spectral_power(f, 1.0 - 2.0 * beta, 0.0, FloorPolicy::Reject) * grad);
    const double cross = displacement.dot(spectral_power(f, 1.0 - beta, 0.0) * grad);
    return k_now * std::exp(-0.25 * (alpha * alpha * quadratic + 2.0 * alpha * cross));
}

} // namespace vqtrain
