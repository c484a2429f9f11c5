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
 * Training loops for fidelity maximization.
 *
 * The adaptive methods (A-G, A-GQNG, A-QNG) take one step per iteration:
 *   G      = (F + eps I)^{-beta} grad K(theta)
 *   alpha1 = 2 sqrt(-log K) / sqrt(G^T F G)
 *   K1     = K(theta + alpha1 G)                       (probe)
 *   alpha  = [4 log(K1 / K) / (alpha1 G^T F G) + alpha1] / 2
 *   theta' = theta + alpha G
 * On a Gaussian fidelity landscape alpha is the exact maximizer of K along G.
 */
#pragma once

#include "vqtrain/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vqtrain {

/// Value, gradient and (optionally) metric of a fidelity objective at one point.
struct Evaluation {
    double fidelity = 0.0;
    RealVector gradient;
    std::optional<Metric> metric;
};

/// A fidelity landscape K(theta) in [0, 1] to be maximized.
class Objective {
public:
    virtual ~Objective() = default;
    virtual int dimension() const = 0;
    virtual double fidelity(const ParamVector& theta) const = 0;
    virtual Evaluation evaluate(const ParamVector& theta, bool with_metric) const = 0;
};

/// K(theta) = |<target|psi(theta)>|^2 for a circuit ansatz.
class CircuitObjective final : public Objective {
public:
    CircuitObjective(CircuitSpec circuit, StateVector target);

    int dimension() const override { return circuit_.n_params(); }
    double fidelity(const ParamVector& theta) const override;
    Evaluation evaluate(const ParamVector& theta, bool with_metric) const override;

    const CircuitSpec& circuit() const noexcept { return circuit_; }
    const StateVector& target() const noexcept { return target_; }

private:
    CircuitSpec circuit_;
    StateVector target_;
};

/// Synthetic landscape K(theta) = K0 exp(-(theta - t)^T F (theta - t) / 4)
/// with a constant metric F.
class GaussianObjective final : public Objective {
public:
    GaussianObjective(RealMatrix metric, ParamVector optimum, double k0 = 1.0);

    int dimension() const override { return static_cast<int>(optimum_.size()); }
    double fidelity(const ParamVector& theta) const override;
    Evaluation evaluate(const ParamVector& theta, bool with_metric) const override;

    const ParamVector& optimum() const noexcept { return optimum_; }
    const RealMatrix& metric() const noexcept { return metric_; }
    double k0() const noexcept { return k0_; }

private:
    RealMatrix metric_;
    ParamVector optimum_;
    double k0_;
};

enum class Method { A_G, A_GQNG, A_QNG, S_QNG, ADAM };

/// CLI spelling: a-g, a-gqng, a-qng, s-qng, adam.
std::string to_string(Method method);
Method parse_method(std::string_view name);

struct AdamMoments {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct OptimizerConfig {
    Method method = Method::A_GQNG;
    double beta = 0.5;
    double epsilon_r = 0.0;
    /// Learning rate of S-QNG and Adam.
    double fixed_alpha = 0.0;
    AdamMoments adam;
    int iterations = 1;
    std::uint64_t seed = 0;

    /// Method defaults: A-G beta 0; A-GQNG beta 1/2; A-QNG beta 1, eps 0.1;
    /// S-QNG alpha 1, eps 0.1; Adam alpha 0.1.
    static OptimizerConfig for_method(Method method, int iterations = 1, std::uint64_t seed = 0);
    bool is_adaptive() const noexcept;
    GradientConfig gradient_config() const noexcept { return {beta, epsilon_r}; }
    void validate() const;
};

/// alpha1 = 2 sqrt(-log K) / sqrt(G^T F G).
/// Gradients with every component below this are treated as stationary.
inline constexpr double kStationaryGradient = 1e-12;

double alpha_initial(const RealVector& direction, const Metric& metric, double k_now);

/// alpha_t = [4 log(K1 / K) / (alpha1 G^T F G) + alpha1] / 2.
double alpha_adaptive(double alpha1, const RealVector& direction, const Metric& metric,
                      double k_theta, double k_theta1);

struct StepRecord {
    double fidelity_before = 0.0;
    double probe_fidelity = 0.0;
    double alpha1 = 0.0;
    double alpha_t = 0.0;
    RealVector gradient;
    RealVector direction; ///< G_beta
    ParamVector theta_next;
};

/// One adaptive iteration from theta, using an evaluation (with metric) at theta.
StepRecord adaptive_step(const Objective& objective, const ParamVector& theta,
                         const Evaluation& at_theta, const GradientConfig& config);
StepRecord adaptive_step(const Objective& objective, const ParamVector& theta,
                         const GradientConfig& config);
StepRecord adaptive_step(const CircuitSpec& circuit, const ParamVector& theta,
                         const StateVector& target, const OptimizerConfig& config);

struct TrainRow {
    int iteration = 0;
    double infidelity = 0.0;
    double alpha1 = 0.0;
    double alpha_t = 0.0;
    double grad_norm = 0.0;
    double step_norm = 0.0; ///< ||G_beta|| (adaptive, S-QNG) or ||Adam update||
    double wall_time = 0.0; ///< seconds since the start of training

    /// Compares everything except wall time.
    bool same_values(const TrainRow& other) const noexcept;
};

struct TrainTrace {
    OptimizerConfig config;
    std::vector<TrainRow> rows; ///< rows[0] is the initial point
    ParamVector final_theta;
};

/// Runs config.iterations parameter updates. Non-improving steps are kept.
TrainTrace train(const Objective& objective, const ParamVector& theta_init,
                 const OptimizerConfig& config);
TrainTrace train(const CircuitSpec& circuit, const ParamVector& theta_init,
                 const StateVector& target, const OptimizerConfig& config);

/// theta = theta_target + s u for a seeded isotropic direction u, with s
/// bisected until |K(theta) - (1 - infidelity)| < tolerance. Up to 10
/// directions are tried before a SearchError.
ParamVector init_at_infidelity(const Objective& objective, const ParamVector& theta_target,
                               double infidelity, std::uint64_t seed, double tolerance = 1e-10);
ParamVector init_at_infidelity(const CircuitSpec& circuit, const ParamVector& theta_target,
                               double infidelity, std::uint64_t seed, double tolerance = 1e-10);

/// sqrt(K0)|psi(theta_t)> + sqrt(1 - K0)|o>, |o> a seeded Haar vector
/// orthogonalized against |psi(theta_t)>.
StateVector make_unreachable_target(const CircuitSpec& circuit, const ParamVector& theta_target,
                                    double k0, std::uint64_t seed);

} // namespace vqtrain
