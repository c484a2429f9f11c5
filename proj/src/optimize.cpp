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
#include "vqtrain/optimize.hpp"

#include "vqtrain/errors.hpp"
#include "vqtrain/rng.hpp"

#include <chrono>
#include <cmath>

namespace vqtrain {

CircuitObjective::CircuitObjective(CircuitSpec circuit, StateVector target)
    : circuit_(std::move(circuit)), target_(std::move(target)) {
    if (target_.n_qubits() != circuit_.n_qubits()) throw SizeError("target size mismatch");
}

double CircuitObjective::fidelity(const ParamVector& theta) const {
    return vqtrain::fidelity(prepare(circuit_, theta), target_);
}

Evaluation CircuitObjective::evaluate(const ParamVector& theta, bool with_metric) const {
    Evaluation out;
    const StateVector psi = prepare(circuit_, theta);
    out.fidelity = vqtrain::fidelity(psi, target_);
    if (with_metric) {
        const ComplexMatrix t = tangents(circuit_, theta);
        out.gradient = fidelity_gradient(psi, t, target_);
        out.metric = qfim_from_tangents(psi.amplitudes(), t);
    } else {
        out.gradient = fidelity_gradient(circuit_, theta, target_);
    }
    return out;
}

GaussianObjective::GaussianObjective(RealMatrix metric, ParamVector optimum, double k0)
    : metric_(std::move(metric)), optimum_(std::move(optimum)), k0_(k0) {
    if (metric_.rows() != optimum_.size() || metric_.cols() != optimum_.size()) {
        throw SizeError("Gaussian objective metric/optimum size mismatch");
    }
    if (!(k0_ > 0.0 && k0_ <= 1.0)) throw DomainError("K0 must lie in (0, 1]");
}

double GaussianObjective::fidelity(const ParamVector& theta) const {
    const RealVector d = theta - optimum_;
    return k0_ * std::exp(-0.25 * d.dot(metric_ * d));
}

Evaluation GaussianObjective::evaluate(const ParamVector& theta, bool with_metric) const {
    Evaluation out;
    const RealVector d = theta - optimum_;
    out.fidelity = k0_ * std::exp(-0.25 * d.dot(metric_ * d));
    out.gradient = -0.5 * out.fidelity * (metric_ * d);
    if (with_metric) out.metric = Metric(metric_);
    return out;
}

std::string to_string(Method method) {
    switch (method) {
    case Method::A_G: return "a-g";
    case Method::A_GQNG: return "a-gqng";
    case Method::A_QNG: return "a-qng";
    case Method::S_QNG: return "s-qng";
    case Method::ADAM: return "adam";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "a-g") return Method::A_G;
    if (name == "a-gqng") return Method::A_GQNG;
    if (name == "a-qng") return Method::A_QNG;
    if (name == "s-qng") return Method::S_QNG;
    if (name == "adam") return Method::ADAM;
    throw ContractError("unknown optimizer '" + std::string(name) +
                        "' (valid: a-g, a-gqng, a-qng, s-qng, adam)");
}

OptimizerConfig OptimizerConfig::for_method(Method method, int iterations, std::uint64_t seed) {
    OptimizerConfig c;
    c.method = method;
    c.iterations = iterations;
    c.seed = seed;
    switch (method) {
    case Method::A_G:
        c.beta = 0.0;
        break;
    case Method::A_GQNG:
        c.beta = 0.5;
        break;
    case Method::A_QNG:
        c.beta = 1.0;
        c.epsilon_r = 0.1;
        break;
    case Method::S_QNG:
        c.beta = 1.0;
        c.epsilon_r = 0.1;
        c.fixed_alpha = 1.0;
        break;
    case Method::ADAM:
        c.beta = 0.0;
        c.fixed_alpha = 0.1;
        break;
    }
    return c;
}

bool OptimizerConfig::is_adaptive() const noexcept {
    return method == Method::A_G || method == Method::A_GQNG || method == Method::A_QNG;
}

void OptimizerConfig::validate() const {
    if (iterations < 0) throw ContractError("iterations must be non-negative");
    if (beta < 0.0 || beta > 1.0) throw ContractError("beta must lie in [0, 1]");
    if (epsilon_r < 0.0) throw ContractError("regularization must be non-negative");
    if ((method == Method::S_QNG || method == Method::ADAM) && !(fixed_alpha > 0.0)) {
        throw ContractError("fixed learning rate must be positive");
    }
}

double alpha_initial(const RealVector& direction, const Metric& metric, double k_now) {
    if (direction.size() != metric.size()) throw SizeError("direction/metric size mismatch");
    if (!(k_now > 0.0)) throw DomainError("alpha1 undefined at zero fidelity (log divergence)");
    if (k_now > 1.0 + 1e-12) throw DomainError("fidelity above one");
    const double gfg = direction.dot(metric.matrix() * direction);
    if (!(gfg > 0.0)) throw DegenerateError("direction has zero metric norm (G^T F G <= 0)");
    if (k_now >= 1.0) return 0.0;
    return 2.0 * std::sqrt(-std::log(k_now)) / std::sqrt(gfg);
}

double alpha_adaptive(double alpha1, const RealVector& direction, const Metric& metric,
                      double k_theta, double k_theta1) {
    if (direction.size() != metric.size()) throw SizeError("direction/metric size mismatch");
    if (!(k_theta > 0.0) || !(k_theta1 > 0.0)) throw DomainError("fidelities must be positive");
    const double gfg = direction.dot(metric.matrix() * direction);
    if (alpha1 == 0.0 || !(gfg > 0.0)) {
        throw DegenerateError("adaptive rate needs alpha1 != 0 and G^T F G > 0");
    }
    return 0.5 * (4.0 / (alpha1 * gfg) * std::log(k_theta1 / k_theta) + alpha1);
}

StepRecord adaptive_step(const Objective& objective, const ParamVector& theta,
                         const Evaluation& at_theta, const GradientConfig& config) {
    if (!at_theta.metric) throw ContractError("adaptive step needs the metric at theta");
    const Metric& metric = *at_theta.metric;
    StepRecord step;
    step.fidelity_before = at_theta.fidelity;
    step.gradient = at_theta.gradient;
    if (!(at_theta.fidelity > 0.0)) {
        throw DomainError("adaptive step from zero fidelity; re-seed the start point");
    }
    step.direction = gqng(metric, at_theta.gradient, config);
    step.theta_next = theta;
    step.probe_fidelity = at_theta.fidelity;
    const double gfg = step.direction.dot(metric.matrix() * step.direction);
    // Stationary point (optimum or zero direction): nothing to do. A
    // round-off gradient would otherwise be rescaled by alpha1 into a jump.
    const bool stationary = at_theta.gradient.cwiseAbs().maxCoeff() < kStationaryGradient;
    if (at_theta.fidelity >= 1.0 || stationary || !(gfg > 0.0)) return step;
    step.alpha1 = alpha_initial(step.direction, metric, at_theta.fidelity);
    step.probe_fidelity = objective.fidelity(theta + step.alpha1 * step.direction);
    step.alpha_t = alpha_adaptive(step.alpha1, step.direction, metric, at_theta.fidelity,
                                  step.probe_fidelity);
    step.theta_next = theta + step.alpha_t * step.direction;
    return step;
}

StepRecord adaptive_step(const Objective& objective, const ParamVector& theta,
                         const GradientConfig& config) {
    return adaptive_step(objective, theta, objective.evaluate(theta, true), config);
}

StepRecord adaptive_step(const CircuitSpec& circuit, const ParamVector& theta,
                         const StateVector& target, const OptimizerConfig& config) {
    const CircuitObjective objective(circuit, target);
    return adaptive_step(objective, theta, config.gradient_config());
}

bool TrainRow::same_values(const TrainRow& o) const noexcept {
    return iteration == o.iteration && infidelity == o.infidelity && alpha1 == o.alpha1 &&
           alpha_t == o.alpha_t && grad_norm == o.grad_norm && step_norm == o.step_norm;
}

TrainTrace train(const Objective& objective, const ParamVector& theta_init,
                 const OptimizerConfig& config) {
    config.validate();
    if (theta_init.size() != objective.dimension()) throw SizeError("initial parameters size mismatch");
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    TrainTrace trace;
    trace.config = config;
    ParamVector theta = theta_init;
    TrainRow first;
    first.infidelity = 1.0 - objective.fidelity(theta);
    first.wall_time = elapsed();
    trace.rows.push_back(first);

    RealVector adam_m = RealVector::Zero(theta.size());
    RealVector adam_v = RealVector::Zero(theta.size());
    const bool needs_metric = config.method != Method::ADAM;

    for (int it = 1; it <= config.iterations; ++it) {
        const Evaluation eval = objective.evaluate(theta, needs_metric);
        TrainRow row;
        row.iteration = it;
        row.grad_norm = eval.gradient.norm();
        if (config.is_adaptive()) {
            const StepRecord step = adaptive_step(objective, theta, eval, config.gradient_config());
            row.alpha1 = step.alpha1;
            row.alpha_t = step.alpha_t;
            row.step_norm = step.direction.norm();
            theta = step.theta_next;
        } else if (config.method == Method::S_QNG) {
            const RealVector direction = gqng(*eval.metric, eval.gradient, config.gradient_config());
            row.alpha1 = row.alpha_t = config.fixed_alpha;
            row.step_norm = direction.norm();
            theta += config.fixed_alpha * direction;
        } else {
            // Adam on the loss -K.
            const AdamMoments& a = config.adam;
            const RealVector g = -eval.gradient;
            adam_m = a.beta1 * adam_m + (1.0 - a.beta1) * g;
            adam_v = a.beta2 * adam_v + (1.0 - a.beta2) * g.cwiseAbs2();
            const RealVector m_hat = adam_m / (1.0 - std::pow(a.beta1, it));
            const RealVector v_hat = adam_v / (1.0 - std::pow(a.beta2, it));
            const RealVector update =
                config.fixed_alpha * m_hat.array() / (v_hat.array().sqrt() + a.epsilon);
            row.alpha1 = row.alpha_t = config.fixed_alpha;
            row.step_norm = update.norm();
            theta -= update;
        }
        row.infidelity = 1.0 - objective.fidelity(theta);
        row.wall_time = elapsed();
        trace.rows.push_back(row);
    }
    trace.final_theta = theta;
    return trace;
}

TrainTrace train(const CircuitSpec& circuit, const ParamVector& theta_init,
                 const StateVector& target, const OptimizerConfig& config) {
    return train(CircuitObjective(circuit, target), theta_init, config);
}

ParamVector init_at_infidelity(const Objective& objective, const ParamVector& theta_target,
                               double infidelity, std::uint64_t seed, double tolerance) {
    if (!(infidelity > 0.0 && infidelity < 1.0)) throw DomainError("initial infidelity must lie in (0, 1)");
    if (theta_target.size() != objective.dimension()) throw SizeError("target parameters size mismatch");
    const double goal = 1.0 - infidelity;
    const double at_origin = objective.fidelity(theta_target);
    if (at_origin < goal) {
        throw SearchError("fidelity at the target parameters is already below the requested value");
    }
    constexpr int kDirections = 10;
    constexpr int kBisections = 200;
    constexpr double kMaxScale = 1e4;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kDirections; ++attempt) {
        const RealVector u = random_unit_vector(theta_target.size(), rng);
        const auto k_at = [&](double s) { return objective.fidelity(theta_target + s * u); };
        // March outward geometrically to bracket the first crossing of the goal.
        double lo = 0.0;
        double hi = 1e-3;
        double k_hi = k_at(hi);
        while (k_hi > goal && hi < kMaxScale) {
            lo = hi;
            hi *= 1.25;
            k_hi = k_at(hi);
        }
        if (k_hi > goal) continue;
        if (std::abs(k_hi - goal) < tolerance) return theta_target + hi * u;
        for (int b = 0; b < kBisections; ++b) {
            const double mid = 0.5 * (lo + hi);
            const double k_mid = k_at(mid);
            if (std::abs(k_mid - goal) < tolerance) return theta_target + mid * u;
            (k_mid > goal ? lo : hi) = mid;
            if (hi - lo <= 1e-15 * hi) break;
        }
        const double s = 0.5 * (lo + hi);
        if (std::abs(k_at(s) - goal) < std::max(tolerance, 1e-4)) return theta_target + s * u;
    }
    throw SearchError("could not reach the requested infidelity along 10 random directions");
}

ParamVector init_at_infidelity(const CircuitSpec& circuit, const ParamVector& theta_target,
                               double infidelity, std::uint64_t seed, double tolerance) {
    const CircuitObjective objective(circuit, prepare(circuit, theta_target));
    return init_at_infidelity(objective, theta_target, infidelity, seed, tolerance);
}

StateVector make_unreachable_target(const CircuitSpec& circuit, const ParamVector& theta_target,
                                    double k0, std::uint64_t seed) {
    if (!(k0 > 0.0 && k0 <= 1.0)) throw DomainError("K0 must lie in (0, 1]");
    const StateVector reachable = prepare(circuit, theta_target);
    if (k0 == 1.0) return reachable;
    std::mt19937_64 rng(seed);
    const ComplexVector& psi = reachable.amplitudes();
    ComplexVector other = haar_random_vector(psi.size(), rng);
    other -= psi * psi.dot(other);
    other -= psi * psi.dot(other); // second pass for round-off
    other.normalize();
    return StateVector::normalized(circuit.n_qubits(), std::sqrt(k0) * psi + std::sqrt(1.0 - k0) * other);
}

} // namespace vqtrain
