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

#include "vqtrain/analysis.hpp"

#include "vqtrain/errors.hpp"
#include "vqtrain/parallel.hpp"
#include "vqtrain/rng.hpp"

#include <cmath>
#include <map>

namespace vqtrain {
namespace {

void check_fidelities(double k, double k0) {
    if (!(k0 > 0.0 && k0 <= 1.0)) throw DomainError("K0 must lie in (0, 1]");
    if (!(k > 0.0)) throw DomainError("fidelity must be positive");
    if (k > k0) throw DomainError("fidelity exceeds the maximal fidelity K0");
}

ParamVector target_parameters(const CircuitSpec& circuit, std::uint64_t instance_seed_value) {
    std::mt19937_64 rng(stream_seed(instance_seed_value, 0));
    return random_parameters(circuit.n_params(), rng);
}

} // namespace

double product_ansatz_fidelity(const RealVector& delta) {
    double k = 1.0;
    for (Eigen::Index n = 0; n < delta.size(); ++n) {
        const double c = std::cos(0.5 * delta[n]);
        k *= c * c;
    }
    return k;
}

double epsilon_g_bound(double b, int n_qubits) {
    if (!(b > 0.0)) throw DomainError("metric scale b must be positive");
    if (n_qubits < 1) throw SizeError("qubit count must be positive");
    return 2.0 * std::sqrt(b * n_qubits * std::log(2.0));
}

double random_state_variance_floor(int n_qubits) { return std::ldexp(1.0, -(2 * n_qubits + 1)); }

double predicted_variance(double trace_f, double trace_f2, double k, double k0, int n_params) {
    check_fidelities(k, k0);
    if (n_params <= 0) throw ContractError("parameter count must be positive");
    if (!(trace_f > 0.0)) throw DegenerateError("metric trace must be positive");
    return trace_f2 / (n_params * trace_f) * k * k * std::log(k0 / k);
}

double predicted_variance(const Metric& metric, double k, double k0, int n_params) {
    return predicted_variance(metric.trace(), metric.trace_squared(), k, k0, n_params);
}

double variance_lower_bound(double trace_f, double k, double k0, int n_params) {
    check_fidelities(k, k0);
    if (n_params <= 0) throw ContractError("parameter count must be positive");
    const double m = n_params;
    return trace_f / (m * m) * k * k * std::log(k0 / k);
}

double variance_lower_bound(const Metric& metric, double k, double k0, int n_params) {
    return variance_lower_bound(metric.trace(), k, k0, n_params);
}

double estimate_trace_f2(double empirical_variance, double k, double k0, int n_params, double trace_f) {
    check_fidelities(k, k0);
    if (!(empirical_variance > 0.0)) throw DomainError("empirical variance must be positive");
    const double log_ratio = std::log(k0 / k);
    if (!(log_ratio > 0.0)) throw DomainError("estimator undefined at K = K0");
    return empirical_variance * n_params * trace_f / (k * k * log_ratio);
}

std::vector<KernelSample> kernel_scan(const CircuitSpec& circuit, const KernelScanConfig& config) {
    if (config.instances < 1 || config.points < 2) throw ContractError("kernel scan needs instances >= 1 and points >= 2");
    if (!(config.max_norm > 0.0)) throw ContractError("maximal norm must be positive");
    const auto per_instance = static_cast<std::size_t>(config.points);
    std::vector<KernelSample> out(static_cast<std::size_t>(config.instances) * per_instance);
    parallel_for(static_cast<std::size_t>(config.instances), config.threads, [&](std::size_t i) {
        const std::uint64_t s = instance_seed(config.seed, i);
        const ParamVector theta_t = target_parameters(circuit, s);
        const StateVector psi_t = prepare(circuit, theta_t);
        const Metric f = qfim(circuit, theta_t);
        std::mt19937_64 rng(stream_seed(s, 1));
        for (std::size_t j = 0; j < per_instance; ++j) {
            const double x = config.max_norm * static_cast<double>(j) / static_cast<double>(per_instance - 1);
            RealVector u = random_unit_vector(theta_t.size(), rng);
            double ufu = u.dot(f.matrix() * u);
            // A direction with vanishing metric norm cannot reach the grid value.
            while (!(ufu > 1e-12)) {
                u = random_unit_vector(theta_t.size(), rng);
                ufu = u.dot(f.matrix() * u);
            }
            const ParamVector theta = theta_t + std::sqrt(x / ufu) * u;
            out[i * per_instance + j] = {static_cast<int>(i), x, fidelity(prepare(circuit, theta), psi_t)};
        }
    });
    return out;
}

std::vector<KernelBin> bin_kernel_samples(const std::vector<KernelSample>& samples) {
    std::map<double, KernelBin> bins;
    for (const KernelSample& s : samples) {
        KernelBin& b = bins[s.norm];
        b.norm = s.norm;
        b.mean_fidelity += s.fidelity;
        b.mean_neg_log_fidelity += -std::log(std::max(s.fidelity, 1e-300));
        ++b.count;
    }
    std::vector<KernelBin> out;
    for (auto& [norm, b] : bins) {
        b.mean_fidelity /= b.count;
        b.mean_neg_log_fidelity /= b.count;
        out.push_back(b);
    }
    return out;
}

double kernel_slope(const std::vector<KernelBin>& bins, double max_norm) {
    double sxy = 0.0;
    double sxx = 0.0;
    for (const KernelBin& b : bins) {
        if (b.norm > max_norm) continue;
        const double x = 0.25 * b.norm;
        sxy += x * b.mean_neg_log_fidelity;
        sxx += x * x;
    }
    if (!(sxx > 0.0)) throw DegenerateError("no nonzero norms below the fit limit");
    return sxy / sxx;
}

VarianceScan variance_scan(const CircuitSpec& circuit, const std::vector<double>& infidelities,
                           int n_instances, std::uint64_t seed, int threads) {
    if (n_instances < 2) throw ContractError("variance scan needs at least two instances");
    for (double d : infidelities) {
        if (!(d > 0.0 && d < 1.0)) throw DomainError("infidelities must lie in (0, 1)");
    }
    const std::size_t nb = infidelities.size();
    const auto ni = static_cast<std::size_t>(n_instances);
    const int m = circuit.n_params();
    // grads[b * ni + i] is the gradient of instance i in bucket b.
    std::vector<RealVector> grads(nb * ni);
    std::vector<VarianceInstance> inst(nb * ni);
    parallel_for(ni, threads, [&](std::size_t i) {
        const std::uint64_t s = instance_seed(seed, i);
        const ParamVector theta_t = target_parameters(circuit, s);
        const StateVector target = prepare(circuit, theta_t);
        const Metric f = qfim(circuit, theta_t);
        for (std::size_t b = 0; b < nb; ++b) {
            const ParamVector theta = init_at_infidelity(circuit, theta_t, infidelities[b], stream_seed(s, 1 + b));
            grads[b * ni + i] = fidelity_gradient(circuit, theta, target);
            const double k = 1.0 - infidelities[b];
            inst[b * ni + i] = {static_cast<int>(i), infidelities[b], predicted_variance(f, k, 1.0, m),
                                variance_lower_bound(f, k, 1.0, m), f.trace(), f.trace_squared()};
        }
    });
    VarianceScan out;
    out.instances = inst;
    for (std::size_t b = 0; b < nb; ++b) {
        RealVector mean = RealVector::Zero(m);
        RealVector second = RealVector::Zero(m);
        VarianceSample row;
        row.n_qubits = circuit.n_qubits();
        row.m_params = m;
        row.infidelity = infidelities[b];
        for (std::size_t i = 0; i < ni; ++i) {
            const RealVector& g = grads[b * ni + i];
            mean += g;
            second += g.cwiseAbs2();
            row.var_eq8 += inst[b * ni + i].var_eq8;
            row.var_eq9 += inst[b * ni + i].var_eq9;
        }
        const double n = static_cast<double>(ni);
        mean /= n;
        // Unbiased per-component variance, then the mean over components.
        const RealVector var = (second - n * mean.cwiseAbs2()) / (n - 1.0);
        row.var_empirical = var.mean();
        row.var_eq8 /= n;
        row.var_eq9 /= n;
        row.floor_random = random_state_variance_floor(circuit.n_qubits());
        out.buckets.push_back(row);
    }
    return out;
}

std::vector<OneStepSample> one_step_scan(const CircuitSpec& circuit, const OneStepConfig& config) {
    if (config.instances < 1) throw ContractError("one-step scan needs at least one instance");
    const std::size_t nd = config.infidelities.size();
    const std::size_t ng = config.gradients.size();
    const std::size_t nl = config.lambdas.size();
    const std::size_t per_instance = nd * ng * nl;
    std::vector<OneStepSample> out(static_cast<std::size_t>(config.instances) * per_instance);
    parallel_for(static_cast<std::size_t>(config.instances), config.threads, [&](std::size_t i) {
        const std::uint64_t s = instance_seed(config.seed, i);
        const ParamVector theta_t = target_parameters(circuit, s);
        const CircuitObjective objective(circuit, prepare(circuit, theta_t));
        std::size_t slot = i * per_instance;
        for (std::size_t d = 0; d < nd; ++d) {
            const ParamVector theta =
                init_at_infidelity(objective, theta_t, config.infidelities[d], stream_seed(s, 1 + d));
            const Evaluation eval = objective.evaluate(theta, true);
            for (const GradientConfig& gc : config.gradients) {
                const StepRecord step = adaptive_step(objective, theta, eval, gc);
                for (double lambda : config.lambdas) {
                    const ParamVector next = theta + lambda * step.alpha_t * step.direction;
                    out[slot++] = {static_cast<int>(i), config.infidelities[d], gc.beta, gc.epsilon_r, lambda,
                                   step.alpha_t, 1.0 - objective.fidelity(next)};
                }
            }
        }
    });
    return out;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ContractError("power-law fit needs two or more points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("power-law fit needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) throw DegenerateError("power-law fit needs distinct x values");
    PowerLawFit fit;
    fit.nu = (n * sxy - sx * sy) / denom;
    fit.c = std::exp((sy - fit.nu * sx) / n);
    return fit;
}

} // namespace vqtrain
