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
 * Statistical checks of the Gaussian-kernel picture: kernel scans, gradient
 * variance against its closed form, one-step update scans and the analytic
 * product-state model.
 */
#pragma once

#include "vqtrain/geometry.hpp"
#include "vqtrain/optimize.hpp"

#include <cstdint>
#include <vector>

namespace vqtrain {

/// prod_n cos^2(delta_n / 2): fidelity of two product states of RY rotations.
double product_ansatz_fidelity(const RealVector& delta);

/// 2 sqrt(b N ln 2): validity radius of the Gaussian model for F = I / b.
double epsilon_g_bound(double b, int n_qubits);

/// Gradient variance of a random state from a deep circuit, 1 / 2^(2N+1).
double random_state_variance_floor(int n_qubits);

/// (1/M) Tr(F^2)/Tr(F) K^2 log(K0/K).
double predicted_variance(double trace_f, double trace_f2, double k, double k0, int n_params);
double predicted_variance(const Metric& metric, double k, double k0, int n_params);

/// Tr(F)/M^2 K^2 log(K0/K), never above predicted_variance.
double variance_lower_bound(double trace_f, double k, double k0, int n_params);
double variance_lower_bound(const Metric& metric, double k, double k0, int n_params);

/// Inverts predicted_variance for Tr(F^2).
double estimate_trace_f2(double empirical_variance, double k, double k0, int n_params, double trace_f);

struct KernelSample {
    int instance = 0;
    double norm = 0.0; ///< dtheta^T F dtheta with F at the target parameters
    double fidelity = 0.0;
};

struct KernelScanConfig {
    int instances = 10;
    int points = 21;       ///< norms gridded linearly over [0, max_norm]
    double max_norm = 2.0;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Per instance: random target parameters, then one fresh random direction
/// per grid norm, scaled so the metric norm hits the grid value exactly.
std::vector<KernelSample> kernel_scan(const CircuitSpec& circuit, const KernelScanConfig& config);

struct KernelBin {
    double norm = 0.0;
    double mean_fidelity = 0.0;
    double mean_neg_log_fidelity = 0.0;
    int count = 0;
};

/// Groups samples by exact norm value.
std::vector<KernelBin> bin_kernel_samples(const std::vector<KernelSample>& samples);

/// Least-squares slope through the origin of <-log K> against norm/4 over
/// bins with norm <= max_norm.
double kernel_slope(const std::vector<KernelBin>& bins, double max_norm);

struct VarianceSample {
    int n_qubits = 0;
    int m_params = 0;
    double infidelity = 0.0;
    double var_empirical = 0.0;
    double var_eq8 = 0.0; ///< closed form, averaged over instance metrics
    double var_eq9 = 0.0; ///< lower bound, averaged over instance metrics
    double floor_random = 0.0;
};

struct VarianceInstance {
    int instance = 0;
    double infidelity = 0.0;
    double var_eq8 = 0.0;
    double var_eq9 = 0.0;
    double trace_f = 0.0;
    double trace_f2 = 0.0;
};

struct VarianceScan {
    std::vector<VarianceSample> buckets;
    std::vector<VarianceInstance> instances;
};

/// Gradient components pooled over instances per infidelity bucket: the
/// variance over instances is taken per component, then averaged over
/// components. The metric of each instance is taken at its target.
VarianceScan variance_scan(const CircuitSpec& circuit, const std::vector<double>& infidelities,
                           int n_instances, std::uint64_t seed, int threads = 1);

struct OneStepConfig {
    std::vector<double> infidelities;
    std::vector<GradientConfig> gradients;
    /// Multipliers of the adaptive rate; 1 is the adaptive step itself.
    std::vector<double> lambdas{1.0};
    int instances = 10;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct OneStepSample {
    int instance = 0;
    double initial_infidelity = 0.0;
    double beta = 0.0;
    double epsilon_r = 0.0;
    double lambda = 1.0;
    double alpha_t = 0.0;
    double infidelity_after = 0.0;
};

/// One adaptive update from a start point at each requested infidelity, with
/// theta' = theta + lambda alpha_t G for every listed lambda. The metric and
/// gradient at each start point are shared by all gradient configurations.
std::vector<OneStepSample> one_step_scan(const CircuitSpec& circuit, const OneStepConfig& config);

struct PowerLawFit {
    double c = 0.0;
    double nu = 0.0;
};

/// Least squares of log y = log c + nu log x.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

} // namespace vqtrain
