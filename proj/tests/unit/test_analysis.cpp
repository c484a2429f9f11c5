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

#include "helpers.hpp"

#include "vqtrain/analysis.hpp"
#include "vqtrain/errors.hpp"

#include <doctest.h>

using namespace vqtrain;
using namespace vqtrain::testing;

TEST_CASE("product-state kernel") {
    CHECK(product_ansatz_fidelity(RealVector::Zero(4)) == 1.0);
    CHECK(product_ansatz_fidelity(RealVector::Constant(1, kPi)) == doctest::Approx(0.0));
    // Oracle: simulate the product circuit directly.
    std::mt19937_64 rng(6);
    const CircuitSpec c = build_product_ansatz(5);
    for (int trial = 0; trial < 10; ++trial) {
        const ParamVector a = random_parameters(5, rng);
        const ParamVector b = random_parameters(5, rng);
        CHECK(product_ansatz_fidelity(a - b) == doctest::Approx(fidelity(prepare(c, a), prepare(c, b))).epsilon(1e-12));
    }
}

TEST_CASE("product-state kernel approaches the Gaussian with N") {
    // Fixed Euclidean distance spread over more qubits; the largest radius
    // keeps every component within 0.3 for all N below.
    const double r_max = 0.3 * std::sqrt(5.0);
    double previous = 1.0;
    for (int n : {5, 10, 20, 50}) {
        double gap = 0.0;
        for (int k = 0; k <= 300; ++k) {
            const RealVector d = RealVector::Constant(n, r_max * k / 300.0 / std::sqrt(double(n)));
            gap = std::max(gap, std::abs(product_ansatz_fidelity(d) - std::exp(-0.25 * d.squaredNorm())));
        }
        CHECK(gap < previous);
        previous = gap;
    }
}

TEST_CASE("closed-form references") {
    CHECK(epsilon_g_bound(1.0, 1) == doctest::Approx(1.6651).epsilon(1e-4));
    CHECK(epsilon_g_bound(1.0, 10) == doctest::Approx(5.2658).epsilon(1e-4));
    CHECK(epsilon_g_bound(1.0, 4) / epsilon_g_bound(1.0, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(epsilon_g_bound(0.0, 3), DomainError);
    CHECK(random_state_variance_floor(10) == doctest::Approx(4.76837e-7).epsilon(1e-5));
}

TEST_CASE("variance formula and bound") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + trial % 9;
        const Metric f(random_spd(m, rng));
        const double k = 0.05 + 0.9 * (trial % 10) / 10.0;
        CHECK(variance_lower_bound(f, k, 1.0, m) <= predicted_variance(f, k, 1.0, m) + 1e-12);
        const double v = predicted_variance(f, k, 1.0, m);
        if (v > 0.0) {
            CHECK(estimate_trace_f2(v, k, 1.0, m, f.trace()) == doctest::Approx(f.trace_squared()).epsilon(1e-12));
        }
    }
    // F = I_M: both forms coincide and the estimator returns M.
    const int m = 6;
    const Metric id(RealMatrix::Identity(m, m));
    const double v = predicted_variance(id, 0.5, 1.0, m);
    CHECK(v == doctest::Approx(0.25 * std::log(2.0) / m));
    CHECK(variance_lower_bound(id, 0.5, 1.0, m) == doctest::Approx(v));
    CHECK(estimate_trace_f2(v, 0.5, 1.0, m, m) == doctest::Approx(m));
    CHECK_THROWS_AS(estimate_trace_f2(v, 1.0, 1.0, m, m), DomainError);
    CHECK_THROWS_AS(predicted_variance(id, 0.9, 0.8, m), DomainError);
}

TEST_CASE("kernel scan") {
    const CircuitSpec c = build_ansatz(AnsatzKind::YZ_CNOT, 4, 4);
    KernelScanConfig cfg;
    cfg.instances = 3;
    cfg.points = 5;
    cfg.seed = 11;
    const auto a = kernel_scan(c, cfg);
    cfg.threads = 3;
    const auto b = kernel_scan(c, cfg);
    REQUIRE(a.size() == 15);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].instance == b[i].instance);
        CHECK(a[i].norm == b[i].norm);
        CHECK(a[i].fidelity == b[i].fidelity);
    }
    CHECK(a[0].norm == 0.0);
    CHECK(a[0].fidelity == doctest::Approx(1.0));
    CHECK(a[4].norm == doctest::Approx(2.0));
    const auto bins = bin_kernel_samples(a);
    REQUIRE(bins.size() == 5);
    CHECK(bins[2].count == 3);
    CHECK(bins[2].norm == doctest::Approx(1.0));
    const double slope = kernel_slope(bins, 2.0);
    CHECK(slope > 0.5);
    CHECK(slope < 1.5);
}

TEST_CASE("kernel slope through the origin") {
    std::vector<KernelBin> bins;
    for (double x : {0.0, 0.5, 1.0, 4.0}) bins.push_back({x, std::exp(-0.3 * x), 0.3 * x, 1});
    CHECK(kernel_slope(bins, 2.0) == doctest::Approx(1.2));
    CHECK_THROWS_AS(kernel_slope({bins[0]}, 2.0), DegenerateError);
}

TEST_CASE("variance scan") {
    const CircuitSpec c = build_ansatz(AnsatzKind::YZ_CNOT, 4, 4);
    const std::vector<double> dk{1e-4, 0.5};
    const VarianceScan a = variance_scan(c, dk, 12, 3);
    const VarianceScan b = variance_scan(c, dk, 12, 3, 4);
    REQUIRE(a.buckets.size() == 2);
    REQUIRE(a.instances.size() == 24);
    CHECK(a.buckets[0].var_empirical == b.buckets[0].var_empirical);
    CHECK(a.buckets[1].var_eq8 == b.buckets[1].var_eq8);
    CHECK(a.buckets[0].m_params == 32);
    CHECK(a.buckets[0].var_empirical < 1e-3 * a.buckets[1].var_empirical);
    for (const VarianceInstance& v : a.instances) CHECK(v.var_eq9 <= v.var_eq8 + 1e-12);
    CHECK(a.buckets[1].floor_random == random_state_variance_floor(4));
    CHECK_THROWS_AS(variance_scan(c, {1.0}, 4, 1), DomainError);
    CHECK_THROWS_AS(variance_scan(c, dk, 1, 1), ContractError);
}

TEST_CASE("one-step scan") {
    const CircuitSpec c = build_ansatz(AnsatzKind::YZ_CNOT, 4, 3);
    OneStepConfig cfg;
    cfg.infidelities = {0.1, 0.5};
    cfg.gradients = {{0.0, 0.0}, {1.0, 0.1}};
    cfg.lambdas = {0.5, 1.0};
    cfg.instances = 3;
    cfg.seed = 4;
    const auto a = one_step_scan(c, cfg);
    cfg.threads = 2;
    const auto b = one_step_scan(c, cfg);
    REQUIRE(a.size() == 24);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].infidelity_after == b[i].infidelity_after);
    CHECK(a[1].lambda == 1.0);
    CHECK(a[1].initial_infidelity == 0.1);
    CHECK(a[1].alpha_t == a[0].alpha_t);
    CHECK(a[1].infidelity_after < 0.1);
}

TEST_CASE("power-law fit") {
    std::vector<double> x, y;
    for (double v : {0.05, 0.2, 0.7, 1.5, 3.0}) {
        x.push_back(v);
        y.push_back(0.072 * std::pow(v, 1.5));
    }
    const PowerLawFit fit = fit_power_law(x, y);
    CHECK(fit.c == doctest::Approx(0.072).epsilon(1e-12));
    CHECK(fit.nu == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(fit_power_law({1.0}, {1.0}), ContractError);
    CHECK_THROWS_AS(fit_power_law({1.0, 1.0}, {1.0, 2.0}), DegenerateError);
    CHECK_THROWS_AS(fit_power_law({1.0, -1.0}, {1.0, 2.0}), DomainError);
}
