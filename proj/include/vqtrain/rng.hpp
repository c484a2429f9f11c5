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
 * Seed derivation and random draws shared by the experiments.
 */
#pragma once

#include "vqtrain/types.hpp"

#include <cstdint>
#include <random>

namespace vqtrain {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-instance seed: mix64(mix64(seed) ^ (index + 1)). Independent of the
/// order in which instances are scheduled.
constexpr std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ (index + 1));
}

/// Seed for a named sub-stream of an instance (direction draws, targets, ...).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(seed ^ mix64(stream + 0x5bd1e995ULL));
}

inline RealVector standard_normal(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

inline RealVector random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
    RealVector v = standard_normal(n, rng);
    return v / v.norm();
}

/// Haar-distributed unit vector in C^dim (normalized complex Gaussian).
inline ComplexVector haar_random_vector(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex{normal(rng), normal(rng)};
    return v / v.norm();
}

} // namespace vqtrain
