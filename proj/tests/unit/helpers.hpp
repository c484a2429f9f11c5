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

#pragma once

#include "vqtrain/rng.hpp"
#include "vqtrain/statevec.hpp"

#include <cmath>
#include <numbers>

namespace vqtrain::testing {

inline constexpr double kPi = std::numbers::pi;

inline StateVector random_state(int n, std::mt19937_64& rng) {
    return StateVector(n, haar_random_vector(Eigen::Index{1} << n, rng));
}

inline Hamiltonian random_hamiltonian(int n, std::mt19937_64& rng) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::normal_distribution<double> normal;
    ComplexMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex{normal(rng), normal(rng)};
    }
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    return Hamiltonian(n, h);
}

inline RealMatrix random_spd(int m, std::mt19937_64& rng, double floor = 0.05) {
    const RealMatrix a = RealMatrix::NullaryExpr(m, m, [&] { return std::normal_distribution<double>()(rng); });
    return a * a.transpose() / m + floor * RealMatrix::Identity(m, m);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

inline ComplexMatrix pauli(char p) {
    ComplexMatrix m(2, 2);
    switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = ComplexMatrix::Identity(2, 2);
    }
    return m;
}

/// Dense brute-force matrix exponential exp(-i H t) by Taylor series with squaring.
inline ComplexMatrix expm_oracle(const ComplexMatrix& h, double t) {
    const ComplexMatrix a = Complex(0, -t) * h;
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm + 1e-300))) + 1);
    const ComplexMatrix b = a / std::ldexp(1.0, squarings);
    ComplexMatrix term = ComplexMatrix::Identity(h.rows(), h.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

} // namespace vqtrain::testing
