// Copyright 2026 The hiddenbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hiddenbasis/rng.hpp"

#include <cmath>

namespace hiddenbasis {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace

std::uint64_t SeedStream::derive(std::string_view label) const noexcept {
    return splitmix64(splitmix64(seed_) ^ fnv1a(label));
}

Vector gaussian_vector(Index dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

Vector random_unit_vector(Index dim, Rng &rng) {
    Vector v = gaussian_vector(dim, rng);
    return v / v.norm();
}

Matrix haar_unitary(Index dim, Rng &rng) {
    Matrix g(dim, dim);
    for (Index c = 0; c < dim; ++c) {
        g.col(c) = gaussian_vector(dim, rng);
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < dim; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) {
            q.col(i) *= r(i, i) / mag;
        }
    }
    return q;
}

Matrix random_hermitian(Index dim, Rng &rng) {
    Matrix g(dim, dim);
    for (Index c = 0; c < dim; ++c) {
        g.col(c) = gaussian_vector(dim, rng);
    }
    return 0.5 * (g + g.adjoint());
}

Matrix random_density(Index dim, Rng &rng) {
    Matrix g(dim, dim);
    for (Index c = 0; c < dim; ++c) {
        g.col(c) = gaussian_vector(dim, rng);
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

} // namespace hiddenbasis
