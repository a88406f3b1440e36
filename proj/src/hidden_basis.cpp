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

#include "hiddenbasis/hidden_basis.hpp"

#include <cmath>
#include <limits>

namespace hiddenbasis {

HiddenBasisSpec::HiddenBasisSpec(Vector alpha, Vector beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.size() == 0 || beta_.size() == 0) {
        throw InvariantViolation("HiddenBasisSpec: d0 and d1 must be positive");
    }
    if (std::abs(alpha_.norm() - 1.0) > kExactTol) {
        throw InvariantViolation("HiddenBasisSpec: alpha must have unit norm");
    }
    if (std::abs(beta_.norm() - 1.0) > kExactTol) {
        throw InvariantViolation("HiddenBasisSpec: beta must have unit norm");
    }
}

HiddenBasisSpec HiddenBasisSpec::random(int d0, int d1, Rng &rng) {
    if (d0 <= 0 || d1 <= 0) {
        throw std::invalid_argument("HiddenBasisSpec::random: d0 and d1 must be positive");
    }
    Vector a = random_unit_vector(d0, rng);
    Vector b = random_unit_vector(d1, rng);
    return HiddenBasisSpec(std::move(a), std::move(b));
}

HiddenBasisSpec HiddenBasisSpec::qubit() {
    return HiddenBasisSpec(Vector::Ones(1), Vector::Ones(1));
}

Vector HiddenBasisSpec::physical(int bit) const {
    Vector v = Vector::Zero(d());
    if (bit == 0) {
        v.head(d0()) = alpha_;
    } else {
        v.tail(d1()) = beta_;
    }
    return v;
}

Index HiddenBasisSpec::physical_dim(int n) const {
    Index dim = 1;
    for (int k = 0; k < n; ++k) {
        if (dim > std::numeric_limits<Index>::max() / d()) {
            throw std::overflow_error("HiddenBasisSpec: physical dimension overflows");
        }
        dim *= d();
    }
    return dim;
}

LogicalState::LogicalState(int n, Vector amplitudes, double tol)
    : n_(n), amp_(std::move(amplitudes)) {
    check_register_count(n, "LogicalState");
    if (amp_.size() != (Index{1} << n)) {
        throw DimensionMismatch("LogicalState: expected 2^" + std::to_string(n) +
                                " amplitudes");
    }
    if (std::abs(amp_.norm() - 1.0) > tol) {
        throw InvariantViolation("LogicalState: amplitudes must have unit norm");
    }
}

LogicalState LogicalState::basis(int n, Label y) {
    check_register_count(n, "LogicalState::basis");
    if (y >= (Label{1} << n)) {
        throw std::out_of_range("LogicalState::basis: label out of range");
    }
    Vector v = Vector::Zero(Index{1} << n);
    v(static_cast<Index>(y)) = 1.0;
    return LogicalState(n, std::move(v));
}

LogicalState LogicalState::normalized(int n, const Vector &v) {
    const double norm = v.norm();
    if (!(norm > 0.0)) {
        throw InvariantViolation("LogicalState: cannot normalize a zero vector");
    }
    return LogicalState(n, v / norm);
}

LogicalState LogicalState::random(int n, Rng &rng) {
    check_register_count(n, "LogicalState::random");
    return LogicalState(n, random_unit_vector(Index{1} << n, rng));
}

PureState embed(const HiddenBasisSpec &spec, const LogicalState &psi) {
    const int n = psi.n();
    const int d = spec.d();
    const int d0 = spec.d0();
    const Index dim = spec.physical_dim(n);
    // Every physical basis index lies in exactly one sector: its digit
    // pattern (digit >= d0 -> 1) is the logical label it comes from.
    Vector out(dim);
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (Index p = 0; p < dim; ++p) {
        Index rest = p;
        for (int k = n - 1; k >= 0; --k) {
            digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % d);
            rest /= d;
        }
        Label y = 0;
        Complex coeff = 1.0;
        for (int k = 0; k < n; ++k) {
            const int c = digits[static_cast<std::size_t>(k)];
            const bool one = c >= d0;
            y = (y << 1U) | static_cast<Label>(one);
            coeff *= one ? spec.beta()(c - d0) : spec.alpha()(c);
        }
        out(p) = psi[y] * coeff;
    }
    return PureState(std::move(out), kChainTol);
}

WeightBlockOperator phase_shift(double theta, int n) {
    std::vector<Matrix> blocks;
    for (int w = 0; w <= n; ++w) {
        const auto size = static_cast<Index>(binomial(n, w));
        blocks.push_back(std::polar(1.0, w * theta) * Matrix::Identity(size, size));
    }
    return WeightBlockOperator(n, std::move(blocks));
}

} // namespace hiddenbasis
