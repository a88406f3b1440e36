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

#include "hiddenbasis/squashing.hpp"

#include <algorithm>
#include <cmath>

namespace hiddenbasis {

namespace {

constexpr Index kDenseTensorCap = 4096;

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw std::domain_error("epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
    }
}

Vector tensor_power(const Vector &v, int t) {
    Vector out = v;
    for (int k = 1; k < t; ++k) {
        out = kron(out, v);
    }
    return out;
}

} // namespace

PureState a2_state(int j, int M) {
    if (M < 2 || j < 0 || j >= M) {
        throw std::out_of_range("a2_state: need 0 <= j < M and M >= 2");
    }
    const double a = 1.0 / std::sqrt(static_cast<double>(M));
    Vector v = Vector::Constant(M, -a);
    v(j) = a;
    return PureState(std::move(v));
}

PureState fourier_zero(int M) {
    if (M < 1) {
        throw std::out_of_range("fourier_zero: M must be positive");
    }
    return PureState(Vector::Constant(M, 1.0 / std::sqrt(static_cast<double>(M))));
}

PureState squash_target(const PureState &zero, const PureState &psi) {
    if (zero.dim() != psi.dim()) {
        throw DimensionMismatch("squash_target: dimensions differ");
    }
    return PureState::normalized(zero.amplitudes() + psi.amplitudes());
}

double tensor_power_trace_distance(Complex overlap, int t) {
    if (t < 1) {
        throw std::invalid_argument("tensor_power_trace_distance: t must be positive");
    }
    const double a = std::abs(overlap);
    if (a > 1.0 + kExactTol) {
        throw std::invalid_argument("tensor_power_trace_distance: |overlap| exceeds 1");
    }
    return std::sqrt(std::max(0.0, 1.0 - std::pow(std::min(a, 1.0), 2 * t)));
}

double dense_tensor_power_trace_distance(const PureState &a, const PureState &b, int t) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("dense_tensor_power_trace_distance: dimensions differ");
    }
    if (t < 1) {
        throw std::invalid_argument("dense_tensor_power_trace_distance: t must be positive");
    }
    Index dim = 1;
    for (int k = 0; k < t; ++k) {
        dim *= a.dim();
        if (dim > kDenseTensorCap) {
            throw std::length_error("dense_tensor_power_trace_distance: M^t exceeds 4096");
        }
    }
    const Vector at = tensor_power(a.amplitudes(), t);
    const Vector bt = tensor_power(b.amplitudes(), t);
    return trace_distance(DensityOperator(at * at.adjoint(), kChainTol),
                          DensityOperator(bt * bt.adjoint(), kChainTol));
}

CopyBound squash_copy_lower_bound(int M, double epsilon) {
    check_epsilon(epsilon);
    if (M <= 4) {
        throw std::domain_error("squash_copy_lower_bound: need M > 4, got " + std::to_string(M));
    }
    const double num = std::log(4.0 * epsilon * (1.0 - epsilon));
    return CopyBound{num / (2.0 * std::log1p(-4.0 / M)), -num / 8.0};
}

double log_series_slack(double x) {
    if (!(x > 0.0 && x <= 0.5)) {
        throw std::domain_error("log_series_slack: x must lie in (0, 1/2]");
    }
    return 2.0 * x + std::log1p(-x);
}

ChainReport verify_chain(int M, int t, double epsilon) {
    check_epsilon(epsilon);
    if (M <= 4 || t < 1) {
        throw std::domain_error("verify_chain: need M > 4 and t >= 1");
    }
    ChainReport r;
    r.M = M;
    r.t = t;
    r.epsilon = epsilon;

    const PureState zero = fourier_zero(M);
    const PureState si = a2_state(0, M);
    const PureState sj = a2_state(1, M);
    r.ideal_output_distance =
        trace_distance(squash_target(zero, si).projector(), squash_target(zero, sj).projector());
    r.chain_lhs = 1.0 - 2.0 * epsilon;
    r.tensor_distance_dense = dense_tensor_power_trace_distance(si, sj, t);
    r.chain_rhs = tensor_power_trace_distance(1.0 - 4.0 / M, t);
    r.bound_t = squash_copy_lower_bound(M, epsilon).bound;
    r.dense_check_pass = std::abs(r.tensor_distance_dense - r.chain_rhs) <= kChainTol &&
                         std::abs(r.ideal_output_distance - 1.0) <= kExactTol;
    r.feasible = r.chain_lhs <= r.chain_rhs;
    r.consistent_with_bound = (t < r.bound_t) == !r.feasible;
    r.notes.push_back("search family evaluated in its Fourier frame; the shared inverse "
                      "transform leaves every trace distance unchanged");
    r.notes.push_back("copy count t(A2, eps, 1) read as t(A2, eps)");
    if (!r.feasible) {
        r.notes.push_back("no channel reaches output distance " + std::to_string(r.chain_lhs) +
                          " from input distance " + std::to_string(r.chain_rhs));
    }
    return r;
}

SquashInstance::SquashInstance(FingerprintFamily family, double epsilon)
    : family_(std::move(family)), epsilon_(epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 0.5)) {
        throw std::domain_error("SquashInstance: epsilon must lie in [0, 1/2)");
    }
}

NoIncreaseReport check_no_increase(const FingerprintFamily &family, int t) {
    if (t < 1) {
        throw std::invalid_argument("check_no_increase: t must be positive");
    }
    NoIncreaseReport r;
    r.t = t;
    r.max_excess = -1.0;
    Index dense_dim = 1;
    for (int k = 0; k < t && dense_dim <= kDenseTensorCap; ++k) {
        dense_dim *= family.M();
    }
    r.dense_checked = dense_dim <= 256;
    const auto &states = family.states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const PureState ti = squash_target(family.zero(), states[i]);
            const PureState tj = squash_target(family.zero(), states[j]);
            const double out = std::sqrt(
                std::max(0.0, 1.0 - std::norm(ti.amplitudes().dot(tj.amplitudes()))));
            const double in =
                tensor_power_trace_distance(states[i].amplitudes().dot(states[j].amplitudes()), t);
            r.max_output_distance = std::max(r.max_output_distance, out);
            r.min_input_distance = std::min(r.min_input_distance, in);
            r.max_excess = std::max(r.max_excess, out - in);
            if (r.dense_checked) {
                const double dense = dense_tensor_power_trace_distance(states[i], states[j], t);
                r.dense_max_deviation = std::max(r.dense_max_deviation, std::abs(dense - in));
            }
        }
    }
    return r;
}

int no_increase_threshold(const FingerprintFamily &family, int t_max) {
    for (int t = 1; t <= t_max; ++t) {
        if (check_no_increase(family, t).holds(0.0)) {
            return t;
        }
    }
    return -1;
}

} // namespace hiddenbasis
