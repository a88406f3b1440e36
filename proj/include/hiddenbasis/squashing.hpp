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

/**
 * @file squashing.hpp
 * Squashing: producing |0> + |psi> from copies of |psi>. Only the
 * distinguishability bounds are computed; no squasher is constructed.
 *
 * The search-style family |j*> is handled in its Fourier frame, where
 * <i|j*> = +1/sqrt(M) for i = j and -1/sqrt(M) otherwise. The common
 * inverse Fourier transform cancels in every trace distance.
 */
#pragma once

#include <string>
#include <vector>

#include "hiddenbasis/core.hpp"
#include "hiddenbasis/protocol.hpp"

namespace hiddenbasis {

/// |j*> in the Fourier frame; 0 <= j < M.
[[nodiscard]] PureState a2_state(int j, int M);
/// F|0>, the uniform vector.
[[nodiscard]] PureState fourier_zero(int M);
/// Normalized |0> + |psi>.
[[nodiscard]] PureState squash_target(const PureState &zero, const PureState &psi);

/// sqrt(1 - |overlap|^(2t)).
[[nodiscard]] double tensor_power_trace_distance(Complex overlap, int t);
/// Same quantity from the dense M^t-dimensional projectors (M^t <= 4096).
[[nodiscard]] double dense_tensor_power_trace_distance(const PureState &a, const PureState &b,
                                                       int t);

struct CopyBound {
    double bound = 0.0; ///< log(4 eps (1-eps)) / (2 log(1 - 4/M)).
    double slope = 0.0; ///< -log(4 eps (1-eps)) / 8, the large-M growth rate per unit M.
};
/// Needs 0 < epsilon < 1/2 and M > 4; throws std::domain_error otherwise.
[[nodiscard]] CopyBound squash_copy_lower_bound(int M, double epsilon);

/// 2x - (x + x^2/2 + ...) = 2x + log(1 - x), nonnegative for x in (0, 1/2].
[[nodiscard]] double log_series_slack(double x);

struct ChainReport {
    int M = 0;
    int t = 0;
    double epsilon = 0.0;
    double ideal_output_distance = 0.0; ///< D(sigma_{0,i*}, sigma_{0,j*}), i != j.
    double chain_lhs = 0.0;             ///< 1 - 2 epsilon.
    double tensor_distance_dense = 0.0;
    double chain_rhs = 0.0;             ///< sqrt(1 - (1 - 4/M)^(2t)).
    double bound_t = 0.0;
    bool dense_check_pass = false;
    bool feasible = false;              ///< chain_lhs <= chain_rhs.
    bool consistent_with_bound = false; ///< infeasible exactly when t < bound_t.
    std::vector<std::string> notes;
};

/// Throws std::length_error when M^t exceeds 4096.
[[nodiscard]] ChainReport verify_chain(int M, int t, double epsilon);

class SquashInstance {
  public:
    /// Throws std::domain_error unless 0 <= epsilon < 1/2.
    SquashInstance(FingerprintFamily family, double epsilon);
    [[nodiscard]] const FingerprintFamily &family() const noexcept { return family_; }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

  private:
    FingerprintFamily family_;
    double epsilon_;
};

struct NoIncreaseReport {
    int t = 0;
    double max_output_distance = 0.0;
    double min_input_distance = 1.0;
    double max_excess = 0.0; ///< max over pairs of D(out) - D(in); <= 0 means the inequality holds.
    bool dense_checked = false;
    double dense_max_deviation = 0.0;
    [[nodiscard]] bool holds(double tol = kChainTol) const { return max_excess <= tol; }
};

/// D(sigma_{0,psi}, sigma_{0,phi}) against D(psi^t, phi^t) over all pairs.
[[nodiscard]] NoIncreaseReport check_no_increase(const FingerprintFamily &family, int t);
/// Smallest t <= t_max at which the inequality holds for every pair, or -1.
[[nodiscard]] int no_increase_threshold(const FingerprintFamily &family, int t_max);

} // namespace hiddenbasis
