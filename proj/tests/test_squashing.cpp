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


#include <gtest/gtest.h>

#include <cmath>

#include "hiddenbasis/squashing.hpp"

namespace hiddenbasis {
namespace {

TEST(A2Family, OverlapsAreConstant) {
    for (int M = 5; M <= 64; M += 7) {
        for (int i = 0; i < M; ++i) {
            EXPECT_NEAR(a2_state(i, M).amplitudes().norm(), 1.0, 1e-14);
            for (int j = 0; j < i; ++j) {
                const Complex ov = a2_state(i, M).amplitudes().dot(a2_state(j, M).amplitudes());
                EXPECT_NEAR(std::abs(ov - (1.0 - 4.0 / M)), 0.0, 1e-13);
            }
        }
    }
    EXPECT_THROW((void)a2_state(8, 8), std::out_of_range);
}

TEST(A2Family, SquashTargetIsComputationalBasisVector) {
    const int M = 8;
    for (int j = 0; j < M; ++j) {
        const PureState target = squash_target(fourier_zero(M), a2_state(j, M));
        EXPECT_LT((target.amplitudes() - Vector::Unit(M, j)).norm(), 1e-12);
    }
}

// Oracle: the Fourier-frame numbers equal those of the original frame,
// F^dagger |j*> with F the unitary DFT.
TEST(A2Family, FourierFrameDropsOut) {
    const int M = 8;
    Matrix f(M, M);
    for (int a = 0; a < M; ++a) {
        for (int b = 0; b < M; ++b) {
            f(a, b) = std::polar(1.0 / std::sqrt(M), 2.0 * kPi * a * b / M);
        }
    }
    const PureState zero = PureState::basis(M, 0);
    const PureState x(f.adjoint() * a2_state(2, M).amplitudes(), 1e-12);
    const PureState y(f.adjoint() * a2_state(5, M).amplitudes(), 1e-12);
    EXPECT_NEAR(trace_distance(squash_target(zero, x).projector(), squash_target(zero, y).projector()),
                1.0, 1e-10);
    EXPECT_NEAR(dense_tensor_power_trace_distance(x, y, 2),
                tensor_power_trace_distance(1.0 - 4.0 / M, 2), 1e-9);
}

TEST(TensorPower, ClosedFormAgreesWithDense) {
    for (int t = 1; t <= 3; ++t) {
        EXPECT_NEAR(dense_tensor_power_trace_distance(a2_state(0, 8), a2_state(3, 8), t),
                    tensor_power_trace_distance(0.5, t), 1e-9);
    }
    EXPECT_NEAR(tensor_power_trace_distance(0.5, 3), std::sqrt(1.0 - std::pow(0.5, 6)), 1e-15);
    EXPECT_EQ(tensor_power_trace_distance(0.0, 4), 1.0);
    double prev = 0.0;
    for (int t = 1; t < 20; ++t) {
        const double d = tensor_power_trace_distance(Complex(0.3, 0.6), t);
        EXPECT_GE(d, prev);
        prev = d;
    }
    EXPECT_THROW((void)dense_tensor_power_trace_distance(a2_state(0, 8), a2_state(1, 8), 5),
                 std::length_error);
}

TEST(CopyBound, FormulaMonotonicityAndLinearGrowth) {
    const CopyBound b = squash_copy_lower_bound(8, 1.0 / 3.0);
    EXPECT_NEAR(b.bound, std::log(8.0 / 9.0) / (2.0 * std::log(0.5)), 1e-14);
    EXPECT_NEAR(b.slope, -std::log(8.0 / 9.0) / 8.0, 1e-15);
    for (int M = 64; M <= 4096; M *= 2) {
        const double ratio = squash_copy_lower_bound(2 * M, 1.0 / 3.0).bound /
                             squash_copy_lower_bound(M, 1.0 / 3.0).bound;
        EXPECT_NEAR(ratio, 2.0, 0.1) << "M=" << M;
        EXPECT_NEAR(squash_copy_lower_bound(M, 1.0 / 3.0).bound / M, b.slope, 0.05 * b.slope + 2.0 / M);
    }
    double prev = 0.0;
    for (int M = 5; M < 200; ++M) {
        const double v = squash_copy_lower_bound(M, 0.2).bound;
        EXPECT_GT(v, prev);
        prev = v;
    }
    prev = 1e300;
    for (double eps = 0.01; eps < 0.5; eps += 0.01) {
        const double v = squash_copy_lower_bound(16, eps).bound;
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(squash_copy_lower_bound(16, 0.5 - 1e-9).bound, 1e-12);
    EXPECT_THROW((void)squash_copy_lower_bound(4, 0.1), std::domain_error);
    EXPECT_THROW((void)squash_copy_lower_bound(8, 0.5), std::domain_error);
}

TEST(CopyBound, LogSeriesSlackIsNonnegative) {
    for (int k = 1; k <= 1000; ++k) {
        EXPECT_GE(log_series_slack(0.5 * k / 1000.0), 0.0);
    }
}

TEST(Chain, ReportAtSmallT) {
    for (int t = 1; t <= 3; ++t) {
        const ChainReport r = verify_chain(8, t, 1.0 / 3.0);
        EXPECT_TRUE(r.dense_check_pass);
        EXPECT_NEAR(r.ideal_output_distance, 1.0, 1e-10);
        EXPECT_NEAR(r.tensor_distance_dense, r.chain_rhs, 1e-9);
        EXPECT_TRUE(r.consistent_with_bound);
        EXPECT_FALSE(r.notes.empty());
    }
    const ChainReport two = verify_chain(8, 2, 1.0 / 3.0);
    EXPECT_NEAR(two.chain_lhs, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(two.chain_rhs, std::sqrt(1.0 - std::pow(0.5, 4)), 1e-12);
    EXPECT_TRUE(two.feasible);
}

TEST(Chain, BelowBoundIsInfeasible) {
    // epsilon close to 0 makes the bound exceed one copy for large M.
    const ChainReport r = verify_chain(64, 1, 0.01);
    EXPECT_LT(1.0, r.bound_t);
    EXPECT_FALSE(r.feasible);
    EXPECT_TRUE(r.consistent_with_bound);
}

TEST(NoIncrease, HoldsAboveThresholdForSampledFamilies) {
    Rng rng(71);
    const FingerprintFamily fam = FingerprintFamily::haar(6, 4, 0.7, rng);
    const int t0 = no_increase_threshold(fam, 64);
    ASSERT_GT(t0, 0);
    for (int t = t0; t <= t0 + 3; ++t) {
        EXPECT_TRUE(check_no_increase(fam, t).holds());
    }
    const NoIncreaseReport small = check_no_increase(fam, 2);
    EXPECT_TRUE(small.dense_checked);
    EXPECT_LT(small.dense_max_deviation, 1e-9);
    const FingerprintFamily ortho = FingerprintFamily::orthonormal(5);
    EXPECT_EQ(no_increase_threshold(ortho, 4), 1);
}

TEST(SquashInstance, EpsilonRange) {
    EXPECT_NO_THROW((SquashInstance{FingerprintFamily::orthonormal(4), 0.0}));
    EXPECT_THROW((SquashInstance{FingerprintFamily::orthonormal(4), 0.5}), std::domain_error);
}

} // namespace
} // namespace hiddenbasis
