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

#include "hiddenbasis/hidden_basis.hpp"
#include "hiddenbasis/kernels.hpp"
#include "hiddenbasis/phase_invariant.hpp"

namespace hiddenbasis {
namespace {

using kernels::LiftPlan;

std::span<Complex> span_of(Vector &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

Vector random_joint(int m, int t, std::uint64_t seed) {
    Rng rng(seed);
    return random_unit_vector((Index{1} << m) * (t + 1), rng);
}

TEST(RootSwap, SerialAndParallelAgreeBitForBit) {
    for (int m : {1, 3, 6}) {
        for (int t : {3, 17, 200}) {
            for (int q = 0; q < m; ++q) {
                Vector a = random_joint(m, t, 100 + m * t + q);
                Vector b = a;
                kernels::root_swap_serial(span_of(a), m, t, q, 0.37);
                kernels::root_swap_parallel(span_of(b), m, t, q, 0.37);
                EXPECT_TRUE(a == b) << "m=" << m << " t=" << t << " q=" << q;
            }
        }
    }
}

TEST(QubitPhase, SerialAndParallelAgreeBitForBit) {
    for (int m : {1, 4}) {
        for (int q = 0; q < m; ++q) {
            Vector a = random_joint(m, 33, 7 + q);
            Vector b = a;
            kernels::qubit_phase_serial(span_of(a), m, 33, q, std::polar(1.0, 0.3));
            kernels::qubit_phase_parallel(span_of(b), m, 33, q, std::polar(1.0, 0.3));
            EXPECT_TRUE(a == b);
        }
    }
}

// Oracle: the documented 2(t+1)-dimensional matrix on (qubit, reference).
TEST(RootSwap, MatchesDenseMatrixOnOneQubit) {
    const int t = 6;
    const double alpha = 0.6;
    const double beta = std::sqrt(1.0 - alpha * alpha);
    const Complex ib(0.0, beta);
    const int D = 2 * (t + 1);
    Matrix g = Matrix::Zero(D, D);
    auto at = [t](int bit, int w) { return bit * (t + 1) + w; };
    g(at(0, 0), at(0, 0)) = 1.0;
    g(at(1, t), at(1, t)) = 1.0;
    for (int a = 1; a <= t; ++a) {
        g(at(0, a), at(0, a)) = alpha;
        g(at(1, a - 1), at(0, a)) = ib;
    }
    for (int b = 0; b < t; ++b) {
        g(at(1, b), at(1, b)) = alpha;
        g(at(0, b + 1), at(1, b)) = ib;
    }
    ASSERT_TRUE(is_unitary(g, 1e-14));
    Vector v = random_joint(1, t, 5);
    const Vector expect = g * v;
    kernels::root_swap_serial(span_of(v), 1, t, 0, alpha);
    EXPECT_LT((v - expect).norm(), 1e-14);
}

TEST(QubitPhase, OnlyTouchesSelectedBit) {
    const int m = 3, t = 4;
    Vector v = random_joint(m, t, 8);
    const Vector before = v;
    const Complex ph = std::polar(1.0, 1.1);
    kernels::qubit_phase_serial(span_of(v), m, t, 1, ph);
    for (Label y = 0; y < 8; ++y) {
        for (int w = 0; w <= t; ++w) {
            const Index i = static_cast<Index>(y) * (t + 1) + w;
            const Complex expect = label_bit(y, m, 1) ? before(i) * ph : before(i);
            EXPECT_EQ(v(i), expect);
        }
    }
}

TEST(LiftPlan, SectorsPartitionThePhysicalSpace) {
    const LiftPlan plan(3, 2, 3);
    EXPECT_EQ(plan.physical_dim(), 125);
    std::vector<int> seen(125, 0);
    for (const auto &s : plan.sectors()) {
        std::vector<Index> out(s.patterns.size());
        for (Index inner = 0; inner < s.inner_count; ++inner) {
            plan.physical_indices(s, inner, out);
            for (Index p : out) {
                ++seen[static_cast<std::size_t>(p)];
            }
        }
    }
    for (int c : seen) {
        EXPECT_EQ(c, 1);
    }
}

TEST(LiftApply, SerialAndParallelAgreeBitForBit) {
    Rng rng(21);
    for (auto [n, d0, d1] : {std::tuple{2, 2, 2}, std::tuple{3, 1, 3}, std::tuple{4, 2, 2}}) {
        const WeightBlockOperator v = WeightBlockOperator::random_unitary(n, rng);
        const LiftPlan plan(n, d0, d1);
        const Vector in = random_unit_vector(plan.physical_dim(), rng);
        Vector a(plan.physical_dim()), b(plan.physical_dim());
        kernels::lift_apply_serial(plan, v.blocks(), {in.data(), static_cast<std::size_t>(in.size())},
                                   span_of(a));
        kernels::lift_apply_parallel(plan, v.blocks(),
                                     {in.data(), static_cast<std::size_t>(in.size())}, span_of(b));
        EXPECT_TRUE(a == b);
    }
}

// Oracle: on the span of embedded product states the lift must act as V, and
// with d0 = d1 = 1 the lift is V itself.
TEST(LiftApply, QubitLayoutIsTheLogicalOperator) {
    Rng rng(22);
    const WeightBlockOperator v = WeightBlockOperator::random_unitary(3, rng);
    const LiftPlan plan(3, 1, 1);
    const Vector in = random_unit_vector(8, rng);
    Vector out(8);
    kernels::lift_apply_serial(plan, v.blocks(), {in.data(), 8}, span_of(out));
    EXPECT_LT((out - v.to_dense() * in).norm(), 1e-13);
}

TEST(Threads, ReportsAtLeastOne) { EXPECT_GE(kernels::max_threads(), 1); }

} // namespace
} // namespace hiddenbasis
