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

#include <algorithm>
#include <cmath>

#include "hiddenbasis/hidden_basis.hpp"

namespace hiddenbasis {
namespace {

TEST(Weights, LexicographicOrderAndRanks) {
    const auto basis = weight_basis(4, 2);
    ASSERT_EQ(basis.size(), 6U);
    std::vector<std::string> strings;
    for (const auto &wl : basis) {
        EXPECT_EQ(hamming_weight(wl.bits), 2);
        EXPECT_EQ(wl.rank, static_cast<int>(strings.size()));
        strings.push_back(label_string(wl.bits, 4));
    }
    EXPECT_TRUE(std::is_sorted(strings.begin(), strings.end()));
    EXPECT_EQ(strings.front(), "0011");
    EXPECT_EQ(strings.back(), "1100");
    EXPECT_EQ(parse_label("0110"), Label{6});
    EXPECT_EQ(label_bit(parse_label("100"), 3, 0), 1);
    EXPECT_THROW((void)weight_basis(3, 4), std::out_of_range);
}

TEST(Weights, IndexRoundTrip) {
    const WeightIndex idx(5);
    EXPECT_EQ(idx.dim(), 32U);
    for (int w = 0; w <= 5; ++w) {
        EXPECT_EQ(idx.block_size(w), static_cast<int>(binomial(5, w)));
        for (int r = 0; r < idx.block_size(w); ++r) {
            EXPECT_EQ(idx.rank(idx.labels(w)[r]), r);
        }
    }
}

TEST(HiddenBasisSpec, RandomSpecIsOrthonormalWithDisjointSupport) {
    Rng rng(2);
    const HiddenBasisSpec spec = HiddenBasisSpec::random(3, 2, rng);
    const Vector zero = spec.physical(0);
    const Vector one = spec.physical(1);
    EXPECT_EQ(zero.size(), 5);
    EXPECT_NEAR(zero.norm(), 1.0, 1e-14);
    EXPECT_NEAR(one.norm(), 1.0, 1e-14);
    EXPECT_EQ(zero.tail(2).norm(), 0.0);
    EXPECT_EQ(one.head(3).norm(), 0.0);
    EXPECT_EQ(spec.physical_dim(3), 125);
}

TEST(HiddenBasisSpec, RejectsUnnormalizedDescription) {
    Vector a(2), b(1);
    a << 1.0, 1.0;
    b << 1.0;
    EXPECT_THROW((HiddenBasisSpec{a, b}), InvariantViolation);
}

// Oracle: the embedding as an explicit sum of Kronecker products.
TEST(Embed, MatchesKroneckerSum) {
    Rng rng(9);
    const HiddenBasisSpec spec = HiddenBasisSpec::random(2, 3, rng);
    const int n = 3;
    const LogicalState psi = LogicalState::random(n, rng);
    Vector expect = Vector::Zero(spec.physical_dim(n));
    for (Label y = 0; y < 8; ++y) {
        Vector term = spec.physical(label_bit(y, n, 0));
        for (int k = 1; k < n; ++k) {
            term = kron(term, spec.physical(label_bit(y, n, k)));
        }
        expect += psi[y] * term;
    }
    EXPECT_LT((embed(spec, psi).amplitudes() - expect).norm(), 1e-13);
}

TEST(Embed, PreservesInnerProducts) {
    Rng rng(10);
    const HiddenBasisSpec spec = HiddenBasisSpec::random(2, 2, rng);
    const LogicalState a = LogicalState::random(3, rng);
    const LogicalState b = LogicalState::random(3, rng);
    const Complex logical = a.amplitudes().dot(b.amplitudes());
    const Complex physical = embed(spec, a).amplitudes().dot(embed(spec, b).amplitudes());
    EXPECT_LT(std::abs(logical - physical), 1e-13);
}

TEST(PhaseShift, DiagonalWithWeightPhases) {
    const double theta = 0.7;
    const Matrix u = phase_shift(theta, 3).to_dense();
    for (Label y = 0; y < 8; ++y) {
        for (Label x = 0; x < 8; ++x) {
            const Complex expect =
                x == y ? std::polar(1.0, theta * hamming_weight(y)) : Complex(0.0);
            EXPECT_LT(std::abs(u(x, y) - expect), 1e-15);
        }
    }
}

TEST(WeightBlockOperator, FromDenseRejectsWeightMixing) {
    Matrix m = Matrix::Identity(4, 4);
    m(0, 1) = 0.1; // |00> <-> |01> changes weight
    EXPECT_THROW((void)WeightBlockOperator::from_dense(m), NotPhaseInvariant);
    Matrix ok = Matrix::Identity(4, 4);
    ok(1, 2) = 0.5; // |01> <-> |10> keeps weight
    const WeightBlockOperator op = WeightBlockOperator::from_dense(ok);
    EXPECT_LT(max_abs_entry(op.to_dense() - ok), 1e-15);
}

TEST(WeightBlockOperator, ShapeValidation) {
    std::vector<Matrix> blocks{Matrix::Identity(1, 1), Matrix::Identity(3, 3),
                               Matrix::Identity(1, 1)};
    EXPECT_THROW((WeightBlockOperator{2, blocks}), DimensionMismatch);
}

TEST(WeightBlockOperator, ProductAndAdjoint) {
    Rng rng(12);
    const WeightBlockOperator a = WeightBlockOperator::random_unitary(4, rng);
    const WeightBlockOperator b = WeightBlockOperator::random_unitary(4, rng);
    EXPECT_LT(max_abs_entry((a * b).to_dense() - a.to_dense() * b.to_dense()), 1e-13);
    EXPECT_LT(max_abs_entry(a.adjoint().to_dense() - a.to_dense().adjoint()), 1e-15);
    EXPECT_TRUE(a.is_unitary());
    const Vector v = LogicalState::random(4, rng).amplitudes();
    EXPECT_LT((a.apply(v) - a.to_dense() * v).norm(), 1e-13);
}

} // namespace
} // namespace hiddenbasis
