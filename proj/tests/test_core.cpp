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

#include "hiddenbasis/core.hpp"
#include "hiddenbasis/rng.hpp"

namespace hiddenbasis {
namespace {

TEST(PureState, RejectsUnnormalizedVector) {
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState{v}, InvariantViolation);
    EXPECT_NEAR(PureState::normalized(v).amplitudes().norm(), 1.0, 1e-15);
}

TEST(DensityOperator, RejectsNegativeAndNonHermitian) {
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator{neg}, InvariantViolation);
    Matrix skew = Matrix::Identity(2, 2) / 2.0;
    skew(0, 1) = 0.3;
    EXPECT_THROW(DensityOperator{skew}, InvariantViolation);
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
    Matrix m = Matrix::Identity(3, 3);
    m(2, 2) = 2.0;
    EXPECT_THROW(UnitaryMatrix{m}, InvariantViolation);
}

TEST(Kron, IndexConvention) {
    Vector a(2), b(3);
    a << 1.0, 2.0;
    b << 3.0, 5.0, 7.0;
    const Vector k = kron(a, b);
    ASSERT_EQ(k.size(), 6);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(k(i * 3 + j), a(i) * b(j));
        }
    }
}

// Singular values of the difference give the trace distance independently of
// the eigenvalue route used by the library.
TEST(TraceDistance, MatchesSingularValues) {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityOperator rho(random_density(5, rng));
        const DensityOperator sigma(random_density(5, rng));
        const Eigen::JacobiSVD<Matrix> svd(rho.matrix() - sigma.matrix());
        EXPECT_NEAR(trace_distance(rho, sigma), 0.5 * svd.singularValues().sum(), 1e-12);
    }
}

TEST(TraceDistance, PureStatesFollowOverlap) {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState a(random_unit_vector(6, rng));
        const PureState b(random_unit_vector(6, rng));
        const double ov = std::abs(a.amplitudes().dot(b.amplitudes()));
        EXPECT_NEAR(trace_distance(a.projector(), b.projector()), std::sqrt(1.0 - ov * ov), 1e-12);
        EXPECT_NEAR(fidelity_pure(a, b), ov, 1e-14);
        EXPECT_NEAR(fidelity(a.projector(), b.projector()), ov, 1e-7);
        EXPECT_NEAR(fidelity(a.projector(), b), ov, 1e-12);
    }
}

TEST(Fidelity, CommutingStatesGiveClassicalFidelity) {
    Matrix rho = Matrix::Zero(3, 3), sigma = Matrix::Zero(3, 3);
    const double p[3] = {0.5, 0.3, 0.2};
    const double q[3] = {0.1, 0.6, 0.3};
    double expect = 0.0;
    for (int i = 0; i < 3; ++i) {
        rho(i, i) = p[i];
        sigma(i, i) = q[i];
        expect += std::sqrt(p[i] * q[i]);
    }
    EXPECT_NEAR(fidelity(DensityOperator(rho), DensityOperator(sigma)), expect, 1e-12);
}

TEST(Distances, DimensionMismatchThrows) {
    EXPECT_THROW((void)fidelity_pure(PureState::basis(2, 0), PureState::basis(3, 0)),
                 DimensionMismatch);
    EXPECT_THROW((void)trace_distance(PureState::basis(2, 0).projector(),
                                      PureState::basis(3, 0).projector()),
                 DimensionMismatch);
}

TEST(Rng, ForkedStreamsAreLabelledAndReproducible) {
    const SeedStream s(7);
    Rng a = s.fork("x");
    Rng b = s.fork("x");
    Rng c = s.fork("y");
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(SeedStream(8).derive("x"), s.derive("x"));
}

TEST(Rng, HaarUnitaryIsUnitary) {
    Rng rng(1);
    const Matrix u = haar_unitary(7, rng);
    EXPECT_TRUE(is_unitary(u, 1e-12));
    EXPECT_TRUE(is_hermitian(random_hermitian(4, rng), 1e-14));
}

} // namespace
} // namespace hiddenbasis
