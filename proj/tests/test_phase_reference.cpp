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

#include "hiddenbasis/phase_reference.hpp"

namespace hiddenbasis {
namespace {

constexpr Complex kI(0.0, 1.0);

// Register-level controlled-root-SWAP on t + 1 qubits (register 0 most
// significant): the root-SWAP-like map acts on registers 0 and j exactly when
// registers 0..j-1 hold 0 and j..t hold 1, or registers 1..j hold 0 and 0,
// j+1..t hold 1.
Matrix register_level_U(int t, double alpha) {
    const int R = t + 1;
    const Index dim = Index{1} << R;
    const double beta = std::sqrt(1.0 - alpha * alpha);
    auto bit = [R](Label x, int reg) { return static_cast<int>((x >> (R - 1 - reg)) & 1U); };
    Matrix u = Matrix::Zero(dim, dim);
    for (Label x = 0; x < static_cast<Label>(dim); ++x) {
        int hit = -1;
        for (int j = 1; j <= t && hit < 0; ++j) {
            bool first = true, second = true;
            for (int r = 0; r < R; ++r) {
                const int b = bit(x, r);
                first = first && (r < j ? b == 0 : b == 1);
                second = second && ((r >= 1 && r <= j) ? b == 0 : b == 1);
            }
            if (first || second) {
                hit = j;
            }
        }
        if (hit < 0) {
            u(static_cast<Index>(x), static_cast<Index>(x)) = 1.0;
            continue;
        }
        const Label flipped = x ^ (Label{1} << (R - 1)) ^ (Label{1} << (R - 1 - hit));
        u(static_cast<Index>(x), static_cast<Index>(x)) = alpha;
        u(static_cast<Index>(flipped), static_cast<Index>(x)) = kI * beta;
    }
    return u;
}

Vector to_registers(const JointState &j) {
    const int t = j.t();
    Vector out = Vector::Zero(Index{1} << (t + 1));
    for (Label y = 0; y < 2; ++y) {
        for (int w = 0; w <= t; ++w) {
            out(static_cast<Index>((y << t) | ((Label{1} << w) - 1))) = j.amplitude(y, w);
        }
    }
    return out;
}

TEST(ControlledRootSwap, StructuredEngineMatchesRegisterLevelOperator) {
    Rng rng(51);
    for (double alpha : {kDefaultAlpha, 0.3}) {
        const int t = 4;
        const Matrix u = register_level_U(t, alpha);
        ASSERT_TRUE(is_unitary(u, 1e-13));
        for (int trial = 0; trial < 5; ++trial) {
            const LogicalState phi = LogicalState::random(1, rng);
            const ReferenceState ref(random_unit_vector(t + 1, rng));
            JointState joint = JointState::product(phi, ref);
            const Vector expect = u * to_registers(joint);
            joint.apply_G(0, alpha, kernels::Exec::Serial);
            EXPECT_LT((to_registers(joint) - expect).norm(), 1e-13);
        }
    }
}

TEST(Gates, HThetaIsZSGSZ) {
    for (double theta : {0.0, 0.4, 2.9}) {
        for (double alpha : {kDefaultAlpha, 0.2}) {
            const double beta = std::sqrt(1.0 - alpha * alpha);
            Matrix g(2, 2);
            g << alpha, kI * beta * std::polar(1.0, -theta), kI * beta * std::polar(1.0, theta), alpha;
            Matrix z = Matrix::Identity(2, 2), s = Matrix::Identity(2, 2);
            z(1, 1) = -1.0;
            s(1, 1) = kI;
            EXPECT_LT(max_abs_entry(z * s * g * s * z - h_theta_matrix(theta, alpha)), 1e-15);
        }
    }
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    EXPECT_LT(max_abs_entry(h_theta_matrix(0.0) - h / std::sqrt(2.0)), 1e-15);
}

TEST(Gates, PhaseInvariantFactoryValidates) {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    EXPECT_THROW((void)GateSpec::phase_invariant({0}, h / std::sqrt(2.0)), NotPhaseInvariant);
    Matrix bad = Matrix::Identity(2, 2) * 2.0;
    EXPECT_THROW((void)GateSpec::phase_invariant({0}, bad), InvariantViolation);
    EXPECT_EQ(GateSpec::cz(0, 1).name(), "CZ");
}

// Oracle: the k-qubit gate embedded by explicit Kronecker products.
TEST(Gates, ApplyLogicalGateMatchesKron) {
    Rng rng(52);
    const Matrix u = haar_unitary(2, rng);
    Vector v = LogicalState::random(3, rng).amplitudes();
    const Vector expect = kron(kron(Matrix(Matrix::Identity(2, 2)), u), Matrix(Matrix::Identity(2, 2))) * v;
    apply_logical_gate(v, 3, {1}, u);
    EXPECT_LT((v - expect).norm(), 1e-14);

    const Matrix cz = gate_matrix(GateSpec::cz(0, 2), 0.0);
    Vector w = LogicalState::random(3, rng).amplitudes();
    Vector expect_cz = w;
    for (Label y = 0; y < 8; ++y) {
        if (label_bit(y, 3, 0) && label_bit(y, 3, 2)) {
            expect_cz(static_cast<Index>(y)) *= -1.0;
        }
    }
    apply_logical_gate(w, 3, {0, 2}, cz);
    EXPECT_LT((w - expect_cz).norm(), 1e-15);
}

TEST(Reference, MakeAndWindow) {
    const ReferenceState r = make_reference(0.5, 10);
    EXPECT_NEAR(r.c().norm(), 1.0, 1e-14);
    EXPECT_EQ(r[0], Complex(0.0));
    EXPECT_LT(std::abs(r[3] - std::polar(1.0 / std::sqrt(10.0), 1.5)), 1e-15);
    const ReferenceState z = make_reference(0.5, 10, ReferenceStart::Zero);
    EXPECT_NEAR(std::abs(z[0]), 1.0 / std::sqrt(11.0), 1e-15);
    const ReferenceState win = reference_window(0.5, 10, 2);
    EXPECT_EQ(win[2], Complex(0.0));
    EXPECT_NEAR(std::abs(win[3]), 1.0 / std::sqrt(6.0), 1e-15);
    EXPECT_EQ(win[9], Complex(0.0));
    EXPECT_NEAR(std::abs(reference_overlap(reference_window(0.5, 10, 0), r)), 1.0, 1e-14);
    EXPECT_THROW((void)make_reference(0.0, 2), std::invalid_argument);
    EXPECT_THROW((void)reference_window(0.0, 10, 5), ReferenceExhausted);
}

TEST(Reference, QuadratureEqualsDephasedDensity) {
    const Matrix avg = theta_averaged_reference(6, 256);
    EXPECT_LT(max_abs_entry(avg - dephased_reference_density(6)), 1e-6);
    // Fewer points than the largest number difference alias off-diagonals.
    EXPECT_GT(max_abs_entry(theta_averaged_reference(6, 3) - dephased_reference_density(6)), 0.1);
}

TEST(Reference, RandomThetaReferenceIsNumberState) {
    Rng rng(53);
    std::vector<int> counts(9, 0);
    for (int i = 0; i < 4000; ++i) {
        const SampledReference s = random_theta_reference(8, rng);
        ASSERT_GE(s.w, 1);
        ASSERT_LE(s.w, 8);
        EXPECT_NEAR(std::abs(s.state[s.w]), 1.0, 1e-15);
        EXPECT_EQ(s.copies, std::make_pair(8 - s.w, s.w));
        ++counts[s.w];
    }
    for (int w = 1; w <= 8; ++w) {
        EXPECT_NEAR(counts[w], 500.0, 3.0 * std::sqrt(4000 * 0.125 * 0.875));
    }
}

// Independent per-use computation on the structured engine: G|phi> against a
// window shrinking by one on each side.
TEST(Degradation, PerGateOverlapIsTelescopingFactor) {
    Rng rng(54);
    for (int t = 3; t <= 32; ++t) {
        for (int i = 0; i <= 8 && t - 2 * (i + 1) >= 1; ++i) {
            const double theta = 0.37 * t;
            const LogicalState phi = LogicalState::random(1, rng);
            JointState joint = JointState::product(phi, reference_window(theta, t, i));
            joint.apply_H_theta(0, kDefaultAlpha);
            Vector ideal = phi.amplitudes();
            apply_logical_gate(ideal, 1, {0}, h_theta_matrix(theta));
            const JointState target = JointState::product(LogicalState(1, ideal, 1e-12),
                                                          reference_window(theta, t, i + 1));
            const double expect = std::sqrt((t - 2.0 * (i + 1)) / (t - 2.0 * i));
            EXPECT_NEAR(std::abs(target.overlap(joint)), expect, 1e-9) << "t=" << t << " i=" << i;
        }
    }
}

TEST(Degradation, RunCircuitReportsFactorsAndMeetsBound) {
    const std::vector<std::pair<int, int>> grid{{200, 1}, {20, 4}, {50, 10}, {100, 30}, {1000, 100}};
    for (auto [t, l] : grid) {
        std::vector<GateSpec> gates;
        for (int k = 0; k < l; ++k) {
            gates.push_back(GateSpec::h_theta(0));
            gates.push_back(GateSpec::s(0));
        }
        const CircuitRun run = run_circuit(LogicalState::basis(1, 0), gates, make_reference(1.3, t));
        ASSERT_EQ(run.report.per_gate_overlap.size(), static_cast<std::size_t>(l));
        for (int k = 0; k < l; ++k) {
            EXPECT_NEAR(run.report.per_gate_overlap[k], std::sqrt((t - 2.0 * (k + 1)) / (t - 2.0 * k)),
                        1e-9);
        }
        EXPECT_NEAR(run.report.cumulative_overlap.back(), std::sqrt((t - 2.0 * l) / t), 1e-9);
        EXPECT_GE(run.report.final_fidelity, std::sqrt(1.0 - 2.0 * l / t) - 1e-12)
            << "t=" << t << " l=" << l;
    }
    const CircuitRun one = run_circuit(LogicalState::basis(1, 0), {GateSpec::h_theta(0)},
                                       make_reference(0.0, 200));
    EXPECT_GE(one.report.final_fidelity, 0.99499);
}

TEST(Degradation, MultiQubitCircuitAndExecModesAgree) {
    Rng rng(55);
    const LogicalState in = LogicalState::random(3, rng);
    const std::vector<GateSpec> gates{GateSpec::h_theta(0), GateSpec::cz(0, 1), GateSpec::t(2),
                                      GateSpec::h_theta(2), GateSpec::z(1), GateSpec::h_theta(1)};
    RunOptions serial{kernels::Exec::Serial, true};
    RunOptions parallel{kernels::Exec::Parallel, true};
    const CircuitRun a = run_circuit(in, gates, make_reference(0.8, 60), serial);
    const CircuitRun b = run_circuit(in, gates, make_reference(0.8, 60), parallel);
    EXPECT_TRUE(a.joint.amplitudes() == b.joint.amplitudes());
    EXPECT_GE(a.report.final_fidelity, std::sqrt(1.0 - 6.0 / 60.0) - 1e-12);
    EXPECT_NEAR(a.joint.norm(), 1.0, 1e-12);
    EXPECT_NEAR(a.joint.system_marginal().trace().real(), 1.0, 1e-12);
}

TEST(Degradation, PhaseInvariantGatesLeaveReferenceAlone) {
    Rng rng(56);
    const LogicalState in = LogicalState::random(2, rng);
    const Matrix u = WeightBlockOperator::random_unitary(2, rng).to_dense();
    const CircuitRun run = run_circuit(in, {GateSpec::phase_invariant({0, 1}, u), GateSpec::s(1)},
                                       make_reference(0.2, 10));
    EXPECT_NEAR(run.report.final_fidelity, 1.0, 1e-12);
}

TEST(Degradation, ExhaustionIsReported) {
    std::vector<GateSpec> gates(5, GateSpec::h_theta(0));
    EXPECT_THROW((void)run_circuit(LogicalState::basis(1, 0), gates, make_reference(0.0, 10)),
                 ReferenceExhausted);
    EXPECT_NO_THROW((void)run_circuit(LogicalState::basis(1, 0), gates, make_reference(0.0, 11)));
    EXPECT_THROW((void)run_circuit(LogicalState::basis(1, 0), {GateSpec::h_theta(0)},
                                   make_reference(0.0, 11).with_uses(5)),
                 ReferenceExhausted);
}

TEST(Degradation, LargeReferenceStaysStructured) {
    std::vector<GateSpec> gates(100, GateSpec::h_theta(0));
    RunOptions fast;
    fast.per_gate_overlaps = false;
    const CircuitRun run =
        run_circuit(LogicalState::basis(1, 1), gates, make_reference(2.0, 100000), fast);
    EXPECT_GE(run.report.final_fidelity, std::sqrt(1.0 - 200.0 / 100000.0) - 1e-12);
}

TEST(JointState, NumberSupportAndMarginal) {
    const JointState j = JointState::product(LogicalState::basis(1, 0), make_reference(0.0, 5));
    EXPECT_EQ(j.number_support(), (std::vector<int>{1, 2, 3, 4, 5}));
    const JointState g = apply_G(j, 0);
    // G conserves total 1-number: system bit plus reference w.
    EXPECT_EQ(g.amplitude(1, 5), Complex(0.0));
    EXPECT_NEAR(g.system_marginal().trace().real(), 1.0, 1e-14);
    EXPECT_THROW((JointState{1, 5, Vector::Zero(12)}), InvariantViolation);
}

TEST(MixedRun, PureInputMatchesPureRun) {
    Rng rng(57);
    const LogicalState psi = LogicalState::random(2, rng);
    const std::vector<GateSpec> gates{GateSpec::h_theta(1), GateSpec::cz(0, 1)};
    const ReferenceState ref = make_reference(0.6, 30);
    const MixedRun mixed = run_circuit_mixed(psi.as_pure().projector(), gates, ref);
    const CircuitRun pure = run_circuit(psi, gates, ref);
    EXPECT_NEAR(mixed.fidelity, pure.report.final_fidelity, 1e-6);
    EXPECT_LT(max_abs_entry(mixed.output - pure.joint.system_marginal()), 1e-12);
}

TEST(MixedRun, MixedInputMeetsBound) {
    Rng rng(58);
    const DensityOperator rho(random_density(4, rng));
    const std::vector<GateSpec> gates{GateSpec::h_theta(0), GateSpec::h_theta(1)};
    const MixedRun run = run_circuit_mixed(rho, gates, make_reference(0.1, 40));
    EXPECT_GE(run.fidelity, std::sqrt(1.0 - 4.0 / 40.0) - 1e-9);
}

TEST(Observable, DistributionMatchesBornRule) {
    Rng rng(59);
    const int n = 3;
    std::vector<Matrix> blocks;
    for (int w = 0; w <= n; ++w) {
        blocks.push_back(random_hermitian(static_cast<Index>(binomial(n, w)), rng));
    }
    const WeightBlockOperator m(n, blocks);
    const LogicalState psi = LogicalState::random(n, rng);
    const ObservableDistribution dist = measure_phase_invariant_observable(psi, m);
    double total = 0.0, mean = 0.0;
    for (const auto &o : dist.outcomes) {
        total += o.probability;
        mean += o.probability * o.eigenvalue;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    const Vector a = psi.amplitudes();
    EXPECT_NEAR(mean, a.dot(m.to_dense() * a).real(), 1e-12);
    double merged = 0.0;
    for (const auto &[value, p] : dist.by_value()) {
        merged += p;
    }
    EXPECT_NEAR(merged, 1.0, 1e-12);

    blocks[1](0, 1) += 0.5;
    EXPECT_THROW((void)measure_phase_invariant_observable(psi, WeightBlockOperator(n, blocks)),
                 InvariantViolation);
}

TEST(Observable, JointStateUsesSystemMarginal) {
    const JointState j = apply_H_theta(
        JointState::product(LogicalState::basis(1, 0), make_reference(0.0, 50)), 0);
    std::vector<Matrix> blocks{Matrix::Identity(1, 1), -Matrix::Identity(1, 1)};
    const ObservableDistribution d =
        measure_phase_invariant_observable(j, WeightBlockOperator(1, blocks));
    const Matrix rho = j.system_marginal();
    double mean = 0.0;
    for (const auto &o : d.outcomes) {
        mean += o.probability * o.eigenvalue;
    }
    EXPECT_NEAR(mean, (rho(0, 0) - rho(1, 1)).real(), 1e-12);
}

} // namespace
} // namespace hiddenbasis
