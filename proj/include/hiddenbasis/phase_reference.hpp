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
 * @file phase_reference.hpp
 * Bounded phase references and the approximate Hadamard they drive.
 *
 * A reference of size t only ever occupies the span of the 1-number states
 * |w^(t)> = |0>^(t-w)|1>^w, w = 0..t, so it is stored as t + 1 amplitudes
 * and never as a 2^t vector.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hiddenbasis/hidden_basis.hpp"
#include "hiddenbasis/kernels.hpp"
#include "hiddenbasis/phase_invariant.hpp"

namespace hiddenbasis {

inline constexpr double kDefaultAlpha = 0.70710678118654752440;

/// Thrown when a circuit needs more Hadamard uses than the reference supports.
class ReferenceExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Which 1-number state the constant-modulus reference starts at.
enum class ReferenceStart { One, Zero };

class ReferenceState {
  public:
    /// Arbitrary profile over w = 0..t; `theta` is recorded when known.
    explicit ReferenceState(Vector c, std::optional<double> theta = std::nullopt,
                            int uses = 0, double tol = kExactTol);

    [[nodiscard]] int t() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const Vector &c() const noexcept { return c_; }
    [[nodiscard]] Complex operator[](int w) const { return c_(w); }
    [[nodiscard]] std::optional<double> theta() const noexcept { return theta_; }
    [[nodiscard]] int uses() const noexcept { return uses_; }
    [[nodiscard]] ReferenceState with_uses(int uses) const;

  private:
    Vector c_;
    std::optional<double> theta_;
    int uses_;
};

/// e^{i w theta}/sqrt(t) for w = 1..t (or 1/sqrt(t+1) from w = 0). Needs t >= 3.
[[nodiscard]] ReferenceState make_reference(double theta, int t,
                                            ReferenceStart start = ReferenceStart::One);
/// The trimmed reference after i fresh uses: support 1+i..t-i, equal moduli.
[[nodiscard]] ReferenceState reference_window(double theta, int t, int i);
[[nodiscard]] Complex reference_overlap(const ReferenceState &a, const ReferenceState &b);

/// Number state |w^(t)> with w uniform in 1..t.
struct SampledReference {
    ReferenceState state;
    int w = 0;
    std::pair<int, int> copies; ///< (t - w, w) copies of (|0>, |1>).
};
[[nodiscard]] SampledReference random_theta_reference(int t, Rng &rng);
/// (1/t) sum_{w=1..t} |w><w| as a (t+1) x (t+1) matrix.
[[nodiscard]] Matrix dephased_reference_density(int t);
/// Equal-weight quadrature over `points` angles of |Psi_theta><Psi_theta|.
[[nodiscard]] Matrix theta_averaged_reference(int t, int points,
                                              ReferenceStart start = ReferenceStart::One);

/// System of m logical qubits jointly with a size-t reference; amp[y*(t+1)+w].
class JointState {
  public:
    JointState(int m, int t, Vector amp, double tol = kChainTol);
    static JointState product(const LogicalState &system, const ReferenceState &ref);

    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] int t() const noexcept { return t_; }
    [[nodiscard]] const Vector &amplitudes() const noexcept { return amp_; }
    [[nodiscard]] Complex amplitude(Label y, int w) const {
        return amp_(static_cast<Index>(y) * (t_ + 1) + w);
    }
    [[nodiscard]] double norm() const { return amp_.norm(); }

    /// Reduced density of the system registers.
    [[nodiscard]] Matrix system_marginal() const;
    /// <phi|rho_system|phi> without forming the marginal.
    [[nodiscard]] double system_expectation(const Vector &phi) const;
    [[nodiscard]] Complex overlap(const JointState &other) const;
    /// 1-numbers w carrying squared weight above `tol`.
    [[nodiscard]] std::vector<int> number_support(double tol = 1e-24) const;

    void apply_G(int qubit, double alpha, kernels::Exec exec = kernels::Exec::Parallel);
    /// Z S G S Z on `qubit`.
    void apply_H_theta(int qubit, double alpha, kernels::Exec exec = kernels::Exec::Parallel);
    void apply_phase(int qubit, Complex phase, kernels::Exec exec = kernels::Exec::Parallel);
    /// Dense k-qubit system gate, identity on the reference.
    void apply_system_gate(const std::vector<int> &qubits, const Matrix &u);

  private:
    int m_;
    int t_;
    Vector amp_;
};

[[nodiscard]] JointState apply_G(const JointState &joint, int qubit, double alpha = kDefaultAlpha);
[[nodiscard]] JointState apply_H_theta(const JointState &joint, int qubit,
                                       double alpha = kDefaultAlpha);

enum class GateKind { HTheta, S, T, Z, CZ, Custom };

struct GateSpec {
    GateKind kind = GateKind::S;
    std::vector<int> qubits;
    double alpha = kDefaultAlpha;
    Matrix custom; ///< Only for Custom: 2^k x 2^k over `qubits`.

    static GateSpec h_theta(int qubit, double alpha = kDefaultAlpha);
    static GateSpec s(int qubit);
    static GateSpec t(int qubit);
    static GateSpec z(int qubit);
    static GateSpec cz(int a, int b);
    /// Throws NotPhaseInvariant or InvariantViolation for a bad matrix.
    static GateSpec phase_invariant(std::vector<int> qubits, Matrix u);

    [[nodiscard]] std::string name() const;
};

/// [[alpha, beta e^{-i theta}], [beta e^{i theta}, -alpha]].
[[nodiscard]] Matrix h_theta_matrix(double theta, double alpha = kDefaultAlpha);
/// The exact logical matrix of a gate on its own qubits.
[[nodiscard]] Matrix gate_matrix(const GateSpec &g, double theta);
/// Applies a k-qubit matrix to a 2^m logical vector.
void apply_logical_gate(Vector &v, int m, const std::vector<int> &qubits, const Matrix &u);

struct FidelityReport {
    int t = 0;
    int l = 0;
    double theta = 0.0;
    std::vector<double> per_gate_overlap;
    std::vector<double> cumulative_overlap;
    double final_fidelity = 1.0;
    double bound_sqrt_1_minus_2l_over_t = 1.0;
};

struct RunOptions {
    kernels::Exec exec = kernels::Exec::Parallel;
    /// Per-gate overlaps on fresh windows; off saves one extra joint state per H.
    bool per_gate_overlaps = true;
};

struct CircuitRun {
    JointState joint;
    LogicalState ideal;
    FidelityReport report;
};

/**
 * Runs the gates with every H_theta drawing on the one shared reference, and
 * compares the system marginal with the exact logical circuit. Throws
 * ReferenceExhausted when 2l >= t.
 */
[[nodiscard]] CircuitRun run_circuit(const LogicalState &input, const std::vector<GateSpec> &gates,
                                     const ReferenceState &reference, RunOptions options = {});

struct MixedRun {
    Matrix output;
    Matrix ideal;
    double fidelity = 1.0;
};
/// Mixed input, through its eigen-decomposition; fidelity is Uhlmann's.
[[nodiscard]] MixedRun run_circuit_mixed(const DensityOperator &input,
                                         const std::vector<GateSpec> &gates,
                                         const ReferenceState &reference,
                                         RunOptions options = {});

struct ObservableOutcome {
    int w = 0;
    int k = 0;
    double eigenvalue = 0.0;
    double probability = 0.0;
};

struct ObservableDistribution {
    std::vector<ObservableOutcome> outcomes;
    /// Probabilities merged over eigenvalues equal within `tol`, ascending.
    [[nodiscard]] std::vector<std::pair<double, double>> by_value(double tol = 1e-9) const;
};

/**
 * Diagonalizes each block M_w = V_w D_w V_w^dagger, rotates by the phase-invariant
 * (+)_w V_w^dagger and reads the hidden computational basis. Throws
 * InvariantViolation for a non-Hermitian M.
 */
[[nodiscard]] ObservableDistribution measure_phase_invariant_observable(
    const LogicalState &psi, const WeightBlockOperator &m);
[[nodiscard]] ObservableDistribution measure_phase_invariant_observable(
    const JointState &joint, const WeightBlockOperator &m);

} // namespace hiddenbasis
