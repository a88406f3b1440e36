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
 * @file phase_invariant.hpp
 * Operators and states that commute with the global relative phase shift
 * U(theta), and how to realize them without copies of the hidden basis
 * (unitaries) or with at most n copies of each basis state (states).
 */
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hiddenbasis/hidden_basis.hpp"
#include "hiddenbasis/kernels.hpp"

namespace hiddenbasis {

/// True iff |T_{y,z}| <= tol whenever H(y) != H(z). Throws on a non 2^n x 2^n matrix.
[[nodiscard]] bool is_phase_invariant(const Matrix &t, double tol = kExactTol);

/**
 * Physical realization V' on S^n of a phase-invariant logical unitary V.
 *
 * Each physical sector of weight w splits into d0^(n-w) d1^w copies of the
 * logical weight-w block (one per choice of B_0 and B_1 labels), and V' acts
 * as V_w on every copy. With the contiguous B_0/B_1 layout these sectors
 * cover the whole physical space.
 */
class LiftedUnitary {
  public:
    LiftedUnitary(WeightBlockOperator v, const HiddenBasisSpec &spec);

    [[nodiscard]] const WeightBlockOperator &logical() const noexcept { return v_; }
    [[nodiscard]] Index physical_dim() const noexcept { return plan_.physical_dim(); }

    [[nodiscard]] PureState apply(const PureState &psi,
                                  kernels::Exec exec = kernels::Exec::Parallel) const;
    [[nodiscard]] Vector apply(const Vector &v,
                               kernels::Exec exec = kernels::Exec::Parallel) const;
    /// Dense matrix; throws std::length_error above kDenseDimCap.
    [[nodiscard]] UnitaryMatrix dense() const;

  private:
    WeightBlockOperator v_;
    kernels::LiftPlan plan_;
};

/// Throws InvariantViolation if any block of V is not unitary.
[[nodiscard]] LiftedUnitary lift_unitary(const WeightBlockOperator &v,
                                         const HiddenBasisSpec &spec);

/// One controlled step of the preparation circuit for a fixed prefix.
struct PrepStep {
    int j = 0;          ///< Register acted on, 1-based.
    Label prefix = 0;   ///< Outcomes x_1..x_{j-1}.
    int remaining = 0;  ///< Ones still to place, w - H(prefix).
    double sqrt_p0 = 1.0;
    double sqrt_p1 = 0.0;
    bool reachable = true; ///< False when the prefix has zero probability.
};

/**
 * Preparation circuit U_1, ..., U_n for a weight-w logical state, started from
 * the 1-number state |0>^(n-w)|1>^w. Step U_j rotates, for each prefix x,
 * |x>|0>|d^(n-j)> into sqrt(p_{0|x})|x>|0>|d^(n-j)> + sqrt(p_{1|x})|x>|1>|(d-1)^(n-j)>.
 * A final diagonal operator imprints the target phases.
 */
class PrepCircuit {
  public:
    PrepCircuit(int n, int w, std::vector<std::vector<PrepStep>> steps,
                std::vector<double> phases);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int w() const noexcept { return w_; }
    [[nodiscard]] const std::vector<std::vector<PrepStep>> &steps() const noexcept {
        return steps_;
    }
    /// arg(eta) per weight_basis(n, w) label.
    [[nodiscard]] const std::vector<double> &phases() const noexcept { return phases_; }

    /// |0>^(n-w)|1>^w.
    [[nodiscard]] Label initial_label() const noexcept;
    /// Copies of (|0>, |1>) consumed by the initial product state.
    [[nodiscard]] std::pair<int, int> copies() const noexcept { return {n_ - w_, w_}; }
    /// Step for prefix x at register j, if recorded.
    [[nodiscard]] const PrepStep *find_step(int j, Label prefix) const;

    /// Applies the circuit (steps then phases) in place to a 2^n vector.
    void apply(Vector &v) const;
    void apply_inverse(Vector &v) const;
    /// Runs the circuit on its initial state.
    [[nodiscard]] LogicalState run() const;
    /// The circuit as a logical unitary (identity outside weight w).
    [[nodiscard]] WeightBlockOperator as_operator() const;

  private:
    int n_;
    int w_;
    std::vector<std::vector<PrepStep>> steps_;
    std::vector<double> phases_;
};

/**
 * Builds the circuit that prepares eta, given over weight_basis(n, w).
 * Conditional probabilities follow p_{x_j|x} = p_{x x_j} / p_x with
 * p_x = sum of |eta_y|^2 over y with prefix x.
 */
[[nodiscard]] PrepCircuit prepare_weight_state(const Vector &eta, int n, int w);

/// Normalized uniform superposition of the weight-w labels.
[[nodiscard]] LogicalState symmetric_state(int n, int w);
/// Coefficients of symmetric_state(n, w) over weight_basis(n, w).
[[nodiscard]] Vector symmetric_coefficients(int n, int w);

/// Restricts a full logical vector to weight_basis(n, w) coordinates.
[[nodiscard]] Vector weight_coordinates(const Vector &v, int n, int w);

/// Sampled phase-invariant preparation.
struct PreparedSample {
    int w = 0;
    int eigen_index = 0;
    PrepCircuit circuit;
    LogicalState state;
    std::pair<int, int> copies;
};

/**
 * Samples pure components of a phase-invariant density: each block is
 * eigendecomposed once, and component (w, k) is drawn with probability equal
 * to its eigenvalue.
 */
class PhaseInvariantSampler {
  public:
    explicit PhaseInvariantSampler(const WeightBlockDensity &rho);

    struct Component {
        int w = 0;
        int k = 0;
        double probability = 0.0;
        Vector eigenvector; ///< Over weight_basis(n, w).
    };

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] const std::vector<Component> &components() const noexcept {
        return components_;
    }
    [[nodiscard]] PreparedSample sample(Rng &rng) const;
    /// Sum of p |v><v| over the components, as a dense logical matrix.
    [[nodiscard]] Matrix ensemble_density() const;

  private:
    int n_;
    std::vector<Component> components_;
    std::vector<double> cumulative_;
};

[[nodiscard]] PreparedSample prepare_phase_invariant_density(const WeightBlockDensity &rho,
                                                             Rng &rng);

/// Weight-block part of a dense logical matrix (the uniform average over theta of U rho U^dagger).
[[nodiscard]] WeightBlockOperator dephase(const Matrix &rho);

} // namespace hiddenbasis
