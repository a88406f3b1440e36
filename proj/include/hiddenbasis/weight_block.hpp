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
#pragma once

#include <vector>

#include "hiddenbasis/core.hpp"
#include "hiddenbasis/rng.hpp"
#include "hiddenbasis/weights.hpp"

namespace hiddenbasis {

class NotPhaseInvariant : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Logical operator stored as its diagonal blocks T_0, ..., T_n over the
 * Hamming-weight subspaces, each in weight_basis(n, w) order.
 */
class WeightBlockOperator {
  public:
    /// Throws DimensionMismatch unless block w is C(n,w) x C(n,w).
    WeightBlockOperator(int n, std::vector<Matrix> blocks);

    static WeightBlockOperator identity(int n);
    /// Extracts the blocks of a dense 2^n x 2^n matrix; throws NotPhaseInvariant
    /// if any entry between different weights exceeds `tol`.
    static WeightBlockOperator from_dense(const Matrix &t, double tol = kExactTol);
    /// Haar-random unitary in every block.
    static WeightBlockOperator random_unitary(int n, Rng &rng);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] const Matrix &block(int w) const { return blocks_.at(w); }
    [[nodiscard]] const std::vector<Matrix> &blocks() const noexcept { return blocks_; }

    [[nodiscard]] Matrix to_dense() const;
    /// Applies the operator to a logical amplitude vector of length 2^n.
    [[nodiscard]] Vector apply(const Vector &v) const;
    [[nodiscard]] WeightBlockOperator adjoint() const;
    [[nodiscard]] bool is_unitary(double tol = kExactTol) const;
    [[nodiscard]] bool is_hermitian(double tol = kExactTol) const;

    friend WeightBlockOperator operator*(const WeightBlockOperator &a,
                                         const WeightBlockOperator &b);

  private:
    int n_;
    std::vector<Matrix> blocks_;
};

/// Weight-block operator that is a valid density matrix: Hermitian PSD blocks, unit total trace.
class WeightBlockDensity {
  public:
    explicit WeightBlockDensity(WeightBlockOperator op, double tol = kExactTol);

    [[nodiscard]] const WeightBlockOperator &op() const noexcept { return op_; }
    [[nodiscard]] int n() const noexcept { return op_.n(); }
    [[nodiscard]] double block_trace(int w) const;

  private:
    WeightBlockOperator op_;
};

} // namespace hiddenbasis
