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
 * @file hidden_basis.hpp
 * The hidden basis {|0>, |1>} inside a physical qudit S = S_0 (+) S_1, and the
 * logical states written over it.
 *
 * Physical layout of one qudit of dimension d = d0 + d1: the basis B_0 of S_0
 * occupies indices 0..d0-1 and B_1 occupies d0..d-1. Multi-qudit indices are
 * base-d numbers with the leftmost qudit most significant.
 */
#pragma once

#include <cstdint>

#include "hiddenbasis/core.hpp"
#include "hiddenbasis/rng.hpp"
#include "hiddenbasis/weight_block.hpp"
#include "hiddenbasis/weights.hpp"

namespace hiddenbasis {

/**
 * Classical description of the hidden basis: |0> = sum_i alpha_i |a_i> in S_0
 * and |1> = sum_j beta_j |b_j> in S_1. This is the private-key material.
 */
class HiddenBasisSpec {
  public:
    HiddenBasisSpec(Vector alpha, Vector beta);

    /// Seeded spec with Haar-random alpha and beta.
    static HiddenBasisSpec random(int d0, int d1, Rng &rng);
    /// The qubit case d0 = d1 = 1 with alpha = beta = (1).
    static HiddenBasisSpec qubit();

    [[nodiscard]] int d0() const noexcept { return static_cast<int>(alpha_.size()); }
    [[nodiscard]] int d1() const noexcept { return static_cast<int>(beta_.size()); }
    [[nodiscard]] int d() const noexcept { return d0() + d1(); }
    [[nodiscard]] const Vector &alpha() const noexcept { return alpha_; }
    [[nodiscard]] const Vector &beta() const noexcept { return beta_; }

    /// Physical vector of |0> (bit = 0) or |1> (bit = 1) in C^d.
    [[nodiscard]] Vector physical(int bit) const;
    /// d^n, throwing if it does not fit the index type.
    [[nodiscard]] Index physical_dim(int n) const;

  private:
    Vector alpha_;
    Vector beta_;
};

/// Unit vector over hidden-basis labels y in {0,1}^n (lexicographic).
class LogicalState {
  public:
    LogicalState(int n, Vector amplitudes, double tol = kExactTol);

    static LogicalState basis(int n, Label y);
    static LogicalState normalized(int n, const Vector &v);
    static LogicalState random(int n, Rng &rng);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] const Vector &amplitudes() const noexcept { return amp_; }
    [[nodiscard]] Index dim() const noexcept { return amp_.size(); }
    [[nodiscard]] Complex operator[](Label y) const { return amp_(static_cast<Index>(y)); }
    [[nodiscard]] PureState as_pure() const { return PureState(amp_, kChainTol); }

  private:
    int n_;
    Vector amp_;
};

/// Physical state sum_y psi_y |y_1>...|y_n> in the (d0+d1)^n qudit space.
[[nodiscard]] PureState embed(const HiddenBasisSpec &spec, const LogicalState &psi);

/// Diagonal operator U(theta): |y> -> e^{i H(y) theta} |y>.
[[nodiscard]] WeightBlockOperator phase_shift(double theta, int n);

} // namespace hiddenbasis
