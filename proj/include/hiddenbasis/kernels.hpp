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
 * @file kernels.hpp
 * Data-parallel inner loops. Every kernel has a serial reference and an
 * OpenMP variant; the two perform the same arithmetic per output element
 * (no reductions), so their results are bit-identical.
 *
 * Joint system/reference amplitudes use the layout amp[y * (t + 1) + w]
 * with y an m-bit system label (qubit 0 most significant) and w in 0..t the
 * 1-number of the reference.
 */
#pragma once

#include <span>
#include <vector>

#include "hiddenbasis/core.hpp"
#include "hiddenbasis/weights.hpp"

namespace hiddenbasis::kernels {

enum class Exec { Serial, Parallel };

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
[[nodiscard]] int max_threads();

/**
 * Controlled root-SWAP-like interaction between system qubit `qubit` and the
 * reference: |0>|a> -> alpha|0>|a> + i beta|1>|a-1> for a = 1..t and
 * |1>|b> -> i beta|0>|b+1> + alpha|1>|b> for b = 0..t-1, beta = sqrt(1-alpha^2).
 * |0>|0> and |1>|t> are left alone.
 */
void root_swap_serial(std::span<Complex> amp, int m, int t, int qubit, double alpha);
void root_swap_parallel(std::span<Complex> amp, int m, int t, int qubit, double alpha);

/// Multiplies every amplitude whose system bit `qubit` is 1 by `phase`.
void qubit_phase_serial(std::span<Complex> amp, int m, int t, int qubit, Complex phase);
void qubit_phase_parallel(std::span<Complex> amp, int m, int t, int qubit, Complex phase);

/**
 * Sector structure of the physical space S^n for a (d0, d1) layout. Sector w
 * holds the physical basis vectors whose digit pattern has weight w; inside it
 * a basis vector is (pattern rank, inner tuple) where the inner tuple lists the
 * B_0 labels then the B_1 labels left to right.
 */
class LiftPlan {
  public:
    LiftPlan(int n, int d0, int d1);

    struct Sector {
        int w = 0;
        std::vector<Label> patterns;
        Index inner_count = 0;
        /// Place values d^(n-1-k) of the zero (resp. one) positions, per pattern.
        std::vector<std::vector<Index>> zero_places;
        std::vector<std::vector<Index>> one_places;
        std::vector<Index> base_offset; ///< d0 * sum(one_places) per pattern.
    };

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int d0() const noexcept { return d0_; }
    [[nodiscard]] int d1() const noexcept { return d1_; }
    [[nodiscard]] Index physical_dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<Sector> &sectors() const noexcept { return sectors_; }

    /// Writes the physical index of every pattern for one inner tuple.
    void physical_indices(const Sector &s, Index inner, std::span<Index> out) const;

  private:
    int n_, d0_, d1_;
    Index dim_ = 1;
    std::vector<Sector> sectors_;
};

/// out = (direct sum over sectors of V_w (x) I) in.
void lift_apply_serial(const LiftPlan &plan, const std::vector<Matrix> &blocks,
                       std::span<const Complex> in, std::span<Complex> out);
void lift_apply_parallel(const LiftPlan &plan, const std::vector<Matrix> &blocks,
                         std::span<const Complex> in, std::span<Complex> out);

} // namespace hiddenbasis::kernels
