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
 * @file weights.hpp
 * Hamming-weight bookkeeping for hidden-basis labels.
 *
 * A label y in {0,1}^n is stored as an integer whose most significant of the
 * n bits is y_1 (the leftmost register), so numeric order is lexicographic
 * order of the strings.
 */
#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace hiddenbasis {

using Label = std::uint64_t;

/// Largest logical register count accepted by the dense logical types.
inline constexpr int kMaxLogicalQubits = 24;

[[nodiscard]] inline int hamming_weight(Label y) noexcept { return std::popcount(y); }

/// Bit of register `k` (0 = leftmost) in an n-register label.
[[nodiscard]] inline int label_bit(Label y, int n, int k) noexcept {
    return static_cast<int>((y >> (n - 1 - k)) & 1U);
}

[[nodiscard]] std::string label_string(Label y, int n);
[[nodiscard]] Label parse_label(const std::string &bits);

/// C(n, k) as a double; exact for the ranges used here.
[[nodiscard]] double binomial(int n, int k);

/// Label of a weight-w string together with its rank within weight_basis(n, w).
struct WeightLabel {
    int n = 0;
    int w = 0;
    int rank = 0; ///< 0-based position in lexicographic order.
    Label bits = 0;
};

/// All C(n, w) weight-w strings in lexicographic order. Throws on w outside [0, n].
[[nodiscard]] std::vector<WeightLabel> weight_basis(int n, int w);

/// Per-n lookup between flat labels and (weight, rank) coordinates.
class WeightIndex {
  public:
    explicit WeightIndex(int n);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return rank_.size(); }
    [[nodiscard]] const std::vector<Label> &labels(int w) const { return by_weight_.at(w); }
    [[nodiscard]] int block_size(int w) const {
        return static_cast<int>(by_weight_.at(w).size());
    }
    [[nodiscard]] int rank(Label y) const { return rank_.at(y); }

  private:
    int n_;
    std::vector<std::vector<Label>> by_weight_;
    std::vector<int> rank_;
};

void check_register_count(int n, const char *where);

} // namespace hiddenbasis
