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

#include <cstdint>
#include <random>
#include <string_view>

#include "hiddenbasis/core.hpp"

namespace hiddenbasis {

using Rng = std::mt19937_64;

/**
 * Root of a run's randomness. Each consumer forks its own engine from a
 * label, so adding a consumer never shifts another consumer's draws.
 */
class SeedStream {
  public:
    explicit SeedStream(std::uint64_t seed) : seed_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t derive(std::string_view label) const noexcept;
    [[nodiscard]] Rng fork(std::string_view label) const { return Rng(derive(label)); }

  private:
    std::uint64_t seed_;
};

/// Vector with i.i.d. standard complex Gaussian entries.
[[nodiscard]] Vector gaussian_vector(Index dim, Rng &rng);
/// Haar-random unit vector.
[[nodiscard]] Vector random_unit_vector(Index dim, Rng &rng);
/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
[[nodiscard]] Matrix haar_unitary(Index dim, Rng &rng);
/// Random Hermitian matrix with Gaussian entries.
[[nodiscard]] Matrix random_hermitian(Index dim, Rng &rng);
/// Random full-rank density matrix (Wishart-style).
[[nodiscard]] Matrix random_density(Index dim, Rng &rng);

} // namespace hiddenbasis
