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

#include "hiddenbasis/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#ifdef HIDDENBASIS_HAVE_OPENMP
#include <omp.h>
#endif

namespace hiddenbasis::kernels {

namespace {

void check_joint(std::span<const Complex> amp, int m, int t, int qubit) {
    if (m < 1 || qubit < 0 || qubit >= m || t < 0) {
        throw std::invalid_argument("kernel: qubit index out of range");
    }
    const auto expect = (std::size_t{1} << m) * static_cast<std::size_t>(t + 1);
    if (amp.size() != expect) {
        throw DimensionMismatch("kernel: amplitude buffer has the wrong length");
    }
}

// One 2x2 block of the interaction: (|y0>|a>, |y1>|a-1>).
inline void root_swap_pair(Complex &u, Complex &v, double alpha, Complex ibeta) {
    const Complex nu = alpha * u + ibeta * v;
    const Complex nv = ibeta * u + alpha * v;
    u = nu;
    v = nv;
}

// Gathers one inner tuple of a sector, multiplies by the block, scatters back.
inline void lift_tuple(const LiftPlan &plan, const LiftPlan::Sector &s, const Matrix &block,
                       Index inner, std::span<const Complex> in, std::span<Complex> out,
                       std::vector<Index> &phys, Vector &x, Vector &y) {
    plan.physical_indices(s, inner, phys);
    const auto size = static_cast<Index>(phys.size());
    for (Index z = 0; z < size; ++z) {
        x(z) = in[static_cast<std::size_t>(phys[static_cast<std::size_t>(z)])];
    }
    y.noalias() = block * x;
    for (Index k = 0; k < size; ++k) {
        out[static_cast<std::size_t>(phys[static_cast<std::size_t>(k)])] = y(k);
    }
}

void check_lift(const LiftPlan &plan, const std::vector<Matrix> &blocks,
                std::span<const Complex> in, std::span<Complex> out) {
    if (blocks.size() != plan.sectors().size()) {
        throw DimensionMismatch("lift_apply: block count mismatch");
    }
    const auto dim = static_cast<std::size_t>(plan.physical_dim());
    if (in.size() != dim || out.size() != dim) {
        throw DimensionMismatch("lift_apply: buffer length mismatch");
    }
}

} // namespace

int max_threads() {
#ifdef HIDDENBASIS_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void root_swap_serial(std::span<Complex> amp, int m, int t, int qubit, double alpha) {
    check_joint(amp, m, t, qubit);
    const Complex ibeta(0.0, std::sqrt(std::max(0.0, 1.0 - alpha * alpha)));
    const std::size_t stride = static_cast<std::size_t>(t) + 1;
    const std::size_t mask = std::size_t{1} << (m - 1 - qubit);
    const std::size_t systems = std::size_t{1} << m;
    for (std::size_t y0 = 0; y0 < systems; ++y0) {
        if ((y0 & mask) != 0) {
            continue;
        }
        const std::size_t y1 = y0 | mask;
        for (std::size_t a = 1; a <= static_cast<std::size_t>(t); ++a) {
            root_swap_pair(amp[y0 * stride + a], amp[y1 * stride + a - 1], alpha, ibeta);
        }
    }
}

void root_swap_parallel(std::span<Complex> amp, int m, int t, int qubit, double alpha) {
    check_joint(amp, m, t, qubit);
    const Complex ibeta(0.0, std::sqrt(std::max(0.0, 1.0 - alpha * alpha)));
    const std::int64_t stride = static_cast<std::int64_t>(t) + 1;
    const std::int64_t half = std::int64_t{1} << (m - 1);
    const int low_bits = m - 1 - qubit;
    const std::int64_t low_mask = (std::int64_t{1} << low_bits) - 1;
    const std::int64_t total = half * t;
    Complex *data = amp.data();
    // Flattened over (pair, a); every pair of slots is touched by one iteration.
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const std::int64_t pair = idx / t;
        const std::int64_t a = idx % t + 1;
        const std::int64_t y0 = ((pair & ~low_mask) << 1) | (pair & low_mask);
        const std::int64_t y1 = y0 | (std::int64_t{1} << low_bits);
        root_swap_pair(data[y0 * stride + a], data[y1 * stride + a - 1], alpha, ibeta);
    }
}

void qubit_phase_serial(std::span<Complex> amp, int m, int t, int qubit, Complex phase) {
    check_joint(amp, m, t, qubit);
    const std::size_t stride = static_cast<std::size_t>(t) + 1;
    const std::size_t mask = std::size_t{1} << (m - 1 - qubit);
    const std::size_t systems = std::size_t{1} << m;
    for (std::size_t y = 0; y < systems; ++y) {
        if ((y & mask) == 0) {
            continue;
        }
        for (std::size_t w = 0; w < stride; ++w) {
            amp[y * stride + w] *= phase;
        }
    }
}

void qubit_phase_parallel(std::span<Complex> amp, int m, int t, int qubit, Complex phase) {
    check_joint(amp, m, t, qubit);
    const std::int64_t stride = static_cast<std::int64_t>(t) + 1;
    const std::int64_t mask = std::int64_t{1} << (m - 1 - qubit);
    const auto total = static_cast<std::int64_t>(amp.size());
    Complex *data = amp.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        if (((idx / stride) & mask) != 0) {
            data[idx] *= phase;
        }
    }
}

// --- LiftPlan --------------------------------------------------------------

LiftPlan::LiftPlan(int n, int d0, int d1) : n_(n), d0_(d0), d1_(d1) {
    check_register_count(n, "LiftPlan");
    if (d0 <= 0 || d1 <= 0) {
        throw std::invalid_argument("LiftPlan: d0 and d1 must be positive");
    }
    const Index d = d0 + d1;
    std::vector<Index> place(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        place[static_cast<std::size_t>(k)] = dim_;
        if (dim_ > std::numeric_limits<Index>::max() / d) {
            throw std::overflow_error("LiftPlan: physical dimension overflows");
        }
        dim_ *= d;
    }
    for (int w = 0; w <= n; ++w) {
        Sector s;
        s.w = w;
        s.inner_count = 1;
        for (int k = 0; k < n - w; ++k) {
            s.inner_count *= d0;
        }
        for (int k = 0; k < w; ++k) {
            s.inner_count *= d1;
        }
        for (const auto &label : weight_basis(n, w)) {
            std::vector<Index> zeros;
            std::vector<Index> ones;
            Index offset = 0;
            for (int k = 0; k < n; ++k) {
                if (label_bit(label.bits, n, k) != 0) {
                    ones.push_back(place[static_cast<std::size_t>(k)]);
                    offset += d0 * place[static_cast<std::size_t>(k)];
                } else {
                    zeros.push_back(place[static_cast<std::size_t>(k)]);
                }
            }
            s.patterns.push_back(label.bits);
            s.zero_places.push_back(std::move(zeros));
            s.one_places.push_back(std::move(ones));
            s.base_offset.push_back(offset);
        }
        sectors_.push_back(std::move(s));
    }
}

void LiftPlan::physical_indices(const Sector &s, Index inner, std::span<Index> out) const {
    // Decode the inner tuple: n-w digits base d0 followed by w digits base d1,
    // first label most significant.
    const int zeros = n_ - s.w;
    Index a_digits[kMaxLogicalQubits];
    Index b_digits[kMaxLogicalQubits];
    Index rest = inner;
    for (int l = s.w - 1; l >= 0; --l) {
        b_digits[l] = rest % d1_;
        rest /= d1_;
    }
    for (int l = zeros - 1; l >= 0; --l) {
        a_digits[l] = rest % d0_;
        rest /= d0_;
    }
    for (std::size_t z = 0; z < s.patterns.size(); ++z) {
        Index p = s.base_offset[z];
        const auto &zp = s.zero_places[z];
        const auto &op = s.one_places[z];
        for (int l = 0; l < zeros; ++l) {
            p += a_digits[l] * zp[static_cast<std::size_t>(l)];
        }
        for (int l = 0; l < s.w; ++l) {
            p += b_digits[l] * op[static_cast<std::size_t>(l)];
        }
        out[z] = p;
    }
}

void lift_apply_serial(const LiftPlan &plan, const std::vector<Matrix> &blocks,
                       std::span<const Complex> in, std::span<Complex> out) {
    check_lift(plan, blocks, in, out);
    for (const auto &s : plan.sectors()) {
        const auto size = s.patterns.size();
        std::vector<Index> phys(size);
        Vector x(static_cast<Index>(size));
        Vector y(static_cast<Index>(size));
        const Matrix &block = blocks[static_cast<std::size_t>(s.w)];
        for (Index inner = 0; inner < s.inner_count; ++inner) {
            lift_tuple(plan, s, block, inner, in, out, phys, x, y);
        }
    }
}

void lift_apply_parallel(const LiftPlan &plan, const std::vector<Matrix> &blocks,
                         std::span<const Complex> in, std::span<Complex> out) {
    check_lift(plan, blocks, in, out);
    for (const auto &s : plan.sectors()) {
        const auto size = s.patterns.size();
        const Matrix &block = blocks[static_cast<std::size_t>(s.w)];
        const Index count = s.inner_count;
#pragma omp parallel
        {
            std::vector<Index> phys(size);
            Vector x(static_cast<Index>(size));
            Vector y(static_cast<Index>(size));
#pragma omp for schedule(static)
            for (Index inner = 0; inner < count; ++inner) {
                lift_tuple(plan, s, block, inner, in, out, phys, x, y);
            }
        }
    }
}

} // namespace hiddenbasis::kernels
