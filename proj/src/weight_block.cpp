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

#include "hiddenbasis/weight_block.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hiddenbasis {

std::string label_string(Label y, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
        if (label_bit(y, n, k) != 0) {
            s[static_cast<std::size_t>(k)] = '1';
        }
    }
    return s;
}

Label parse_label(const std::string &bits) {
    if (bits.size() > static_cast<std::size_t>(kMaxLogicalQubits)) {
        throw std::invalid_argument("parse_label: label too long");
    }
    Label y = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("parse_label: label must be a 0/1 string");
        }
        y = (y << 1U) | static_cast<Label>(c == '1');
    }
    return y;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(n - k + 1.0)));
}

void check_register_count(int n, const char *where) {
    if (n < 0 || n > kMaxLogicalQubits) {
        throw std::invalid_argument(std::string(where) + ": register count " +
                                    std::to_string(n) + " outside [0, " +
                                    std::to_string(kMaxLogicalQubits) + "]");
    }
}

std::vector<WeightLabel> weight_basis(int n, int w) {
    check_register_count(n, "weight_basis");
    if (w < 0 || w > n) {
        throw std::out_of_range("weight_basis: weight " + std::to_string(w) +
                                " outside [0, " + std::to_string(n) + "]");
    }
    std::vector<WeightLabel> out;
    const Label dim = Label{1} << n;
    for (Label y = 0; y < dim; ++y) {
        if (hamming_weight(y) == w) {
            out.push_back({n, w, static_cast<int>(out.size()), y});
        }
    }
    return out;
}

WeightIndex::WeightIndex(int n) : n_(n), by_weight_(static_cast<std::size_t>(n) + 1) {
    check_register_count(n, "WeightIndex");
    const Label dim = Label{1} << n;
    rank_.resize(dim);
    for (Label y = 0; y < dim; ++y) {
        auto &list = by_weight_[static_cast<std::size_t>(hamming_weight(y))];
        rank_[y] = static_cast<int>(list.size());
        list.push_back(y);
    }
}

// --- WeightBlockOperator ---------------------------------------------------

WeightBlockOperator::WeightBlockOperator(int n, std::vector<Matrix> blocks)
    : n_(n), blocks_(std::move(blocks)) {
    check_register_count(n, "WeightBlockOperator");
    if (blocks_.size() != static_cast<std::size_t>(n) + 1) {
        throw DimensionMismatch("WeightBlockOperator: expected " + std::to_string(n + 1) +
                                " blocks, got " + std::to_string(blocks_.size()));
    }
    for (int w = 0; w <= n; ++w) {
        const auto size = static_cast<Index>(binomial(n, w));
        const Matrix &b = blocks_[static_cast<std::size_t>(w)];
        if (b.rows() != size || b.cols() != size) {
            throw DimensionMismatch("WeightBlockOperator: block " + std::to_string(w) +
                                    " must be " + std::to_string(size) + "x" +
                                    std::to_string(size));
        }
    }
}

WeightBlockOperator WeightBlockOperator::identity(int n) {
    std::vector<Matrix> blocks;
    for (int w = 0; w <= n; ++w) {
        const auto size = static_cast<Index>(binomial(n, w));
        blocks.push_back(Matrix::Identity(size, size));
    }
    return WeightBlockOperator(n, std::move(blocks));
}

WeightBlockOperator WeightBlockOperator::from_dense(const Matrix &t, double tol) {
    const Index dim = t.rows();
    if (t.cols() != dim || dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionMismatch("WeightBlockOperator::from_dense: matrix must be 2^n x 2^n");
    }
    const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
    const WeightIndex index(n);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            if (hamming_weight(static_cast<Label>(r)) != hamming_weight(static_cast<Label>(c)) &&
                std::abs(t(r, c)) > tol) {
                throw NotPhaseInvariant("matrix couples different Hamming weights at (" +
                                        std::to_string(r) + ", " + std::to_string(c) + ")");
            }
        }
    }
    std::vector<Matrix> blocks;
    for (int w = 0; w <= n; ++w) {
        const auto &labels = index.labels(w);
        const auto size = static_cast<Index>(labels.size());
        Matrix b(size, size);
        for (Index i = 0; i < size; ++i) {
            for (Index j = 0; j < size; ++j) {
                b(i, j) = t(static_cast<Index>(labels[static_cast<std::size_t>(i)]),
                            static_cast<Index>(labels[static_cast<std::size_t>(j)]));
            }
        }
        blocks.push_back(std::move(b));
    }
    return WeightBlockOperator(n, std::move(blocks));
}

WeightBlockOperator WeightBlockOperator::random_unitary(int n, Rng &rng) {
    std::vector<Matrix> blocks;
    for (int w = 0; w <= n; ++w) {
        blocks.push_back(haar_unitary(static_cast<Index>(binomial(n, w)), rng));
    }
    return WeightBlockOperator(n, std::move(blocks));
}

Matrix WeightBlockOperator::to_dense() const {
    const WeightIndex index(n_);
    const auto dim = static_cast<Index>(index.dim());
    Matrix out = Matrix::Zero(dim, dim);
    for (int w = 0; w <= n_; ++w) {
        const auto &labels = index.labels(w);
        const Matrix &b = blocks_[static_cast<std::size_t>(w)];
        for (std::size_t i = 0; i < labels.size(); ++i) {
            for (std::size_t j = 0; j < labels.size(); ++j) {
                out(static_cast<Index>(labels[i]), static_cast<Index>(labels[j])) =
                    b(static_cast<Index>(i), static_cast<Index>(j));
            }
        }
    }
    return out;
}

Vector WeightBlockOperator::apply(const Vector &v) const {
    const WeightIndex index(n_);
    if (v.size() != static_cast<Index>(index.dim())) {
        throw DimensionMismatch("WeightBlockOperator::apply: vector length mismatch");
    }
    Vector out(v.size());
    for (int w = 0; w <= n_; ++w) {
        const auto &labels = index.labels(w);
        Vector x(static_cast<Index>(labels.size()));
        for (std::size_t i = 0; i < labels.size(); ++i) {
            x(static_cast<Index>(i)) = v(static_cast<Index>(labels[i]));
        }
        const Vector y = blocks_[static_cast<std::size_t>(w)] * x;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            out(static_cast<Index>(labels[i])) = y(static_cast<Index>(i));
        }
    }
    return out;
}

WeightBlockOperator WeightBlockOperator::adjoint() const {
    std::vector<Matrix> blocks;
    for (const auto &b : blocks_) {
        blocks.push_back(b.adjoint());
    }
    return WeightBlockOperator(n_, std::move(blocks));
}

bool WeightBlockOperator::is_unitary(double tol) const {
    for (const auto &b : blocks_) {
        if (!hiddenbasis::is_unitary(b, tol)) {
            return false;
        }
    }
    return true;
}

bool WeightBlockOperator::is_hermitian(double tol) const {
    for (const auto &b : blocks_) {
        if (!hiddenbasis::is_hermitian(b, tol)) {
            return false;
        }
    }
    return true;
}

WeightBlockOperator operator*(const WeightBlockOperator &a, const WeightBlockOperator &b) {
    if (a.n() != b.n()) {
        throw DimensionMismatch("WeightBlockOperator product: register counts differ");
    }
    std::vector<Matrix> blocks;
    for (int w = 0; w <= a.n(); ++w) {
        blocks.push_back(a.block(w) * b.block(w));
    }
    return WeightBlockOperator(a.n(), std::move(blocks));
}

// --- WeightBlockDensity ----------------------------------------------------

WeightBlockDensity::WeightBlockDensity(WeightBlockOperator op, double tol)
    : op_(std::move(op)) {
    Complex total = 0.0;
    for (int w = 0; w <= op_.n(); ++w) {
        const Matrix &b = op_.block(w);
        if (!hiddenbasis::is_hermitian(b, tol)) {
            throw InvariantViolation("WeightBlockDensity: block " + std::to_string(w) +
                                     " is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol) {
            throw InvariantViolation("WeightBlockDensity: block " + std::to_string(w) +
                                     " has a negative eigenvalue");
        }
        total += b.trace();
    }
    if (std::abs(total - Complex(1.0)) > tol) {
        throw InvariantViolation("WeightBlockDensity: total trace is not 1");
    }
}

double WeightBlockDensity::block_trace(int w) const { return op_.block(w).trace().real(); }

} // namespace hiddenbasis
