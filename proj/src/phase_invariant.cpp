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

#include "hiddenbasis/phase_invariant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hiddenbasis {

bool is_phase_invariant(const Matrix &t, double tol) {
    const Index dim = t.rows();
    if (t.cols() != dim || dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionMismatch("is_phase_invariant: matrix must be 2^n x 2^n");
    }
    for (Index c = 0; c < dim; ++c) {
        const int wc = hamming_weight(static_cast<Label>(c));
        for (Index r = 0; r < dim; ++r) {
            if (hamming_weight(static_cast<Label>(r)) != wc && std::abs(t(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

// --- LiftedUnitary ---------------------------------------------------------

LiftedUnitary::LiftedUnitary(WeightBlockOperator v, const HiddenBasisSpec &spec)
    : v_(std::move(v)), plan_(v_.n(), spec.d0(), spec.d1()) {
    for (int w = 0; w <= v_.n(); ++w) {
        if (!is_unitary(v_.block(w), kExactTol)) {
            throw InvariantViolation("lift_unitary: block " + std::to_string(w) +
                                     " is not unitary");
        }
    }
}

Vector LiftedUnitary::apply(const Vector &v, kernels::Exec exec) const {
    if (v.size() != plan_.physical_dim()) {
        throw DimensionMismatch("LiftedUnitary::apply: vector length mismatch");
    }
    Vector out = Vector::Zero(v.size());
    const std::span<const Complex> in(v.data(), static_cast<std::size_t>(v.size()));
    const std::span<Complex> dst(out.data(), static_cast<std::size_t>(out.size()));
    if (exec == kernels::Exec::Parallel) {
        kernels::lift_apply_parallel(plan_, v_.blocks(), in, dst);
    } else {
        kernels::lift_apply_serial(plan_, v_.blocks(), in, dst);
    }
    return out;
}

PureState LiftedUnitary::apply(const PureState &psi, kernels::Exec exec) const {
    return PureState(apply(psi.amplitudes(), exec), kChainTol);
}

UnitaryMatrix LiftedUnitary::dense() const {
    const Index dim = plan_.physical_dim();
    if (dim > kDenseDimCap) {
        throw std::length_error("LiftedUnitary::dense: dimension " + std::to_string(dim) +
                                " exceeds the dense cap " + std::to_string(kDenseDimCap));
    }
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto &s : plan_.sectors()) {
        const Matrix &block = v_.block(s.w);
        std::vector<Index> phys(s.patterns.size());
        for (Index inner = 0; inner < s.inner_count; ++inner) {
            plan_.physical_indices(s, inner, phys);
            for (std::size_t z = 0; z < phys.size(); ++z) {
                for (std::size_t k = 0; k < phys.size(); ++k) {
                    m(phys[k], phys[z]) = block(static_cast<Index>(k), static_cast<Index>(z));
                }
            }
        }
    }
    return UnitaryMatrix(std::move(m), kChainTol);
}

LiftedUnitary lift_unitary(const WeightBlockOperator &v, const HiddenBasisSpec &spec) {
    return LiftedUnitary(v, spec);
}

// --- PrepCircuit -----------------------------------------------------------

PrepCircuit::PrepCircuit(int n, int w, std::vector<std::vector<PrepStep>> steps,
                         std::vector<double> phases)
    : n_(n), w_(w), steps_(std::move(steps)), phases_(std::move(phases)) {
    check_register_count(n, "PrepCircuit");
    if (w < 0 || w > n) {
        throw std::out_of_range("PrepCircuit: weight out of range");
    }
    if (phases_.size() != static_cast<std::size_t>(binomial(n, w))) {
        throw DimensionMismatch("PrepCircuit: one phase per weight-w label expected");
    }
    for (const auto &layer : steps_) {
        for (const auto &s : layer) {
            const double p0 = s.sqrt_p0 * s.sqrt_p0;
            const double p1 = s.sqrt_p1 * s.sqrt_p1;
            if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > 1e-12) {
                throw InvariantViolation("PrepCircuit: conditional probabilities must sum to 1");
            }
        }
    }
}

Label PrepCircuit::initial_label() const noexcept { return (Label{1} << w_) - 1; }

const PrepStep *PrepCircuit::find_step(int j, Label prefix) const {
    if (j < 1 || j > static_cast<int>(steps_.size())) {
        return nullptr;
    }
    for (const auto &s : steps_[static_cast<std::size_t>(j - 1)]) {
        if (s.prefix == prefix) {
            return &s;
        }
    }
    return nullptr;
}

namespace {

// The two basis states a step rotates between, or nothing when the step is
// forced (no ones left, or only ones left).
bool step_pair(const PrepStep &s, int n, Index &i0, Index &i1) {
    const int m = n - s.j;
    if (s.remaining < 1 || s.remaining > m) {
        return false;
    }
    const Label base = s.prefix << (m + 1);
    i0 = static_cast<Index>(base | ((Label{1} << s.remaining) - 1));
    i1 = static_cast<Index>(base | (Label{1} << m) | ((Label{1} << (s.remaining - 1)) - 1));
    return true;
}

} // namespace

void PrepCircuit::apply(Vector &v) const {
    if (v.size() != (Index{1} << n_)) {
        throw DimensionMismatch("PrepCircuit::apply: vector length mismatch");
    }
    for (const auto &layer : steps_) {
        for (const auto &s : layer) {
            Index i0 = 0;
            Index i1 = 0;
            if (!step_pair(s, n_, i0, i1)) {
                continue;
            }
            const Complex a = v(i0);
            const Complex b = v(i1);
            v(i0) = s.sqrt_p0 * a - s.sqrt_p1 * b;
            v(i1) = s.sqrt_p1 * a + s.sqrt_p0 * b;
        }
    }
    const auto labels = weight_basis(n_, w_);
    for (const auto &l : labels) {
        v(static_cast<Index>(l.bits)) *= std::polar(1.0, phases_[static_cast<std::size_t>(l.rank)]);
    }
}

void PrepCircuit::apply_inverse(Vector &v) const {
    if (v.size() != (Index{1} << n_)) {
        throw DimensionMismatch("PrepCircuit::apply_inverse: vector length mismatch");
    }
    const auto labels = weight_basis(n_, w_);
    for (const auto &l : labels) {
        v(static_cast<Index>(l.bits)) *=
            std::polar(1.0, -phases_[static_cast<std::size_t>(l.rank)]);
    }
    for (auto layer = steps_.rbegin(); layer != steps_.rend(); ++layer) {
        for (auto s = layer->rbegin(); s != layer->rend(); ++s) {
            Index i0 = 0;
            Index i1 = 0;
            if (!step_pair(*s, n_, i0, i1)) {
                continue;
            }
            const Complex a = v(i0);
            const Complex b = v(i1);
            v(i0) = s->sqrt_p0 * a + s->sqrt_p1 * b;
            v(i1) = -s->sqrt_p1 * a + s->sqrt_p0 * b;
        }
    }
}

LogicalState PrepCircuit::run() const {
    Vector v = Vector::Zero(Index{1} << n_);
    v(static_cast<Index>(initial_label())) = 1.0;
    apply(v);
    return LogicalState(n_, std::move(v), kChainTol);
}

WeightBlockOperator PrepCircuit::as_operator() const {
    std::vector<Matrix> blocks;
    for (int w = 0; w <= n_; ++w) {
        const auto size = static_cast<Index>(binomial(n_, w));
        blocks.push_back(Matrix::Identity(size, size));
    }
    const auto labels = weight_basis(n_, w_);
    Matrix &block = blocks[static_cast<std::size_t>(w_)];
    for (const auto &l : labels) {
        Vector v = Vector::Zero(Index{1} << n_);
        v(static_cast<Index>(l.bits)) = 1.0;
        apply(v);
        block.col(l.rank) = weight_coordinates(v, n_, w_);
    }
    return WeightBlockOperator(n_, std::move(blocks));
}

PrepCircuit prepare_weight_state(const Vector &eta, int n, int w) {
    check_register_count(n, "prepare_weight_state");
    if (w < 0 || w > n) {
        throw std::out_of_range("prepare_weight_state: weight " + std::to_string(w) +
                                " outside [0, " + std::to_string(n) + "]");
    }
    const auto labels = weight_basis(n, w);
    if (eta.size() != static_cast<Index>(labels.size())) {
        throw DimensionMismatch("prepare_weight_state: eta must have C(n, w) entries");
    }
    const double norm = eta.norm();
    if (!(norm > 0.0)) {
        throw InvariantViolation("prepare_weight_state: eta has zero norm");
    }
    if (std::abs(norm - 1.0) > kExactTol) {
        throw InvariantViolation("prepare_weight_state: eta must have unit norm");
    }

    std::vector<double> phases(labels.size(), 0.0);
    // prefix_prob[len][x] = probability that the first len outcomes read x.
    std::vector<std::vector<double>> prefix_prob(static_cast<std::size_t>(n) + 1);
    prefix_prob[static_cast<std::size_t>(n)].assign(std::size_t{1} << n, 0.0);
    for (const auto &l : labels) {
        const Complex c = eta(l.rank);
        prefix_prob[static_cast<std::size_t>(n)][l.bits] = std::norm(c);
        phases[static_cast<std::size_t>(l.rank)] = std::abs(c) > 0.0 ? std::arg(c) : 0.0;
    }
    for (int len = n - 1; len >= 0; --len) {
        const auto &next = prefix_prob[static_cast<std::size_t>(len) + 1];
        auto &cur = prefix_prob[static_cast<std::size_t>(len)];
        cur.resize(std::size_t{1} << len);
        for (std::size_t x = 0; x < cur.size(); ++x) {
            cur[x] = next[2 * x] + next[2 * x + 1];
        }
    }

    std::vector<std::vector<PrepStep>> steps;
    if (w > 0 && w < n) {
        for (int j = 1; j <= n; ++j) {
            const int m = n - j;
            std::vector<PrepStep> layer;
            const auto &px = prefix_prob[static_cast<std::size_t>(j) - 1];
            const auto &pxx = prefix_prob[static_cast<std::size_t>(j)];
            for (Label x = 0; x < (Label{1} << (j - 1)); ++x) {
                const int d = w - hamming_weight(x);
                if (d < 0 || d > m + 1) {
                    continue; // no valid 1-number state follows this prefix
                }
                PrepStep s;
                s.j = j;
                s.prefix = x;
                s.remaining = d;
                const double p = px[x];
                s.reachable = p > 0.0;
                double p0 = 1.0;
                double p1 = 0.0;
                if (d == m + 1) {
                    p0 = 0.0;
                    p1 = 1.0;
                } else if (d > 0 && s.reachable) {
                    p0 = pxx[2 * x];
                    p1 = pxx[2 * x + 1];
                    const double total = p0 + p1;
                    p0 /= total;
                    p1 /= total;
                }
                s.sqrt_p0 = std::sqrt(p0);
                s.sqrt_p1 = std::sqrt(p1);
                layer.push_back(s);
            }
            steps.push_back(std::move(layer));
        }
    }
    return PrepCircuit(n, w, std::move(steps), std::move(phases));
}

Vector symmetric_coefficients(int n, int w) {
    const double c = binomial(n, w);
    if (w < 0 || w > n) {
        throw std::out_of_range("symmetric_state: weight out of range");
    }
    return Vector::Constant(static_cast<Index>(c), 1.0 / std::sqrt(c));
}

LogicalState symmetric_state(int n, int w) {
    check_register_count(n, "symmetric_state");
    const Vector c = symmetric_coefficients(n, w);
    Vector v = Vector::Zero(Index{1} << n);
    for (const auto &l : weight_basis(n, w)) {
        v(static_cast<Index>(l.bits)) = c(l.rank);
    }
    return LogicalState(n, std::move(v));
}

Vector weight_coordinates(const Vector &v, int n, int w) {
    if (v.size() != (Index{1} << n)) {
        throw DimensionMismatch("weight_coordinates: vector length mismatch");
    }
    const auto labels = weight_basis(n, w);
    Vector out(static_cast<Index>(labels.size()));
    for (const auto &l : labels) {
        out(l.rank) = v(static_cast<Index>(l.bits));
    }
    return out;
}

// --- Sampling --------------------------------------------------------------

PhaseInvariantSampler::PhaseInvariantSampler(const WeightBlockDensity &rho) : n_(rho.n()) {
    double running = 0.0;
    for (int w = 0; w <= n_; ++w) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho.op().block(w));
        for (Index k = 0; k < es.eigenvalues().size(); ++k) {
            const double p = es.eigenvalues()(k);
            if (p <= 0.0) {
                continue;
            }
            Vector v = es.eigenvectors().col(k);
            v /= v.norm();
            components_.push_back({w, static_cast<int>(k), p, std::move(v)});
            running += p;
            cumulative_.push_back(running);
        }
    }
    if (components_.empty()) {
        throw InvariantViolation("PhaseInvariantSampler: density has no positive weight");
    }
}

PreparedSample PhaseInvariantSampler::sample(Rng &rng) const {
    std::uniform_real_distribution<double> u(0.0, cumulative_.back());
    const double r = u(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    if (it == cumulative_.end()) {
        --it;
    }
    const auto &c = components_[static_cast<std::size_t>(it - cumulative_.begin())];
    PrepCircuit circuit = prepare_weight_state(c.eigenvector, n_, c.w);
    LogicalState state = circuit.run();
    const auto copies = circuit.copies();
    return PreparedSample{c.w, c.k, std::move(circuit), std::move(state), copies};
}

Matrix PhaseInvariantSampler::ensemble_density() const {
    const auto dim = Index{1} << n_;
    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto &c : components_) {
        Vector full = Vector::Zero(dim);
        for (const auto &l : weight_basis(n_, c.w)) {
            full(static_cast<Index>(l.bits)) = c.eigenvector(l.rank);
        }
        rho += c.probability * full * full.adjoint();
    }
    return rho;
}

PreparedSample prepare_phase_invariant_density(const WeightBlockDensity &rho, Rng &rng) {
    return PhaseInvariantSampler(rho).sample(rng);
}

WeightBlockOperator dephase(const Matrix &rho) {
    const Index dim = rho.rows();
    if (rho.cols() != dim || dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionMismatch("dephase: matrix must be 2^n x 2^n");
    }
    const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
    const WeightIndex index(n);
    std::vector<Matrix> blocks;
    for (int w = 0; w <= n; ++w) {
        const auto &labels = index.labels(w);
        const auto size = static_cast<Index>(labels.size());
        Matrix b(size, size);
        for (Index i = 0; i < size; ++i) {
            for (Index j = 0; j < size; ++j) {
                b(i, j) = rho(static_cast<Index>(labels[static_cast<std::size_t>(i)]),
                              static_cast<Index>(labels[static_cast<std::size_t>(j)]));
            }
        }
        blocks.push_back(std::move(b));
    }
    return WeightBlockOperator(n, std::move(blocks));
}

} // namespace hiddenbasis
