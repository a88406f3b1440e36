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

#include "hiddenbasis/phase_reference.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include <Eigen/Eigenvalues>

namespace hiddenbasis {

namespace {

constexpr Complex kI(0.0, 1.0);

void check_t(int t, const char *where) {
    if (t < 3) {
        throw std::invalid_argument(std::string(where) +
                                    ": reference size t must be at least 3, got " +
                                    std::to_string(t));
    }
}

void check_qubits(const std::vector<int> &qubits, int m, const char *where) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= m) {
            throw std::out_of_range(std::string(where) + ": qubit " +
                                    std::to_string(qubits[i]) + " outside 0.." +
                                    std::to_string(m - 1));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument(std::string(where) + ": repeated qubit");
            }
        }
    }
}

// u acts on `qubits` (first listed most significant); each system label y
// with those bits cleared anchors one 2^k group, repeated for every slot of
// the stride.
void apply_local(Vector &amp, int m, Index stride, const std::vector<int> &qubits,
                 const Matrix &u) {
    const auto k = static_cast<int>(qubits.size());
    const Index sub = Index{1} << k;
    if (u.rows() != sub || u.cols() != sub) {
        throw DimensionMismatch("gate matrix does not match its qubit count");
    }
    std::vector<Label> offs(static_cast<std::size_t>(sub), 0);
    Label mask = 0;
    for (Index s = 0; s < sub; ++s) {
        Label off = 0;
        for (int i = 0; i < k; ++i) {
            if ((s >> (k - 1 - i)) & 1) {
                off |= Label{1} << (m - 1 - qubits[static_cast<std::size_t>(i)]);
            }
        }
        offs[static_cast<std::size_t>(s)] = off;
        mask |= off;
    }
    Vector x(sub);
    Vector y(sub);
    const Label systems = Label{1} << m;
    for (Label base = 0; base < systems; ++base) {
        if ((base & mask) != 0) {
            continue;
        }
        for (Index slot = 0; slot < stride; ++slot) {
            for (Index s = 0; s < sub; ++s) {
                x(s) = amp(static_cast<Index>(base | offs[static_cast<std::size_t>(s)]) * stride +
                           slot);
            }
            y.noalias() = u * x;
            for (Index s = 0; s < sub; ++s) {
                amp(static_cast<Index>(base | offs[static_cast<std::size_t>(s)]) * stride + slot) =
                    y(s);
            }
        }
    }
}

Matrix diag2(Complex a, Complex b) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}

} // namespace

// --- ReferenceState --------------------------------------------------------

ReferenceState::ReferenceState(Vector c, std::optional<double> theta, int uses, double tol)
    : c_(std::move(c)), theta_(theta), uses_(uses) {
    if (c_.size() < 2) {
        throw DimensionMismatch("ReferenceState: need amplitudes for w = 0..t with t >= 1");
    }
    if (std::abs(c_.norm() - 1.0) > tol) {
        throw InvariantViolation("ReferenceState: amplitudes must have unit norm");
    }
    if (uses_ < 0) {
        throw std::invalid_argument("ReferenceState: negative use count");
    }
}

ReferenceState ReferenceState::with_uses(int uses) const {
    return ReferenceState(c_, theta_, uses, kChainTol);
}

ReferenceState make_reference(double theta, int t, ReferenceStart start) {
    check_t(t, "make_reference");
    const int first = start == ReferenceStart::One ? 1 : 0;
    const double amp = 1.0 / std::sqrt(static_cast<double>(t - first + 1));
    Vector c = Vector::Zero(t + 1);
    for (int w = first; w <= t; ++w) {
        c(w) = amp * std::polar(1.0, w * theta);
    }
    return ReferenceState(std::move(c), theta);
}

ReferenceState reference_window(double theta, int t, int i) {
    if (i < 0 || t - 2 * i < 1) {
        throw ReferenceExhausted("reference_window: no support left after " +
                                 std::to_string(i) + " uses of a size-" + std::to_string(t) +
                                 " reference");
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(t - 2 * i));
    Vector c = Vector::Zero(t + 1);
    for (int w = 1 + i; w <= t - i; ++w) {
        c(w) = amp * std::polar(1.0, w * theta);
    }
    return ReferenceState(std::move(c), theta, i);
}

Complex reference_overlap(const ReferenceState &a, const ReferenceState &b) {
    if (a.t() != b.t()) {
        throw DimensionMismatch("reference_overlap: sizes differ");
    }
    return a.c().dot(b.c());
}

SampledReference random_theta_reference(int t, Rng &rng) {
    check_t(t, "random_theta_reference");
    std::uniform_int_distribution<int> pick(1, t);
    const int w = pick(rng);
    Vector c = Vector::Zero(t + 1);
    c(w) = 1.0;
    return SampledReference{ReferenceState(std::move(c)), w, {t - w, w}};
}

Matrix dephased_reference_density(int t) {
    check_t(t, "dephased_reference_density");
    Matrix rho = Matrix::Zero(t + 1, t + 1);
    for (int w = 1; w <= t; ++w) {
        rho(w, w) = 1.0 / t;
    }
    return rho;
}

Matrix theta_averaged_reference(int t, int points, ReferenceStart start) {
    if (points < 1) {
        throw std::invalid_argument("theta_averaged_reference: need at least one point");
    }
    Matrix acc = Matrix::Zero(t + 1, t + 1);
    for (int k = 0; k < points; ++k) {
        const double theta = 2.0 * kPi * k / points;
        const Vector c = make_reference(theta, t, start).c();
        acc += c * c.adjoint();
    }
    return acc / static_cast<double>(points);
}

// --- JointState ------------------------------------------------------------

JointState::JointState(int m, int t, Vector amp, double tol) : m_(m), t_(t), amp_(std::move(amp)) {
    check_register_count(m, "JointState");
    if (m < 1 || t < 1) {
        throw std::invalid_argument("JointState: need m >= 1 and t >= 1");
    }
    if (amp_.size() != (Index{1} << m) * (t + 1)) {
        throw DimensionMismatch("JointState: expected 2^m (t + 1) amplitudes");
    }
    if (std::abs(amp_.norm() - 1.0) > tol) {
        throw InvariantViolation("JointState: amplitudes must have unit norm");
    }
}

JointState JointState::product(const LogicalState &system, const ReferenceState &ref) {
    const Index stride = ref.t() + 1;
    Vector amp(system.dim() * stride);
    for (Index y = 0; y < system.dim(); ++y) {
        amp.segment(y * stride, stride) = system.amplitudes()(y) * ref.c();
    }
    return JointState(system.n(), ref.t(), std::move(amp));
}

Matrix JointState::system_marginal() const {
    const Index stride = t_ + 1;
    const Index systems = Index{1} << m_;
    const Eigen::Map<const Matrix> b(amp_.data(), stride, systems);
    return b.transpose() * b.conjugate();
}

double JointState::system_expectation(const Vector &phi) const {
    const Index stride = t_ + 1;
    const Index systems = Index{1} << m_;
    if (phi.size() != systems) {
        throw DimensionMismatch("system_expectation: vector length mismatch");
    }
    const Eigen::Map<const Matrix> b(amp_.data(), stride, systems);
    // Component w of b * conj(phi) is sum_y amp(y, w) conj(phi_y).
    return (b * phi.conjugate()).squaredNorm();
}

Complex JointState::overlap(const JointState &other) const {
    if (other.m_ != m_ || other.t_ != t_) {
        throw DimensionMismatch("JointState::overlap: shapes differ");
    }
    return amp_.dot(other.amp_);
}

std::vector<int> JointState::number_support(double tol) const {
    const Index stride = t_ + 1;
    std::vector<int> out;
    for (int w = 0; w <= t_; ++w) {
        double mass = 0.0;
        for (Index y = 0; y < (Index{1} << m_); ++y) {
            mass += std::norm(amp_(y * stride + w));
        }
        if (mass > tol) {
            out.push_back(w);
        }
    }
    return out;
}

void JointState::apply_G(int qubit, double alpha, kernels::Exec exec) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("apply_G: alpha must lie in [0, 1]");
    }
    const std::span<Complex> a(amp_.data(), static_cast<std::size_t>(amp_.size()));
    if (exec == kernels::Exec::Parallel) {
        kernels::root_swap_parallel(a, m_, t_, qubit, alpha);
    } else {
        kernels::root_swap_serial(a, m_, t_, qubit, alpha);
    }
}

void JointState::apply_phase(int qubit, Complex phase, kernels::Exec exec) {
    const std::span<Complex> a(amp_.data(), static_cast<std::size_t>(amp_.size()));
    if (exec == kernels::Exec::Parallel) {
        kernels::qubit_phase_parallel(a, m_, t_, qubit, phase);
    } else {
        kernels::qubit_phase_serial(a, m_, t_, qubit, phase);
    }
}

void JointState::apply_H_theta(int qubit, double alpha, kernels::Exec exec) {
    // Z and S commute, so the outer Z S pairs fuse into one phase of -i.
    apply_phase(qubit, -kI, exec);
    apply_G(qubit, alpha, exec);
    apply_phase(qubit, -kI, exec);
}

void JointState::apply_system_gate(const std::vector<int> &qubits, const Matrix &u) {
    check_qubits(qubits, m_, "apply_system_gate");
    apply_local(amp_, m_, t_ + 1, qubits, u);
}

JointState apply_G(const JointState &joint, int qubit, double alpha) {
    JointState out = joint;
    out.apply_G(qubit, alpha);
    return out;
}

JointState apply_H_theta(const JointState &joint, int qubit, double alpha) {
    JointState out = joint;
    out.apply_H_theta(qubit, alpha);
    return out;
}

// --- Gates -----------------------------------------------------------------

GateSpec GateSpec::h_theta(int qubit, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("GateSpec::h_theta: alpha must lie in [0, 1]");
    }
    GateSpec g;
    g.kind = GateKind::HTheta;
    g.qubits = {qubit};
    g.alpha = alpha;
    return g;
}

GateSpec GateSpec::s(int qubit) { return GateSpec{GateKind::S, {qubit}, kDefaultAlpha, {}}; }
GateSpec GateSpec::t(int qubit) { return GateSpec{GateKind::T, {qubit}, kDefaultAlpha, {}}; }
GateSpec GateSpec::z(int qubit) { return GateSpec{GateKind::Z, {qubit}, kDefaultAlpha, {}}; }
GateSpec GateSpec::cz(int a, int b) { return GateSpec{GateKind::CZ, {a, b}, kDefaultAlpha, {}}; }

GateSpec GateSpec::phase_invariant(std::vector<int> qubits, Matrix u) {
    const Index sub = Index{1} << qubits.size();
    if (u.rows() != sub || u.cols() != sub) {
        throw DimensionMismatch("GateSpec::phase_invariant: matrix must be 2^k x 2^k");
    }
    if (!is_phase_invariant(u, kExactTol)) {
        throw NotPhaseInvariant("GateSpec::phase_invariant: gate mixes Hamming weights");
    }
    if (!is_unitary(u, kExactTol)) {
        throw InvariantViolation("GateSpec::phase_invariant: gate is not unitary");
    }
    return GateSpec{GateKind::Custom, std::move(qubits), kDefaultAlpha, std::move(u)};
}

std::string GateSpec::name() const {
    switch (kind) {
    case GateKind::HTheta: return "H_theta";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::Z: return "Z";
    case GateKind::CZ: return "CZ";
    case GateKind::Custom: return "custom";
    }
    return "?";
}

Matrix h_theta_matrix(double theta, double alpha) {
    const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    Matrix h(2, 2);
    h(0, 0) = alpha;
    h(0, 1) = beta * std::polar(1.0, -theta);
    h(1, 0) = beta * std::polar(1.0, theta);
    h(1, 1) = -alpha;
    return h;
}

Matrix gate_matrix(const GateSpec &g, double theta) {
    switch (g.kind) {
    case GateKind::HTheta: return h_theta_matrix(theta, g.alpha);
    case GateKind::S: return diag2(1.0, kI);
    case GateKind::T: return diag2(1.0, std::polar(1.0, kPi / 4));
    case GateKind::Z: return diag2(1.0, -1.0);
    case GateKind::CZ: {
        Matrix cz = Matrix::Identity(4, 4);
        cz(3, 3) = -1.0;
        return cz;
    }
    case GateKind::Custom: return g.custom;
    }
    throw std::logic_error("gate_matrix: unknown gate kind");
}

void apply_logical_gate(Vector &v, int m, const std::vector<int> &qubits, const Matrix &u) {
    if (v.size() != (Index{1} << m)) {
        throw DimensionMismatch("apply_logical_gate: vector length mismatch");
    }
    check_qubits(qubits, m, "apply_logical_gate");
    apply_local(v, m, 1, qubits, u);
}

// --- Circuits --------------------------------------------------------------

namespace {

void apply_joint_gate(JointState &joint, const GateSpec &g, kernels::Exec exec) {
    switch (g.kind) {
    case GateKind::HTheta: joint.apply_H_theta(g.qubits.at(0), g.alpha, exec); return;
    case GateKind::S: joint.apply_phase(g.qubits.at(0), kI, exec); return;
    case GateKind::T: joint.apply_phase(g.qubits.at(0), std::polar(1.0, kPi / 4), exec); return;
    case GateKind::Z: joint.apply_phase(g.qubits.at(0), -1.0, exec); return;
    case GateKind::CZ:
    case GateKind::Custom: joint.apply_system_gate(g.qubits, gate_matrix(g, 0.0)); return;
    }
}

int count_hadamards(const std::vector<GateSpec> &gates) {
    return static_cast<int>(std::count_if(gates.begin(), gates.end(), [](const GateSpec &g) {
        return g.kind == GateKind::HTheta;
    }));
}

} // namespace

CircuitRun run_circuit(const LogicalState &input, const std::vector<GateSpec> &gates,
                       const ReferenceState &reference, RunOptions options) {
    const int m = input.n();
    const int t = reference.t();
    const int l = count_hadamards(gates);
    if (2 * (reference.uses() + l) >= t) {
        throw ReferenceExhausted("run_circuit: " + std::to_string(l) +
                                 " Hadamard uses need t > " +
                                 std::to_string(2 * (reference.uses() + l)) + ", got t = " +
                                 std::to_string(t));
    }
    for (const auto &g : gates) {
        check_qubits(g.qubits, m, "run_circuit");
    }
    const double theta = reference.theta().value_or(0.0);

    FidelityReport report;
    report.t = t;
    report.l = l;
    report.theta = theta;
    report.bound_sqrt_1_minus_2l_over_t = std::sqrt(1.0 - 2.0 * l / t);

    JointState joint = JointState::product(input, reference);
    Vector ideal = input.amplitudes();
    // The windows share one phase profile; only support and scale change.
    Vector phases;
    if (options.per_gate_overlaps && l > 0) {
        phases.resize(t + 1);
        for (int w = 0; w <= t; ++w) {
            phases(w) = std::polar(1.0, w * theta);
        }
    }
    auto window = [&](int i) {
        if (t - 2 * i < 1) {
            return reference_window(theta, t, i);
        }
        Vector c = Vector::Zero(t + 1);
        const int len = t - 2 * i;
        c.segment(1 + i, len) = phases.segment(1 + i, len) / std::sqrt(static_cast<double>(len));
        return ReferenceState(std::move(c), theta, i);
    };
    int used = reference.uses();
    double cumulative = 1.0;
    for (const auto &g : gates) {
        const Matrix u = gate_matrix(g, theta);
        if (g.kind == GateKind::HTheta && options.per_gate_overlaps) {
            // Fresh-window overlap for this use: ideal system state against the
            // trimmed reference before and after.
            const LogicalState before(m, ideal, kChainTol);
            JointState fresh = JointState::product(before, window(used));
            fresh.apply_H_theta(g.qubits[0], g.alpha, options.exec);
            Vector after = ideal;
            apply_logical_gate(after, m, g.qubits, u);
            const JointState target = JointState::product(LogicalState(m, after, kChainTol),
                                                          window(used + 1));
            const double ov = std::abs(target.overlap(fresh));
            cumulative *= ov;
            report.per_gate_overlap.push_back(ov);
            report.cumulative_overlap.push_back(cumulative);
        }
        apply_joint_gate(joint, g, options.exec);
        apply_logical_gate(ideal, m, g.qubits, u);
        if (g.kind == GateKind::HTheta) {
            ++used;
        }
    }
    report.final_fidelity = std::sqrt(std::max(0.0, joint.system_expectation(ideal)));
    return CircuitRun{std::move(joint), LogicalState(m, std::move(ideal), kChainTol),
                      std::move(report)};
}

MixedRun run_circuit_mixed(const DensityOperator &input, const std::vector<GateSpec> &gates,
                           const ReferenceState &reference, RunOptions options) {
    const Index dim = input.dim();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionMismatch("run_circuit_mixed: input must be 2^m x 2^m");
    }
    const int m = std::countr_zero(static_cast<std::uint64_t>(dim));
    options.per_gate_overlaps = false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(input.matrix());
    MixedRun out;
    out.output = Matrix::Zero(dim, dim);
    out.ideal = Matrix::Zero(dim, dim);
    for (Index k = 0; k < dim; ++k) {
        const double p = es.eigenvalues()(k);
        if (p <= 1e-15) {
            continue;
        }
        const Vector v = es.eigenvectors().col(k).normalized();
        const CircuitRun run = run_circuit(LogicalState(m, v, kChainTol), gates, reference, options);
        out.output += p * run.joint.system_marginal();
        out.ideal += p * run.ideal.amplitudes() * run.ideal.amplitudes().adjoint();
    }
    out.fidelity = fidelity(DensityOperator(out.output, kChainTol),
                            DensityOperator(out.ideal, kChainTol));
    return out;
}

// --- Observables -----------------------------------------------------------

std::vector<std::pair<double, double>> ObservableDistribution::by_value(double tol) const {
    std::vector<ObservableOutcome> sorted = outcomes;
    std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
        return a.eigenvalue < b.eigenvalue;
    });
    std::vector<std::pair<double, double>> merged;
    for (const auto &o : sorted) {
        if (!merged.empty() && std::abs(o.eigenvalue - merged.back().first) <= tol) {
            merged.back().second += o.probability;
        } else {
            merged.emplace_back(o.eigenvalue, o.probability);
        }
    }
    return merged;
}

namespace {

// Accumulates |V_w^dagger x|^2 per block for every slot of a state with the
// given stride (1 for a bare logical state).
ObservableDistribution measure_blocks(const Vector &amp, int n, Index stride,
                                      const WeightBlockOperator &m) {
    if (m.n() != n) {
        throw DimensionMismatch("measure_phase_invariant_observable: register count mismatch");
    }
    if (!m.is_hermitian(kExactTol)) {
        throw InvariantViolation("measure_phase_invariant_observable: observable is not Hermitian");
    }
    const WeightIndex index(n);
    ObservableDistribution dist;
    for (int w = 0; w <= n; ++w) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m.block(w));
        const auto &labels = index.labels(w);
        const auto size = static_cast<Index>(labels.size());
        Eigen::VectorXd probs = Eigen::VectorXd::Zero(size);
        Vector x(size);
        for (Index slot = 0; slot < stride; ++slot) {
            for (Index i = 0; i < size; ++i) {
                x(i) = amp(static_cast<Index>(labels[static_cast<std::size_t>(i)]) * stride + slot);
            }
            probs += (es.eigenvectors().adjoint() * x).cwiseAbs2();
        }
        for (Index k = 0; k < size; ++k) {
            dist.outcomes.push_back({w, static_cast<int>(k), es.eigenvalues()(k), probs(k)});
        }
    }
    return dist;
}

} // namespace

ObservableDistribution measure_phase_invariant_observable(const LogicalState &psi,
                                                          const WeightBlockOperator &m) {
    return measure_blocks(psi.amplitudes(), psi.n(), 1, m);
}

ObservableDistribution measure_phase_invariant_observable(const JointState &joint,
                                                          const WeightBlockOperator &m) {
    return measure_blocks(joint.amplitudes(), joint.m(), joint.t() + 1, m);
}

} // namespace hiddenbasis
