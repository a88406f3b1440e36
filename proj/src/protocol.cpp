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

#include "hiddenbasis/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace hiddenbasis {

namespace {

constexpr int kKernelQubits = 3;
constexpr Label kChannelBit = 0b100;
constexpr Label kKeptBit = 0b010;
constexpr Label kKeyBit = 0b001;

Label swap_kept_key(Label y) {
    const Label kept = (y & kKeptBit) >> 1;
    const Label key = y & kKeyBit;
    return (y & kChannelBit) | (key << 1) | kept;
}

// Bob's half of the kernel on (channel, kept, key) with `stride` trailing
// slots per system label: the message is the channel bit, "1" triggers Z on
// the kept qubit, then kept and key are SWAP-tested. Returns the unnormalized
// pass weight and fills the message weights.
double bob_pass(const Vector &amp, Index stride, double *p0 = nullptr, double *p1 = nullptr) {
    double pass = 0.0;
    double mass[2] = {0.0, 0.0};
    for (Label y = 0; y < 8; ++y) {
        const int b = (y & kChannelBit) != 0 ? 1 : 0;
        const Label ys = swap_kept_key(y);
        const double sy = (b == 1 && (y & kKeptBit) != 0) ? -1.0 : 1.0;
        const double ss = (b == 1 && (ys & kKeptBit) != 0) ? -1.0 : 1.0;
        for (Index w = 0; w < stride; ++w) {
            const Complex a = amp(static_cast<Index>(y) * stride + w);
            const Complex sym = 0.5 * (sy * a + ss * amp(static_cast<Index>(ys) * stride + w));
            pass += std::norm(sym);
            mass[b] += std::norm(a);
        }
    }
    if (p0 != nullptr) {
        *p0 = mass[0];
    }
    if (p1 != nullptr) {
        *p1 = mass[1];
    }
    return pass;
}

// |S_1^2> on (channel, kept) times |+> on the key register.
Vector kernel_system_state() {
    const PrepCircuit prep = prepare_weight_state(symmetric_coefficients(2, 1), 2, 1);
    const Vector s12 = prep.run().amplitudes();
    Vector key(2);
    key << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return kron(s12, key);
}

void eve_evolve(Vector &amp, int t, kernels::Exec exec) {
    const std::span<Complex> a(amp.data(), static_cast<std::size_t>(amp.size()));
    const Complex minus_i(0.0, -1.0);
    if (exec == kernels::Exec::Parallel) {
        kernels::qubit_phase_parallel(a, kKernelQubits, t, 0, minus_i);
        kernels::root_swap_parallel(a, kKernelQubits, t, 0, kDefaultAlpha);
        kernels::qubit_phase_parallel(a, kKernelQubits, t, 0, minus_i);
    } else {
        kernels::qubit_phase_serial(a, kKernelQubits, t, 0, minus_i);
        kernels::root_swap_serial(a, kKernelQubits, t, 0, kDefaultAlpha);
        kernels::qubit_phase_serial(a, kKernelQubits, t, 0, minus_i);
    }
}

Vector eve_initial(int r_prime) {
    const Vector sys = kernel_system_state();
    const Vector ref = eve_reference(r_prime).c();
    const Index stride = r_prime + 1;
    Vector amp(8 * stride);
    for (Index y = 0; y < 8; ++y) {
        amp.segment(y * stride, stride) = sys(y) * ref;
    }
    return amp;
}

void check_r_prime(int r_prime) {
    if (r_prime < 3) {
        throw std::invalid_argument("attacker reference too small: need r' >= 3, got " +
                                    std::to_string(r_prime));
    }
}

} // namespace

double swap_test(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch("swap_test: dimensions differ");
    }
    const double overlap = (rho.matrix().cwiseProduct(sigma.matrix().transpose())).sum().real();
    return 0.5 * (1.0 + overlap);
}

double swap_test(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("swap_test: dimensions differ");
    }
    return 0.5 * (1.0 + std::norm(a.amplitudes().dot(b.amplitudes())));
}

// --- FingerprintFamily -----------------------------------------------------

FingerprintFamily::FingerprintFamily(std::vector<PureState> states, PureState zero, double delta,
                                     bool orthogonal_to_zero)
    : states_(std::move(states)), zero_(std::move(zero)), delta_(delta),
      orthogonal_to_zero_(orthogonal_to_zero) {
    if (!(delta_ >= 0.0 && delta_ < 1.0)) {
        throw std::invalid_argument("FingerprintFamily: delta must lie in [0, 1)");
    }
    for (const auto &s : states_) {
        if (s.dim() != zero_.dim()) {
            throw DimensionMismatch("FingerprintFamily: member dimension differs from |0>");
        }
        if (orthogonal_to_zero_ && std::abs(zero_.amplitudes().dot(s.amplitudes())) > kExactTol) {
            throw InvariantViolation("FingerprintFamily: member not orthogonal to |0>");
        }
    }
    if (max_pairwise_overlap() > delta_ + kExactTol) {
        throw InvariantViolation("FingerprintFamily: pairwise overlap exceeds delta");
    }
}

FingerprintFamily FingerprintFamily::orthonormal(int M) {
    if (M < 2) {
        throw std::invalid_argument("FingerprintFamily::orthonormal: need M >= 2");
    }
    std::vector<PureState> states;
    for (int i = 1; i < M; ++i) {
        states.push_back(PureState::basis(M, i));
    }
    return FingerprintFamily(std::move(states), PureState::basis(M, 0), 0.0, true);
}

FingerprintFamily FingerprintFamily::haar(int M, int k, double delta, Rng &rng,
                                          int max_attempts) {
    if (M < 3 || k < 1) {
        throw std::invalid_argument("FingerprintFamily::haar: need M >= 3 and k >= 1");
    }
    std::vector<PureState> states;
    int attempts = 0;
    while (static_cast<int>(states.size()) < k) {
        if (++attempts > max_attempts) {
            throw std::runtime_error("FingerprintFamily::haar: could not reach " +
                                     std::to_string(k) + " members with delta " +
                                     std::to_string(delta) + " in dimension " +
                                     std::to_string(M));
        }
        Vector v = Vector::Zero(M);
        v.tail(M - 1) = random_unit_vector(M - 1, rng);
        const bool ok = std::all_of(states.begin(), states.end(), [&](const PureState &s) {
            return std::abs(s.amplitudes().dot(v)) <= delta;
        });
        if (ok) {
            states.emplace_back(std::move(v));
        }
    }
    return FingerprintFamily(std::move(states), PureState::basis(M, 0), delta, true);
}

double FingerprintFamily::max_pairwise_overlap() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            worst = std::max(worst, std::abs(states_[i].amplitudes().dot(states_[j].amplitudes())));
        }
    }
    return worst;
}

HiddenBasisSpec FingerprintFamily::hidden_basis(std::size_t index) const {
    if (!orthogonal_to_zero_) {
        throw std::invalid_argument("hidden_basis: family is not orthogonal to |0>");
    }
    if (std::abs(std::abs(zero_[0]) - 1.0) > kExactTol) {
        throw std::invalid_argument("hidden_basis: |0> must be e_0");
    }
    const Vector &psi = states_.at(index).amplitudes();
    Vector alpha(1);
    alpha(0) = zero_[0];
    return HiddenBasisSpec(std::move(alpha), psi.tail(M() - 1));
}

// --- Honest kernel ---------------------------------------------------------

KernelResult kernel_honest() {
    Vector phi = kernel_system_state();
    apply_logical_gate(phi, kKernelQubits, {0}, h_theta_matrix(0.0));
    KernelResult out;
    out.pass = bob_pass(phi, 1, &out.p_message0, &out.p_message1);
    return out;
}

KernelResult kernel_honest_physical(const FingerprintFamily &family, std::size_t index) {
    const int M = family.M();
    const Index M2 = Index{M} * M;
    if (M2 * M > kDenseDimCap) {
        throw std::length_error("kernel_honest_physical: M^3 exceeds the dense cap");
    }
    const HiddenBasisSpec spec = family.hidden_basis(index);
    const Vector zero = family.zero().amplitudes();
    const Vector psi = family.states().at(index).amplitudes();

    // Bob builds |S_1^2> with the lifted (key-free) preparation circuit.
    const PrepCircuit prep = prepare_weight_state(symmetric_coefficients(2, 1), 2, 1);
    const LiftedUnitary lifted = lift_unitary(prep.as_operator(), spec);
    const Vector s12 = lifted.apply(kron(zero, psi));
    const Vector key = (zero + psi) / std::sqrt(2.0);
    Vector phi = kron(s12, key);

    // Alice's Hadamard on span{|0>, |psi>}, identity on the rest.
    const double h = 1.0 / std::sqrt(2.0);
    Matrix had = Matrix::Identity(M, M) - zero * zero.adjoint() - psi * psi.adjoint();
    had += h * (zero * (zero + psi).adjoint() + psi * (zero - psi).adjoint());
    // Channel is the slowest index: column c of the (M^2 x M) view.
    Eigen::Map<Matrix> view(phi.data(), M2, M);
    view = view * had.transpose();

    KernelResult out;
    const Vector along_zero = view * zero.conjugate();
    const Vector along_psi = view * psi.conjugate();
    out.p_message0 = along_zero.squaredNorm();
    const double p_psi = along_psi.squaredNorm();
    out.p_bot = std::max(0.0, phi.squaredNorm() - out.p_message0 - p_psi);
    out.p_message1 = p_psi + out.p_bot;

    // Z on the kept register is the lift of diag(1, -1): no key needed.
    std::vector<Matrix> zblocks = {Matrix::Identity(1, 1), -Matrix::Identity(1, 1)};
    const Matrix zphys = lift_unitary(WeightBlockOperator(1, zblocks), spec).dense().matrix();

    double pass = 0.0;
    for (int b = 0; b < 2; ++b) {
        const Matrix proj = b == 0 ? Matrix(zero * zero.adjoint())
                                   : Matrix(Matrix::Identity(M, M) - zero * zero.adjoint());
        Matrix post = view * proj.transpose();
        if (b == 1) {
            // Kept is the middle index: apply zphys across each channel slice.
            for (Index c = 0; c < M; ++c) {
                Eigen::Map<Matrix> slice(post.col(c).data(), M, M); // (key, kept)
                slice = slice * zphys.transpose();
            }
        }
        for (Index c = 0; c < M; ++c) {
            const Eigen::Map<const Matrix> slice(post.col(c).data(), M, M);
            pass += (0.5 * (slice + slice.transpose())).squaredNorm();
        }
    }
    out.pass = pass;
    return out;
}

double symmetric_decomposition_residual() {
    const Matrix h = h_theta_matrix(0.0);
    const Matrix h_inv = h.inverse();
    Matrix z_inv = Matrix::Identity(2, 2);
    z_inv(1, 1) = -1.0;
    Vector e0(2), e1(2), plus(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    plus << 1.0, 1.0;
    const Vector rhs = kron(Vector(h_inv * e0), plus) - kron(Vector(h_inv * e1), Vector(z_inv * plus));
    const Vector s12 = symmetric_state(2, 1).amplitudes();
    return (rhs.normalized() - s12).norm();
}

// --- Attacker --------------------------------------------------------------

ReferenceState eve_reference(int r_prime, double theta) {
    if (r_prime < 1) {
        throw std::invalid_argument("eve_reference: need r' >= 1");
    }
    Vector c(r_prime + 1);
    const double log_norm = r_prime * std::log(2.0);
    for (int w = 0; w <= r_prime; ++w) {
        const double log_binom =
            std::lgamma(r_prime + 1.0) - std::lgamma(w + 1.0) - std::lgamma(r_prime - w + 1.0);
        c(w) = std::exp(0.5 * (log_binom - log_norm)) * std::polar(1.0, w * theta);
    }
    return ReferenceState(std::move(c), theta, 0, 1e-9);
}

ReferenceState eve_reference_from_public_key(int r_prime) {
    if (r_prime < 1 || r_prime > 16) {
        throw std::invalid_argument("eve_reference_from_public_key: need 1 <= r' <= 16");
    }
    const Index dim = Index{1} << r_prime;
    Vector v = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    for (int w = 1; w < r_prime; ++w) {
        prepare_weight_state(symmetric_coefficients(r_prime, w), r_prime, w).apply_inverse(v);
    }
    Vector c(r_prime + 1);
    for (int w = 0; w <= r_prime; ++w) {
        c(w) = v(static_cast<Index>((Label{1} << w) - 1));
    }
    return ReferenceState(std::move(c), 0.0, 0, kChainTol);
}

double kernel_eve(int r_prime, kernels::Exec exec) {
    check_r_prime(r_prime);
    const Vector initial = eve_initial(r_prime);
    const Index stride = r_prime + 1;
    double pass = 0.0;
    // Every step conserves popcount(y) + w, so sectors never interfere and
    // the theta-average is the sum over sectors.
    for (int k = 0; k <= kKernelQubits + r_prime; ++k) {
        Vector sector = Vector::Zero(initial.size());
        bool any = false;
        for (Label y = 0; y < 8; ++y) {
            const int w = k - hamming_weight(y);
            if (w < 0 || w > r_prime) {
                continue;
            }
            const Index i = static_cast<Index>(y) * stride + w;
            sector(i) = initial(i);
            any = any || initial(i) != Complex(0.0);
        }
        if (!any) {
            continue;
        }
        eve_evolve(sector, r_prime, exec);
        pass += bob_pass(sector, stride);
    }
    return pass;
}

double kernel_eve_in_frame(int r_prime, double theta, kernels::Exec exec) {
    check_r_prime(r_prime);
    Vector amp = eve_initial(r_prime);
    const Index stride = r_prime + 1;
    // U(theta) on every register, including the reference.
    for (Label y = 0; y < 8; ++y) {
        for (Index w = 0; w < stride; ++w) {
            amp(static_cast<Index>(y) * stride + w) *=
                std::polar(1.0, (hamming_weight(y) + static_cast<double>(w)) * theta);
        }
    }
    eve_evolve(amp, r_prime, exec);
    return bob_pass(amp, stride);
}

double kernel_eve_theta_average(int r_prime, int points) {
    if (points < 1) {
        throw std::invalid_argument("kernel_eve_theta_average: need at least one point");
    }
    double acc = 0.0;
    for (int k = 0; k < points; ++k) {
        acc += kernel_eve_in_frame(r_prime, 2.0 * kPi * k / points, kernels::Exec::Serial);
    }
    return acc / points;
}

// --- Sessions --------------------------------------------------------------

std::string to_string(ProverKind kind) { return kind == ProverKind::Honest ? "honest" : "eve"; }

PublicKeyLedger::PublicKeyLedger(int r) : r_(r) {
    if (r < 1) {
        throw std::invalid_argument("PublicKeyLedger: r must be positive");
    }
}

void PublicKeyLedger::issue(int copies, const std::string &holder) {
    if (copies < 0 || issued_ + copies > r_) {
        throw std::runtime_error("PublicKeyLedger: issuing " + std::to_string(copies) +
                                 " copies to " + holder + " exceeds r = " + std::to_string(r_));
    }
    issued_ += copies;
}

SessionReport run_session(int r, int s, ProverKind prover) {
    if (s < 1) {
        throw std::invalid_argument("run_session: s must be positive");
    }
    PublicKeyLedger ledger(r);
    ledger.issue(1, "verifier");
    SessionReport report;
    report.r = r;
    report.s = s;
    report.prover = prover;
    double pass = 1.0;
    if (prover == ProverKind::Honest) {
        pass = kernel_honest().pass;
    } else {
        if (r < 4) {
            throw std::invalid_argument("run_session: the attacker needs r - 1 >= 3 copies");
        }
        report.r_prime = r - 1;
        ledger.issue(report.r_prime, "attacker");
        pass = kernel_eve(report.r_prime);
    }
    // Kernels use independent keys and are identical in the logical frame.
    report.kernel_pass_prob.assign(static_cast<std::size_t>(s), pass);
    double accept = 1.0;
    for (double p : report.kernel_pass_prob) {
        accept *= p;
    }
    report.accept_prob = accept;
    report.public_key_copies_issued = ledger.issued();
    return report;
}

int minimum_security_parameter(double pass, double epsilon) {
    if (!(pass > 0.0 && pass < 1.0)) {
        throw std::invalid_argument("minimum_security_parameter: pass must lie in (0, 1)");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("minimum_security_parameter: epsilon must lie in (0, 1)");
    }
    auto s = static_cast<int>(std::ceil(std::log(epsilon) / std::log(pass)));
    s = std::max(s, 1);
    while (s > 1 && std::pow(pass, s - 1) <= epsilon) {
        --s;
    }
    while (std::pow(pass, s) > epsilon) {
        ++s;
    }
    return s;
}

// --- Forgery ---------------------------------------------------------------

SignatureDescription plus_signature(int n) {
    check_register_count(n, "plus_signature");
    const Index dim = Index{1} << n;
    const Vector v = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    return SignatureDescription{v * v.adjoint(), false};
}

SignatureDescription symmetric_signature(int n, int w) {
    const Vector v = symmetric_state(n, w).amplitudes();
    return SignatureDescription{v * v.adjoint(), false};
}

namespace {

struct VerifierStats {
    double joint = 0.0;
    std::vector<double> registers;
    double control = 0.0;
};

VerifierStats verify(const Matrix &rho, int n) {
    const Index dim = Index{1} << n;
    VerifierStats s;
    s.joint = 0.5 * (1.0 + rho(dim - 1, dim - 1).real());
    for (int j = 0; j < n; ++j) {
        double p1 = 0.0;
        for (Index y = 0; y < dim; ++y) {
            if (label_bit(static_cast<Label>(y), n, j) == 1) {
                p1 += rho(y, y).real();
            }
        }
        s.registers.push_back(0.5 * (1.0 + p1));
    }
    const Vector plus = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    s.control = 0.5 * (1.0 + plus.dot(rho * plus).real());
    return s;
}

} // namespace

ForgeryReport forge_signature_mixture(const SignatureDescription &sigma, int n, Rng &rng,
                                      int samples) {
    if (sigma.key_dependent) {
        throw std::invalid_argument(
            "forge_signature_mixture: coefficients depend on the private key");
    }
    check_register_count(n, "forge_signature_mixture");
    if (sigma.sigma.rows() != (Index{1} << n)) {
        throw DimensionMismatch("forge_signature_mixture: sigma must be 2^n x 2^n");
    }
    const DensityOperator authentic(sigma.sigma);
    const WeightBlockDensity forged(dephase(authentic.matrix()));

    ForgeryReport report;
    report.n = n;
    report.authentic = authentic.matrix();
    report.forged = forged.op().to_dense();
    const VerifierStats a = verify(report.authentic, n);
    const VerifierStats f = verify(report.forged, n);
    report.joint_swap_authentic = a.joint;
    report.joint_swap_forged = f.joint;
    report.register_swap_authentic = a.registers;
    report.register_swap_forged = f.registers;
    report.control_authentic = a.control;
    report.control_forged = f.control;

    if (samples > 0) {
        const PhaseInvariantSampler sampler(forged);
        const Index dim = Index{1} << n;
        Matrix empirical = Matrix::Zero(dim, dim);
        for (int i = 0; i < samples; ++i) {
            const PreparedSample sample = sampler.sample(rng);
            const Vector &v = sample.state.amplitudes();
            empirical += v * v.adjoint();
            report.max_zero_copies = std::max(report.max_zero_copies, sample.copies.first);
            report.max_one_copies = std::max(report.max_one_copies, sample.copies.second);
        }
        empirical /= static_cast<double>(samples);
        report.samples = samples;
        report.sampled_trace_distance =
            trace_distance(DensityOperator(empirical, kChainTol),
                           DensityOperator(report.forged, kChainTol));
    }
    return report;
}

} // namespace hiddenbasis
