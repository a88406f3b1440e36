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
 * @file protocol.hpp
 * Quantum-public-key identification: SWAP tests, fingerprint families, the
 * three-step kernel for an honest prover and for a reference-frame attacker,
 * and forging phase-invariant signature states.
 *
 * Kernel simulations run in the logical frame where the secret state |psi>
 * is logical |1>. The kernel registers are (channel, kept, public key) as
 * system qubits 0, 1, 2.
 */
#pragma once

#include <string>
#include <vector>

#include "hiddenbasis/phase_invariant.hpp"
#include "hiddenbasis/phase_reference.hpp"

namespace hiddenbasis {

/// (1 + tr(rho sigma)) / 2.
[[nodiscard]] double swap_test(const DensityOperator &rho, const DensityOperator &sigma);
/// (1 + |<a|b>|^2) / 2.
[[nodiscard]] double swap_test(const PureState &a, const PureState &b);

/**
 * States in C^M with pairwise overlaps at most delta. The generators here use
 * |0> = e_0 and, when flagged, keep every member orthogonal to it.
 */
class FingerprintFamily {
  public:
    /// Throws InvariantViolation if the overlap or zero-orthogonality promise fails.
    FingerprintFamily(std::vector<PureState> states, PureState zero, double delta,
                      bool orthogonal_to_zero);

    /// e_1, ..., e_{M-1} with |0> = e_0 and delta = 0.
    static FingerprintFamily orthonormal(int M);
    /// k Haar-random states on span(e_1..e_{M-1}), redrawn until pairwise overlap <= delta.
    static FingerprintFamily haar(int M, int k, double delta, Rng &rng, int max_attempts = 100000);

    [[nodiscard]] int M() const noexcept { return static_cast<int>(zero_.dim()); }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
    [[nodiscard]] const std::vector<PureState> &states() const noexcept { return states_; }
    [[nodiscard]] const PureState &zero() const noexcept { return zero_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }
    [[nodiscard]] bool orthogonal_to_zero() const noexcept { return orthogonal_to_zero_; }
    [[nodiscard]] double max_pairwise_overlap() const;

    /**
     * Hidden basis with |0> = e_0 (so d0 = 1) and |1> = member `index`
     * written over e_1..e_{M-1}. Needs the zero-orthogonal flag and |0> = e_0.
     */
    [[nodiscard]] HiddenBasisSpec hidden_basis(std::size_t index) const;

  private:
    std::vector<PureState> states_;
    PureState zero_;
    double delta_;
    bool orthogonal_to_zero_;
};

struct KernelResult {
    double pass = 0.0;       ///< Bob's SWAP-test pass probability.
    double p_message0 = 0.0; ///< Probability the prover sends "0".
    double p_message1 = 0.0;
    double p_bot = 0.0;      ///< Prover outcome outside span{|0>, |psi>}.
};

/// The kernel with a prover who applies the exact logical Hadamard.
[[nodiscard]] KernelResult kernel_honest();
/// The same kernel on M-dimensional physical registers for one family member.
[[nodiscard]] KernelResult kernel_honest_physical(const FingerprintFamily &family,
                                                  std::size_t index);
/// Distance between the normalized symmetric state |S_1^2> and its
/// decomposition (H^-1|0>)(|0>+|1>) - (H^-1|1>) Z^-1 (|0>+|1>), normalized.
[[nodiscard]] double symmetric_decomposition_residual();

/// sqrt(C(r', w) / 2^r') e^{i w theta} for w = 0..r'.
[[nodiscard]] ReferenceState eve_reference(int r_prime, double theta = 0.0);
/// The same state built by running the inverse symmetric-state preparation on
/// r' copies of (|0>+|1>)/sqrt(2). Limited to r' <= 16.
[[nodiscard]] ReferenceState eve_reference_from_public_key(int r_prime);

/// Attacker's pass probability, averaged over theta by splitting the joint
/// state into its total Hamming-weight sectors. Needs r' >= 3.
[[nodiscard]] double kernel_eve(int r_prime, kernels::Exec exec = kernels::Exec::Parallel);
/// Pass probability when every key-dependent register carries phase theta.
[[nodiscard]] double kernel_eve_in_frame(int r_prime, double theta,
                                         kernels::Exec exec = kernels::Exec::Parallel);
/// Equal-weight quadrature of kernel_eve_in_frame over `points` angles.
[[nodiscard]] double kernel_eve_theta_average(int r_prime, int points);

enum class ProverKind { Honest, Eve };
[[nodiscard]] std::string to_string(ProverKind kind);

/// Copies of the public key in circulation; refuses to issue more than r.
class PublicKeyLedger {
  public:
    explicit PublicKeyLedger(int r);
    void issue(int copies, const std::string &holder);
    [[nodiscard]] int r() const noexcept { return r_; }
    [[nodiscard]] int issued() const noexcept { return issued_; }

  private:
    int r_;
    int issued_ = 0;
};

struct SessionReport {
    int r = 0;
    int s = 0;
    ProverKind prover = ProverKind::Honest;
    int r_prime = 0; ///< Attacker's public-key copies (0 for the honest prover).
    std::vector<double> kernel_pass_prob;
    double accept_prob = 1.0;
    int public_key_copies_issued = 0;
};

/// s independent kernels; the attacker holds r - 1 public-key copies (needs r >= 4).
[[nodiscard]] SessionReport run_session(int r, int s, ProverKind prover);
/// Smallest s with pass^s <= epsilon.
[[nodiscard]] int minimum_security_parameter(double pass, double epsilon);

/// Publicly known signature coefficients over the logical basis.
struct SignatureDescription {
    Matrix sigma;
    bool key_dependent = false; ///< Set when the coefficients need the private key.
};
/// ((|0>+|1>)(<0|+<1|)/2)^(x)n in the logical frame.
[[nodiscard]] SignatureDescription plus_signature(int n);
/// |S_w^n><S_w^n|.
[[nodiscard]] SignatureDescription symmetric_signature(int n, int w);

struct ForgeryReport {
    int n = 0;
    Matrix authentic;
    Matrix forged;
    double joint_swap_authentic = 0.0; ///< SWAP test against |psi>^(x)n.
    double joint_swap_forged = 0.0;
    std::vector<double> register_swap_authentic; ///< Per register against |psi>.
    std::vector<double> register_swap_forged;
    double control_authentic = 0.0; ///< SWAP test against ((|0>+|psi>)/sqrt 2)^(x)n.
    double control_forged = 0.0;
    int samples = 0;
    int max_zero_copies = 0;
    int max_one_copies = 0;
    double sampled_trace_distance = 0.0; ///< Empirical ensemble vs forged density.
};

/**
 * Forges the theta-average of sigma, which is phase invariant and so can be
 * prepared from copies of |0> and |psi>, and compares verifier statistics.
 * Throws std::invalid_argument for a key-dependent description.
 */
[[nodiscard]] ForgeryReport forge_signature_mixture(const SignatureDescription &sigma, int n,
                                                    Rng &rng, int samples = 2000);

} // namespace hiddenbasis
