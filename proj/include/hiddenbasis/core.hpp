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
 * @file core.hpp
 * Dense complex state types and the distance measures shared by every module.
 *
 * All value types validate their invariants on construction and are immutable
 * afterwards, so they can be shared freely between threads.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hiddenbasis {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Absolute tolerance for identities that hold by construction.
inline constexpr double kExactTol = 1e-10;
/// Absolute tolerance for quantities produced by chained computations.
inline constexpr double kChainTol = 1e-9;
/// Largest Hilbert-space dimension for which dense matrices are materialized.
inline constexpr Index kDenseDimCap = 8192;

inline constexpr double kPi = 3.14159265358979323846;

class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a value violates the invariant of the type it is used to build.
class InvariantViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class DensityOperator;

/// Unit vector in C^D.
class PureState {
  public:
    /// Throws InvariantViolation unless the norm is 1 within `tol`.
    explicit PureState(Vector amplitudes, double tol = kExactTol);

    /// Rescales a nonzero vector to unit norm.
    static PureState normalized(const Vector &v);
    static PureState basis(Index dim, Index i);

    [[nodiscard]] const Vector &amplitudes() const noexcept { return amp_; }
    [[nodiscard]] Index dim() const noexcept { return amp_.size(); }
    [[nodiscard]] Complex operator[](Index i) const { return amp_(i); }
    [[nodiscard]] DensityOperator projector() const;

  private:
    Vector amp_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityOperator {
  public:
    explicit DensityOperator(Matrix m, double tol = kExactTol);

    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Index dim() const noexcept { return m_.rows(); }

  private:
    Matrix m_;
};

class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(Matrix m, double tol = kExactTol);

    static UnitaryMatrix identity(Index dim);

    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] PureState apply(const PureState &psi) const;
    [[nodiscard]] DensityOperator conjugate(const DensityOperator &rho) const;

  private:
    Matrix m_;
};

/// Kronecker product; amplitude (i * b.dim() + j) equals a_i * b_j.
[[nodiscard]] PureState tensor(const PureState &a, const PureState &b);
[[nodiscard]] Vector kron(const Vector &a, const Vector &b);
[[nodiscard]] Matrix kron(const Matrix &a, const Matrix &b);

/// Half the sum of singular values of rho - sigma.
[[nodiscard]] double trace_distance(const DensityOperator &rho,
                                    const DensityOperator &sigma);

/// |<a|b>|.
[[nodiscard]] double fidelity_pure(const PureState &a, const PureState &b);

/// Root fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)).
[[nodiscard]] double fidelity(const DensityOperator &rho,
                              const DensityOperator &sigma);

/// sqrt(<psi|rho|psi>), the root fidelity against a pure state.
[[nodiscard]] double fidelity(const DensityOperator &rho, const PureState &psi);

[[nodiscard]] bool is_hermitian(const Matrix &m, double tol);
[[nodiscard]] bool is_unitary(const Matrix &m, double tol);
[[nodiscard]] double max_abs_entry(const Matrix &m);

} // namespace hiddenbasis
