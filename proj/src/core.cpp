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

#include "hiddenbasis/core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hiddenbasis {

namespace {

void require_same_dim(Index a, Index b, const char *what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " +
                                std::to_string(a) + " vs " + std::to_string(b));
    }
}

Matrix psd_sqrt(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

PureState::PureState(Vector amplitudes, double tol) : amp_(std::move(amplitudes)) {
    if (amp_.size() == 0) {
        throw InvariantViolation("PureState: empty amplitude vector");
    }
    const double norm = amp_.norm();
    if (std::abs(norm - 1.0) > tol) {
        throw InvariantViolation("PureState: norm " + std::to_string(norm) +
                                 " is not 1");
    }
}

PureState PureState::normalized(const Vector &v) {
    const double norm = v.norm();
    if (!(norm > 0.0)) {
        throw InvariantViolation("PureState: cannot normalize a zero vector");
    }
    return PureState(v / norm);
}

PureState PureState::basis(Index dim, Index i) {
    if (i < 0 || i >= dim) {
        throw std::out_of_range("PureState::basis: index out of range");
    }
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return PureState(std::move(v));
}

DensityOperator PureState::projector() const {
    return DensityOperator(amp_ * amp_.adjoint());
}

DensityOperator::DensityOperator(Matrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw InvariantViolation("DensityOperator: matrix must be square and nonempty");
    }
    if (!is_hermitian(m_, tol)) {
        throw InvariantViolation("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > tol) {
        throw InvariantViolation("DensityOperator: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw InvariantViolation("DensityOperator: negative eigenvalue");
    }
}

UnitaryMatrix::UnitaryMatrix(Matrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw InvariantViolation("UnitaryMatrix: matrix must be square and nonempty");
    }
    if (!is_unitary(m_, tol)) {
        throw InvariantViolation("UnitaryMatrix: U U^dagger differs from identity");
    }
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
    return UnitaryMatrix(Matrix::Identity(dim, dim));
}

PureState UnitaryMatrix::apply(const PureState &psi) const {
    require_same_dim(dim(), psi.dim(), "UnitaryMatrix::apply");
    return PureState(m_ * psi.amplitudes(), kChainTol);
}

DensityOperator UnitaryMatrix::conjugate(const DensityOperator &rho) const {
    require_same_dim(dim(), rho.dim(), "UnitaryMatrix::conjugate");
    return DensityOperator(m_ * rho.matrix() * m_.adjoint(), kChainTol);
}

Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

PureState tensor(const PureState &a, const PureState &b) {
    return PureState(kron(a.amplitudes(), b.amplitudes()), kChainTol);
}

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
    // The difference is Hermitian, so its singular values are |eigenvalues|.
    const Matrix diff = rho.matrix() - sigma.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    const double d = 0.5 * es.eigenvalues().cwiseAbs().sum();
    return std::clamp(d, 0.0, 1.0);
}

double fidelity_pure(const PureState &a, const PureState &b) {
    require_same_dim(a.dim(), b.dim(), "fidelity_pure");
    return std::min(1.0, std::abs(a.amplitudes().dot(b.amplitudes())));
}

double fidelity(const DensityOperator &rho, const DensityOperator &sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "fidelity");
    const Matrix s = psd_sqrt(rho.matrix());
    const Matrix inner = s * sigma.matrix() * s;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()),
                                             Eigen::EigenvaluesOnly);
    const double f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::min(1.0, f);
}

double fidelity(const DensityOperator &rho, const PureState &psi) {
    require_same_dim(rho.dim(), psi.dim(), "fidelity");
    const Complex v = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
    return std::sqrt(std::clamp(v.real(), 0.0, 1.0));
}

bool is_hermitian(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs_entry(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs_entry(m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

double max_abs_entry(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace hiddenbasis
