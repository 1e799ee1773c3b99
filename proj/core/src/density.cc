// Copyright 2026 The qrff Authors
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

#include "qrff/density.h"

#include <cmath>

#include "qrff/errors.h"

namespace qrff {

bool DensityOperator::is_valid(double tol) const {
    if (matrix.rows() != matrix.cols()) return false;
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(matrix.trace() - Complex(1.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

DensityOperator partial_trace(const Statevector &sv, std::string_view keep) {
    const Register &k = sv.reg(keep);
    const auto kdim = static_cast<Eigen::Index>(k.dimension());
    const std::uint64_t rest_dim = sv.dimension() >> k.width;
    const std::uint64_t low_mask = (std::uint64_t{1} << k.offset) - 1;

    // Column c of `psi` holds the kept-register amplitudes for environment state c.
    Eigen::MatrixXcd psi(kdim, static_cast<Eigen::Index>(rest_dim));
    for (std::uint64_t c = 0; c < rest_dim; ++c) {
        const std::uint64_t low = c & low_mask;
        const std::uint64_t high = (c >> k.offset) << (k.offset + k.width);
        for (Eigen::Index a = 0; a < kdim; ++a) {
            psi(a, static_cast<Eigen::Index>(c)) =
                sv.amplitude(high | (static_cast<std::uint64_t>(a) << k.offset) | low);
        }
    }
    DensityOperator out;
    out.qubits = k.width;
    out.matrix = psi * psi.adjoint();
    return out;
}

Eigen::MatrixXcd hermitian_exponential_unitary(const Eigen::MatrixXcd &rho, double t) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw DomainError("hermitian exponential: matrix must be square and nonempty");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw DomainError("hermitian exponential: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    if (es.info() != Eigen::Success) {
        throw NumericalError("hermitian exponential: eigendecomposition failed");
    }
    const Eigen::VectorXd &w = es.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, -w(i) * t);
    const Eigen::MatrixXcd &q = es.eigenvectors();
    return q * phases.asDiagonal() * q.adjoint();
}

}  // namespace qrff
