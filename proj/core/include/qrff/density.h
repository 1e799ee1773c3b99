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

#ifndef QRFF_DENSITY_H_
#define QRFF_DENSITY_H_

#include <string_view>

#include <Eigen/Dense>

#include "qrff/statevector.h"

namespace qrff {

struct DensityOperator {
    Eigen::MatrixXcd matrix;
    int qubits = 0;

    /// Hermitian, unit trace and eigenvalues >= -tol, each to `tol`.
    bool is_valid(double tol = 1e-10) const;
};

/// Reduced state of register `keep`, tracing out every other qubit.
DensityOperator partial_trace(const Statevector &sv, std::string_view keep);

/// exp(-i rho t) from the eigendecomposition of the Hermitian `rho`.
/// Throws DomainError if `rho` is not Hermitian to 1e-10.
Eigen::MatrixXcd hermitian_exponential_unitary(const Eigen::MatrixXcd &rho, double t);

inline Eigen::MatrixXcd hermitian_exponential_unitary(const DensityOperator &rho, double t) {
    return hermitian_exponential_unitary(rho.matrix, t);
}

}  // namespace qrff

#endif  // QRFF_DENSITY_H_
