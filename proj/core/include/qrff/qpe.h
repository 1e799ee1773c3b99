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

// Quantum Fourier transform and phase estimation on named registers.
//
// qft maps |x> to 2^{-n/2} sum_y exp(2 pi i x y / 2^n) |y> with x, y read
// little-endian from the register. Phase estimation of a unitary U with
// U|v> = exp(2 pi i phi)|v> leaves the evaluation register in
// sum_b alpha(b)|b>, alpha(b) = 2^{-tau} sum_k exp(2 pi i k (phi - b / 2^tau)),
// using evaluation qubit k as control of U^(2^k).

#ifndef QRFF_QPE_H_
#define QRFF_QPE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "qrff/gates.h"
#include "qrff/statevector.h"

namespace qrff {

Circuit qft_circuit(const Register &reg);
Circuit inverse_qft_circuit(const Register &reg);

/// Returns U^power for the unitary under estimation.
using UnitaryPower = std::function<Eigen::MatrixXcd(std::uint64_t power)>;

/// Powers by repeated squaring of `u`.
UnitaryPower repeated_squaring(Eigen::MatrixXcd u);

/// Appends a `tau`-qubit register named `eval_name` in |0>, then runs Hadamards,
/// the controlled-U^(2^k) ladder onto `target`, and the inverse QFT.
const Register &qpe(Statevector &sv, const UnitaryPower &power, std::string_view target, int tau,
                    std::string eval_name = "e");

const Register &qpe(Statevector &sv, const Eigen::MatrixXcd &unitary, std::string_view target, int tau,
                    std::string eval_name = "e");

/// Exact adjoint of qpe; leaves the evaluation register in place.
void inverse_qpe(Statevector &sv, const UnitaryPower &power, std::string_view target, std::string_view eval);

}  // namespace qrff

#endif  // QRFF_QPE_H_
