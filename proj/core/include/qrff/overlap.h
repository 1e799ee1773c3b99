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

// Hadamard and SWAP tests.
//
// Both circuits end in a single ancilla measurement. With shots == 0 the exact
// ancilla probability is used; otherwise `shots` outcomes are sampled from it.

#ifndef QRFF_OVERLAP_H_
#define QRFF_OVERLAP_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "qrff/gates.h"
#include "qrff/statevector.h"

namespace qrff {

struct OverlapEstimate {
    double value = 0.0;  // the estimate (clamped where the quantity is bounded)
    double raw = 0.0;    // 2 P(ancilla = 0) - 1 before clamping
    double p0 = 0.0;     // exact P(ancilla = 0)
    std::uint64_t shots = 0;
};

/// Estimates Re<b|a>. The joint state (|0>|a> + |1>|b>)/sqrt(2) is what the
/// ancilla-controlled preparations of a and b produce from H|0>|0...0>.
OverlapEstimate hadamard_test(const Statevector &a, const Statevector &b, std::uint64_t shots, std::uint64_t seed);

/// Circuit form: prep_a runs controlled on ancilla = 0, prep_b on ancilla = 1.
OverlapEstimate hadamard_test(const RegisterSpec &layout, std::span<const GateOp> prep_a,
                              std::span<const GateOp> prep_b, std::uint64_t shots, std::uint64_t seed);

/// Estimates Tr(rho_a |b><b|), where rho_a is the reduced state of register `reg_a`
/// of `a` (|<a|b>|^2 when that register is the whole pure state). `b` must have as
/// many qubits as `reg_a`. Result clamped to [0, 1].
OverlapEstimate swap_test(const Statevector &a, std::string_view reg_a, const Statevector &b, std::uint64_t shots,
                          std::uint64_t seed);

/// |<a|b>|^2 for two states of equal size.
OverlapEstimate swap_test(const Statevector &a, const Statevector &b, std::uint64_t shots, std::uint64_t seed);

OverlapEstimate swap_test(const RegisterSpec &layout, std::span<const GateOp> prep_a, std::span<const GateOp> prep_b,
                          std::uint64_t shots, std::uint64_t seed);

}  // namespace qrff

#endif  // QRFF_OVERLAP_H_
