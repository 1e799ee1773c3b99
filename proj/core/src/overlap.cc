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

#include "qrff/overlap.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qrff/errors.h"
#include "qrff/measurement.h"

namespace qrff {
namespace {

constexpr const char *kAncilla = "ancilla";

OverlapEstimate read_ancilla(const Statevector &joint, std::uint64_t shots, std::uint64_t seed) {
    OverlapEstimate out;
    out.p0 = std::clamp(branch_probability(joint, kAncilla, 0), 0.0, 1.0);
    out.shots = shots;
    double p0 = out.p0;
    if (shots > 0) {
        p0 = measure_register(joint, kAncilla, shots, seed).frequency(0);
    }
    out.raw = 2.0 * p0 - 1.0;
    out.value = out.raw;
    return out;
}

RegisterSpec prefixed(const RegisterSpec &spec, const std::string &prefix) {
    RegisterSpec out;
    for (const auto &[name, width] : spec) out.emplace_back(prefix + name, width);
    return out;
}

}  // namespace

OverlapEstimate hadamard_test(const Statevector &a, const Statevector &b, std::uint64_t shots, std::uint64_t seed) {
    if (a.dimension() != b.dimension()) {
        throw DomainError("hadamard test: state dimensions differ");
    }
    RegisterSpec layout = a.spec();
    layout.emplace_back(kAncilla, 1);
    Statevector joint(layout);
    const auto dim = static_cast<Eigen::Index>(a.dimension());
    Eigen::VectorXcd &amps = joint.mutable_amplitudes();
    amps.head(dim) = a.amplitudes() * (std::numbers::sqrt2 / 2.0);
    amps.tail(dim) = b.amplitudes() * (std::numbers::sqrt2 / 2.0);
    apply_gate(joint, GateOp::h(joint.reg(kAncilla).qubit(0)));
    return read_ancilla(joint, shots, seed);
}

OverlapEstimate hadamard_test(const RegisterSpec &layout, std::span<const GateOp> prep_a,
                              std::span<const GateOp> prep_b, std::uint64_t shots, std::uint64_t seed) {
    RegisterSpec joint_layout = layout;
    joint_layout.emplace_back(kAncilla, 1);
    Statevector joint(joint_layout);
    const int anc = joint.reg(kAncilla).qubit(0);
    apply_gate(joint, GateOp::h(anc));
    for (const GateOp &g : prep_a) {
        if (g.max_qubit() >= anc) throw DomainError("hadamard test: preparation touches the ancilla");
        apply_gate(joint, g.controlled({anc}, 0));
    }
    for (const GateOp &g : prep_b) {
        if (g.max_qubit() >= anc) throw DomainError("hadamard test: preparation touches the ancilla");
        apply_gate(joint, g.controlled({anc}, 1));
    }
    apply_gate(joint, GateOp::h(anc));
    return read_ancilla(joint, shots, seed);
}

OverlapEstimate swap_test(const Statevector &a, std::string_view reg_a, const Statevector &b, std::uint64_t shots,
                          std::uint64_t seed) {
    const Register ra = a.reg(reg_a);
    if (ra.width != b.qubit_count()) {
        throw DomainError("swap test: register '" + ra.name + "' and the reference state differ in size");
    }
    RegisterSpec layout = a.spec();
    for (const auto &entry : prefixed(b.spec(), "ref.")) layout.push_back(entry);
    layout.emplace_back(kAncilla, 1);
    Statevector joint(layout);

    Eigen::VectorXcd &amps = joint.mutable_amplitudes();
    const std::uint64_t da = a.dimension();
    const std::uint64_t db = b.dimension();
    for (std::uint64_t ib = 0; ib < db; ++ib) {
        const Complex wb = b.amplitude(ib);
        for (std::uint64_t ia = 0; ia < da; ++ia) {
            amps(static_cast<Eigen::Index>(ia + ib * da)) = a.amplitude(ia) * wb;
        }
    }
    const int anc = joint.reg(kAncilla).qubit(0);
    const int b_offset = a.qubit_count();
    apply_gate(joint, GateOp::h(anc));
    for (int k = 0; k < ra.width; ++k) {
        apply_gate(joint, GateOp::swap(ra.qubit(k), b_offset + k).controlled_on(anc));
    }
    apply_gate(joint, GateOp::h(anc));

    OverlapEstimate out = read_ancilla(joint, shots, seed);
    out.value = std::clamp(out.raw, 0.0, 1.0);
    return out;
}

OverlapEstimate swap_test(const Statevector &a, const Statevector &b, std::uint64_t shots, std::uint64_t seed) {
    if (a.dimension() != b.dimension()) {
        throw DomainError("swap test: state dimensions differ");
    }
    const RegisterSpec whole{{"state", a.qubit_count()}};
    const Statevector flat = Statevector::from_amplitudes(whole, a.amplitudes());
    return swap_test(flat, "state", b, shots, seed);
}

OverlapEstimate swap_test(const RegisterSpec &layout, std::span<const GateOp> prep_a, std::span<const GateOp> prep_b,
                          std::uint64_t shots, std::uint64_t seed) {
    return swap_test(run_circuit(layout, prep_a), run_circuit(layout, prep_b), shots, seed);
}

}  // namespace qrff
