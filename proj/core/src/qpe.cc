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

#include "qrff/qpe.h"

#include <numbers>
#include <utility>
#include <vector>

#include "qrff/errors.h"

namespace qrff {
namespace {

std::vector<int> qubits_of(const Register &r) {
    std::vector<int> out(static_cast<std::size_t>(r.width));
    for (int k = 0; k < r.width; ++k) out[static_cast<std::size_t>(k)] = r.qubit(k);
    return out;
}

void check_power(const Eigen::MatrixXcd &u, const Register &target) {
    const auto dim = static_cast<Eigen::Index>(target.dimension());
    if (u.rows() != dim || u.cols() != dim) {
        throw DomainError("phase estimation: unitary dimension does not match register '" + target.name + "'");
    }
}

}  // namespace

Circuit qft_circuit(const Register &reg) {
    Circuit c;
    const int n = reg.width;
    for (int i = n - 1; i >= 0; --i) {
        c.push_back(GateOp::h(reg.qubit(i)));
        for (int j = i - 1; j >= 0; --j) {
            const double angle = 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (i - j + 1));
            c.push_back(GateOp::phase(reg.qubit(i), angle).controlled_on(reg.qubit(j)));
        }
    }
    for (int k = 0; k < n / 2; ++k) {
        c.push_back(GateOp::swap(reg.qubit(k), reg.qubit(n - 1 - k)));
    }
    return c;
}

Circuit inverse_qft_circuit(const Register &reg) {
    Circuit c;
    const int n = reg.width;
    for (int k = n / 2 - 1; k >= 0; --k) {
        c.push_back(GateOp::swap(reg.qubit(k), reg.qubit(n - 1 - k)));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            const double angle = 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (i - j + 1));
            c.push_back(GateOp::phase(reg.qubit(i), -angle).controlled_on(reg.qubit(j)));
        }
        c.push_back(GateOp::h(reg.qubit(i)));
    }
    return c;
}

UnitaryPower repeated_squaring(Eigen::MatrixXcd u) {
    return [u = std::move(u)](std::uint64_t power) {
        Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
        Eigen::MatrixXcd base = u;
        while (power != 0) {
            if (power & 1) result = result * base;
            power >>= 1;
            if (power != 0) base = base * base;
        }
        return result;
    };
}

const Register &qpe(Statevector &sv, const UnitaryPower &power, std::string_view target, int tau,
                    std::string eval_name) {
    if (tau < 1) {
        throw DomainError("phase estimation needs tau >= 1");
    }
    const Register tgt = sv.reg(target);
    if (tgt.width < 1) {
        throw DomainError("phase estimation target register is empty");
    }
    check_power(power(1), tgt);
    const Register eval = sv.add_register(std::move(eval_name), tau);
    const std::vector<int> tq = qubits_of(tgt);

    for (int k = 0; k < tau; ++k) apply_gate(sv, GateOp::h(eval.qubit(k)));
    for (int k = 0; k < tau; ++k) {
        Eigen::MatrixXcd uk = power(std::uint64_t{1} << k);
        check_power(uk, tgt);
        apply_gate(sv, GateOp::unitary(tq, std::move(uk)).controlled_on(eval.qubit(k)));
    }
    apply_circuit(sv, inverse_qft_circuit(eval));
    return sv.reg(eval.name);
}

const Register &qpe(Statevector &sv, const Eigen::MatrixXcd &unitary, std::string_view target, int tau,
                    std::string eval_name) {
    return qpe(sv, repeated_squaring(unitary), target, tau, std::move(eval_name));
}

void inverse_qpe(Statevector &sv, const UnitaryPower &power, std::string_view target, std::string_view eval_name) {
    const Register tgt = sv.reg(target);
    const Register eval = sv.reg(eval_name);
    const std::vector<int> tq = qubits_of(tgt);

    apply_circuit(sv, qft_circuit(eval));
    for (int k = eval.width - 1; k >= 0; --k) {
        Eigen::MatrixXcd uk = power(std::uint64_t{1} << k);
        check_power(uk, tgt);
        apply_gate(sv, GateOp::unitary(tq, uk.adjoint()).controlled_on(eval.qubit(k)));
    }
    for (int k = 0; k < eval.width; ++k) apply_gate(sv, GateOp::h(eval.qubit(k)));
}

}  // namespace qrff
