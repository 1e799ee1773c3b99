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

#include "qrff/statevector.h"

#include <cmath>
#include <sstream>

#include "qrff/errors.h"

namespace qrff {
namespace {

constexpr double kNormTolerance = 1e-10;

void check_capacity(int qubits) {
    if (qubits > kMaxQubits) {
        std::ostringstream msg;
        msg << "statevector of " << qubits << " qubits exceeds the simulator cap of " << kMaxQubits << " qubits";
        throw CapacityError(msg.str());
    }
}

}  // namespace

Statevector::Statevector(const RegisterSpec &registers) {
    int offset = 0;
    for (const auto &[name, width] : registers) {
        if (width < 0) {
            throw DomainError("register width must be nonnegative");
        }
        if (has_register(name)) {
            throw DomainError("duplicate register name '" + name + "'");
        }
        regs_.push_back(Register{name, offset, width});
        offset += width;
    }
    if (offset < 1) {
        throw DomainError("statevector needs at least one qubit");
    }
    check_capacity(offset);
    qubits_ = offset;
    amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension()));
    amps_(0) = 1.0;
}

Statevector Statevector::from_amplitudes(const RegisterSpec &registers, Eigen::VectorXcd amplitudes) {
    Statevector sv(registers);
    if (static_cast<std::uint64_t>(amplitudes.size()) != sv.dimension()) {
        throw DomainError("amplitude vector length does not match register layout");
    }
    if (std::abs(amplitudes.norm() - 1.0) > kNormTolerance) {
        throw DomainError("amplitude vector is not normalized");
    }
    sv.amps_ = std::move(amplitudes);
    return sv;
}

const Register &Statevector::reg(std::string_view name) const {
    for (const auto &r : regs_) {
        if (r.name == name) return r;
    }
    throw DomainError("unknown register '" + std::string(name) + "'");
}

bool Statevector::has_register(std::string_view name) const {
    for (const auto &r : regs_) {
        if (r.name == name) return true;
    }
    return false;
}

const Register &Statevector::add_register(std::string name, int width) {
    if (width < 0) {
        throw DomainError("register width must be nonnegative");
    }
    if (has_register(name)) {
        throw DomainError("duplicate register name '" + name + "'");
    }
    check_capacity(qubits_ + width);
    Eigen::VectorXcd grown = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension() << width));
    grown.head(amps_.size()) = amps_;
    amps_ = std::move(grown);
    regs_.push_back(Register{std::move(name), qubits_, width});
    qubits_ += width;
    return regs_.back();
}

void Statevector::discard_register(std::string_view name, std::uint64_t value) {
    const Register r = reg(name);
    if (value >= r.dimension()) {
        throw DomainError("register value out of range");
    }
    if (qubits_ - r.width < 1) {
        throw DomainError("cannot discard the last qubits of a statevector");
    }
    const double kept = branch_probability(*this, name, value);
    if (std::abs(1.0 - kept) > kNormTolerance) {
        std::ostringstream msg;
        msg << "register '" << r.name << "' is not in basis state " << value << " (leaked probability "
            << 1.0 - kept << ")";
        throw DomainError(msg.str());
    }
    const std::uint64_t low_mask = (std::uint64_t{1} << r.offset) - 1;
    const std::uint64_t new_dim = dimension() >> r.width;
    Eigen::VectorXcd out(static_cast<Eigen::Index>(new_dim));
    for (std::uint64_t i = 0; i < new_dim; ++i) {
        const std::uint64_t low = i & low_mask;
        const std::uint64_t high = (i >> r.offset) << (r.offset + r.width);
        out(static_cast<Eigen::Index>(i)) = amps_(static_cast<Eigen::Index>(high | (value << r.offset) | low));
    }
    amps_ = std::move(out);

    std::vector<Register> regs;
    for (const auto &other : regs_) {
        if (other.name == r.name) continue;
        Register moved = other;
        if (moved.offset > r.offset) moved.offset -= r.width;
        regs.push_back(std::move(moved));
    }
    regs_ = std::move(regs);
    qubits_ -= r.width;
}

std::vector<double> Statevector::probabilities(std::string_view name) const {
    const Register &r = reg(name);
    std::vector<double> probs(r.dimension(), 0.0);
    for (std::uint64_t i = 0; i < dimension(); ++i) {
        probs[r.value_of(i)] += std::norm(amps_(static_cast<Eigen::Index>(i)));
    }
    return probs;
}

RegisterSpec Statevector::spec() const {
    RegisterSpec out;
    for (const auto &r : regs_) out.emplace_back(r.name, r.width);
    return out;
}

double branch_probability(const Statevector &sv, std::string_view name, std::uint64_t value) {
    const Register &r = sv.reg(name);
    double p = 0.0;
    for (std::uint64_t i = 0; i < sv.dimension(); ++i) {
        if (r.value_of(i) == value) p += std::norm(sv.amplitude(i));
    }
    return p;
}

double fidelity(const Statevector &a, const Statevector &b) {
    if (a.dimension() != b.dimension()) {
        throw DomainError("fidelity: dimension mismatch");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace qrff
