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

// Dense statevector over named qubit registers.
//
// Qubit q is bit q of the basis index (little-endian). Registers are contiguous
// bit ranges allocated in declaration order, so the first register occupies the
// least significant bits. A register value is read little-endian within its range.

#ifndef QRFF_STATEVECTOR_H_
#define QRFF_STATEVECTOR_H_

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qrff {

using Complex = std::complex<double>;

/// Statevectors above this many qubits are refused with CapacityError.
inline constexpr int kMaxQubits = 26;

struct Register {
    std::string name;
    int offset = 0;
    int width = 0;

    std::uint64_t dimension() const { return std::uint64_t{1} << width; }
    std::uint64_t mask() const { return (dimension() - 1) << offset; }
    std::uint64_t value_of(std::uint64_t basis_index) const { return (basis_index >> offset) & (dimension() - 1); }
    int qubit(int k) const { return offset + k; }
};

using RegisterSpec = std::vector<std::pair<std::string, int>>;

class Statevector {
   public:
    /// All registers in |0>.
    explicit Statevector(const RegisterSpec &registers);

    /// Takes amplitudes as given; throws DomainError if the norm is not 1 within 1e-10.
    static Statevector from_amplitudes(const RegisterSpec &registers, Eigen::VectorXcd amplitudes);

    int qubit_count() const { return qubits_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << qubits_; }

    const Eigen::VectorXcd &amplitudes() const { return amps_; }
    Eigen::VectorXcd &mutable_amplitudes() { return amps_; }
    Complex amplitude(std::uint64_t index) const { return amps_(static_cast<Eigen::Index>(index)); }

    const std::vector<Register> &registers() const { return regs_; }
    const Register &reg(std::string_view name) const;
    bool has_register(std::string_view name) const;

    /// Appends a register of `width` qubits in |0> above all existing qubits.
    const Register &add_register(std::string name, int width);

    /// Removes a register that is (up to 1e-10 leaked probability) in basis state `value`.
    void discard_register(std::string_view name, std::uint64_t value = 0);

    double norm() const { return amps_.norm(); }

    /// Born marginal of one register, indexed by its little-endian value.
    std::vector<double> probabilities(std::string_view name) const;

    RegisterSpec spec() const;

   private:
    Statevector() = default;

    std::vector<Register> regs_;
    int qubits_ = 0;
    Eigen::VectorXcd amps_;
};

/// Sum of |a_i|^2 restricted to basis states whose register `name` equals `value`.
double branch_probability(const Statevector &sv, std::string_view name, std::uint64_t value);

/// |<a|b>|^2 of two states with equal dimension.
double fidelity(const Statevector &a, const Statevector &b);

}  // namespace qrff

#endif  // QRFF_STATEVECTOR_H_
