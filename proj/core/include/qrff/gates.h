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

// Gate operations on a Statevector.
//
// A GateOp is a small unitary acting on an ordered list of target qubits,
// optionally conditioned on a list of control qubits matching a bit pattern.
// The single-qubit rotation follows the full-angle convention
//
//   Ry(theta) = [[cos theta, -sin theta], [sin theta, cos theta]]
//
// which equals the half-angle Ry_std(2 theta). MultiplexedRy applies a different
// Ry angle for every value of a selector register in one pass; it is the product
// of the commuting multi-controlled Ry gates, one per selector pattern.

#ifndef QRFF_GATES_H_
#define QRFF_GATES_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qrff/statevector.h"

namespace qrff {

enum class GateKind { kH, kX, kRy, kPhase, kSwap, kUnitary, kMultiplexedRy };

class GateOp {
   public:
    static GateOp h(int qubit);
    static GateOp x(int qubit);
    static GateOp ry(int qubit, double theta);
    /// diag(1, e^{i phi}).
    static GateOp phase(int qubit, double phi);
    static GateOp swap(int a, int b);
    /// Arbitrary unitary on `targets` (targets[k] is bit k of the local index).
    /// Throws DomainError if `u` is not unitary to 1e-10.
    static GateOp unitary(std::vector<int> targets, Eigen::MatrixXcd u);
    /// angles[s] is applied to `target` when the selector qubits read s (little-endian).
    static GateOp multiplexed_ry(int target, std::vector<int> selectors, std::vector<double> angles);

    /// Copy of this gate that fires only when controls[k] reads bit k of `pattern`.
    GateOp controlled(std::vector<int> controls, std::uint64_t pattern) const;
    /// Copy conditioned on a single control qubit being |1>.
    GateOp controlled_on(int control) const { return controlled({control}, 1); }

    GateKind kind() const { return kind_; }
    const std::vector<int> &targets() const { return targets_; }
    const std::vector<int> &controls() const { return controls_; }
    std::uint64_t control_pattern() const { return pattern_; }
    const std::vector<int> &selectors() const { return selectors_; }
    const std::vector<double> &angles() const { return angles_; }

    /// Local matrix on the targets (MultiplexedRy: not defined, use realize()).
    const Eigen::MatrixXcd &matrix() const { return matrix_; }

    /// Dense 2^n x 2^n matrix of the gate on an n-qubit system.
    Eigen::MatrixXcd realize(int qubit_count) const;

    int max_qubit() const;

   private:
    GateOp() = default;

    GateKind kind_ = GateKind::kUnitary;
    std::vector<int> targets_;
    std::vector<int> controls_;
    std::uint64_t pattern_ = 0;
    std::vector<int> selectors_;
    std::vector<double> angles_;
    Eigen::MatrixXcd matrix_;
};

using Circuit = std::vector<GateOp>;

Eigen::Matrix2cd ry_matrix(double theta);

/// Applies `g` in place. Throws DomainError for out-of-range or overlapping qubits.
void apply_gate(Statevector &sv, const GateOp &g);

/// Value form of apply_gate.
Statevector applied(Statevector sv, const GateOp &g);

void apply_circuit(Statevector &sv, std::span<const GateOp> circuit);

/// Runs `circuit` on |0...0> of the given register layout.
Statevector run_circuit(const RegisterSpec &layout, std::span<const GateOp> circuit);

/// max |U^dagger U - I|.
double unitarity_defect(const Eigen::MatrixXcd &u);

}  // namespace qrff

#endif  // QRFF_GATES_H_
