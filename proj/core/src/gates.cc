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

#include "qrff/gates.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "qrff/errors.h"

namespace qrff {
namespace {

constexpr double kUnitaryTolerance = 1e-10;

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

// Offsets of the 2^k local basis states spread over the target bit positions.
std::vector<std::uint64_t> local_offsets(const std::vector<int> &targets) {
    const std::size_t n = std::size_t{1} << targets.size();
    std::vector<std::uint64_t> out(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < targets.size(); ++k) {
            if (l >> k & 1) out[l] |= bit(targets[k]);
        }
    }
    return out;
}

void validate(const GateOp &g, int qubit_count) {
    std::set<int> seen;
    auto check = [&](int q) {
        if (q < 0 || q >= qubit_count) {
            throw DomainError("gate qubit index " + std::to_string(q) + " out of range for " +
                              std::to_string(qubit_count) + " qubits");
        }
        if (!seen.insert(q).second) {
            throw DomainError("gate uses qubit " + std::to_string(q) + " more than once");
        }
    };
    for (int q : g.targets()) check(q);
    for (int q : g.controls()) check(q);
    for (int q : g.selectors()) check(q);
}

}  // namespace

Eigen::Matrix2cd ry_matrix(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2cd m;
    m << c, -s, s, c;
    return m;
}

double unitarity_defect(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

GateOp GateOp::h(int qubit) {
    GateOp g;
    g.kind_ = GateKind::kH;
    g.targets_ = {qubit};
    const double r = std::numbers::sqrt2 / 2.0;
    g.matrix_.resize(2, 2);
    g.matrix_ << r, r, r, -r;
    return g;
}

GateOp GateOp::x(int qubit) {
    GateOp g;
    g.kind_ = GateKind::kX;
    g.targets_ = {qubit};
    g.matrix_.resize(2, 2);
    g.matrix_ << 0, 1, 1, 0;
    return g;
}

GateOp GateOp::ry(int qubit, double theta) {
    GateOp g;
    g.kind_ = GateKind::kRy;
    g.targets_ = {qubit};
    g.matrix_ = ry_matrix(theta);
    return g;
}

GateOp GateOp::phase(int qubit, double phi) {
    GateOp g;
    g.kind_ = GateKind::kPhase;
    g.targets_ = {qubit};
    g.matrix_ = Eigen::MatrixXcd::Identity(2, 2);
    g.matrix_(1, 1) = std::polar(1.0, phi);
    return g;
}

GateOp GateOp::swap(int a, int b) {
    GateOp g;
    g.kind_ = GateKind::kSwap;
    g.targets_ = {a, b};
    g.matrix_ = Eigen::MatrixXcd::Zero(4, 4);
    g.matrix_(0, 0) = g.matrix_(1, 2) = g.matrix_(2, 1) = g.matrix_(3, 3) = 1.0;
    return g;
}

GateOp GateOp::unitary(std::vector<int> targets, Eigen::MatrixXcd u) {
    const Eigen::Index dim = Eigen::Index{1} << targets.size();
    if (targets.empty() || u.rows() != dim || u.cols() != dim) {
        throw DomainError("unitary gate: matrix size does not match target count");
    }
    if (unitarity_defect(u) > kUnitaryTolerance) {
        throw DomainError("unitary gate: matrix is not unitary");
    }
    GateOp g;
    g.kind_ = GateKind::kUnitary;
    g.targets_ = std::move(targets);
    g.matrix_ = std::move(u);
    return g;
}

GateOp GateOp::multiplexed_ry(int target, std::vector<int> selectors, std::vector<double> angles) {
    if (angles.size() != (std::size_t{1} << selectors.size())) {
        throw DomainError("multiplexed Ry: need one angle per selector value");
    }
    GateOp g;
    g.kind_ = GateKind::kMultiplexedRy;
    g.targets_ = {target};
    g.selectors_ = std::move(selectors);
    g.angles_ = std::move(angles);
    return g;
}

GateOp GateOp::controlled(std::vector<int> controls, std::uint64_t pattern) const {
    if (controls.size() < 64 && (pattern >> controls.size()) != 0) {
        throw DomainError("control pattern has more bits than controls");
    }
    GateOp g = *this;
    for (std::size_t k = 0; k < controls.size(); ++k) {
        g.pattern_ |= (pattern >> k & 1) << g.controls_.size();
        g.controls_.push_back(controls[k]);
    }
    return g;
}

int GateOp::max_qubit() const {
    int m = -1;
    for (int q : targets_) m = std::max(m, q);
    for (int q : controls_) m = std::max(m, q);
    for (int q : selectors_) m = std::max(m, q);
    return m;
}

void apply_gate(Statevector &sv, const GateOp &g) {
    validate(g, sv.qubit_count());
    Eigen::VectorXcd &a = sv.mutable_amplitudes();
    const std::uint64_t dim = sv.dimension();

    std::uint64_t cmask = 0;
    std::uint64_t cval = 0;
    for (std::size_t k = 0; k < g.controls().size(); ++k) {
        cmask |= bit(g.controls()[k]);
        if (g.control_pattern() >> k & 1) cval |= bit(g.controls()[k]);
    }

    if (g.kind() == GateKind::kMultiplexedRy) {
        const std::uint64_t tbit = bit(g.targets()[0]);
        std::vector<Eigen::Matrix2cd> rot;
        rot.reserve(g.angles().size());
        for (double th : g.angles()) rot.push_back(ry_matrix(th));
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & tbit) || (i & cmask) != cval) continue;
            std::uint64_t sel = 0;
            for (std::size_t k = 0; k < g.selectors().size(); ++k) {
                if (i & bit(g.selectors()[k])) sel |= std::uint64_t{1} << k;
            }
            const auto i0 = static_cast<Eigen::Index>(i);
            const auto i1 = static_cast<Eigen::Index>(i | tbit);
            const Complex v0 = a(i0);
            const Complex v1 = a(i1);
            const Eigen::Matrix2cd &r = rot[sel];
            a(i0) = r(0, 0) * v0 + r(0, 1) * v1;
            a(i1) = r(1, 0) * v0 + r(1, 1) * v1;
        }
        return;
    }

    const std::vector<std::uint64_t> offsets = local_offsets(g.targets());
    std::uint64_t tmask = 0;
    for (int q : g.targets()) tmask |= bit(q);
    const Eigen::MatrixXcd &u = g.matrix();
    const auto local = static_cast<Eigen::Index>(offsets.size());
    Eigen::VectorXcd in(local);
    Eigen::VectorXcd out(local);
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & tmask) || (base & cmask) != cval) continue;
        for (Eigen::Index l = 0; l < local; ++l) in(l) = a(static_cast<Eigen::Index>(base | offsets[l]));
        out.noalias() = u * in;
        for (Eigen::Index l = 0; l < local; ++l) a(static_cast<Eigen::Index>(base | offsets[l])) = out(l);
    }
}

Statevector applied(Statevector sv, const GateOp &g) {
    apply_gate(sv, g);
    return sv;
}

void apply_circuit(Statevector &sv, std::span<const GateOp> circuit) {
    for (const GateOp &g : circuit) apply_gate(sv, g);
}

Statevector run_circuit(const RegisterSpec &layout, std::span<const GateOp> circuit) {
    Statevector sv(layout);
    apply_circuit(sv, circuit);
    return sv;
}

Eigen::MatrixXcd GateOp::realize(int qubit_count) const {
    if (qubit_count > 12) {
        throw CapacityError("dense gate realization is limited to 12 qubits");
    }
    validate(*this, qubit_count);
    const Eigen::Index dim = Eigen::Index{1} << qubit_count;
    Eigen::MatrixXcd out(dim, dim);
    RegisterSpec layout{{"q", qubit_count}};
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e(col) = 1.0;
        Statevector sv = Statevector::from_amplitudes(layout, e);
        apply_gate(sv, *this);
        out.col(col) = sv.amplitudes();
    }
    return out;
}

}  // namespace qrff
