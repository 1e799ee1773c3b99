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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qrff/errors.h"
#include "qrff/measurement.h"
#include "qrff/rng.h"

namespace qrff {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd circuit_matrix(const Circuit &c, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatrixXcd out(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        VectorXcd e = VectorXcd::Zero(dim);
        e(col) = 1.0;
        Statevector sv = Statevector::from_amplitudes({{"r", n}}, e);
        apply_circuit(sv, c);
        out.col(col) = sv.amplitudes();
    }
    return out;
}

MatrixXcd random_unitary(int dim, Rng &rng) {
    std::normal_distribution<double> n01;
    MatrixXcd z(dim, dim);
    for (auto &c : z.reshaped()) c = Complex(n01(rng), n01(rng));
    return Eigen::HouseholderQR<MatrixXcd>(z).householderQ();
}

/// One-qubit target in |1> under diag(1, e^{2 pi i phase}).
Statevector phase_eigenstate() {
    Statevector sv({{"t", 1}});
    apply_gate(sv, GateOp::x(0));
    return sv;
}

MatrixXcd phase_unitary(double phase) {
    MatrixXcd u = MatrixXcd::Identity(2, 2);
    u(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi * phase);
    return u;
}

TEST(Qft, MatchesDenseDft) {
    for (int n = 1; n <= 6; ++n) {
        const Register reg{"r", 0, n};
        const MatrixXcd f = testing::dft_matrix(n);
        EXPECT_LE((circuit_matrix(qft_circuit(reg), n) - f).cwiseAbs().maxCoeff(), 1e-12) << "n = " << n;
        EXPECT_LE((circuit_matrix(inverse_qft_circuit(reg), n) - f.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Qpe, DyadicPhaseIsExact) {
    Statevector sv = phase_eigenstate();
    const Register e = qpe(sv, phase_unitary(0.25), "t", 3);
    EXPECT_EQ(e.width, 3);
    EXPECT_NEAR(sv.probabilities("e")[0b010], 1.0, 1e-12);
}

TEST(Qpe, ZeroPhaseReadsZero) {
    for (int tau : {1, 4, 9}) {
        Statevector sv({{"t", 2}});
        qpe(sv, MatrixXcd::Identity(4, 4), "t", tau);
        EXPECT_NEAR(sv.probabilities("e")[0], 1.0, 1e-12);
    }
}

TEST(Qpe, BinMassesMatchAnalyticKernel) {
    for (double phase : {0.1, 0.3337, 0.71, 0.999}) {
        const int tau = 7;
        Statevector sv = phase_eigenstate();
        qpe(sv, phase_unitary(phase), "t", tau);
        const std::vector<double> p = sv.probabilities("e");
        for (std::uint64_t b = 0; b < p.size(); ++b) {
            EXPECT_NEAR(p[b], testing::qpe_bin_probability(phase, b, tau), 1e-12) << "phase " << phase << " bin " << b;
        }
    }
}

TEST(Qpe, RandomTwoQubitUnitaryModalBin) {
    Rng rng = make_rng(19);
    for (int t = 0; t < 5; ++t) {
        const MatrixXcd u = random_unitary(4, rng);
        Eigen::ComplexEigenSolver<MatrixXcd> es(u);
        for (Eigen::Index k = 0; k < 4; ++k) {
            double phase = std::arg(es.eigenvalues()(k)) / (2.0 * std::numbers::pi);
            if (phase < 0) phase += 1.0;
            Statevector sv = Statevector::from_amplitudes({{"t", 2}}, es.eigenvectors().col(k).normalized());
            qpe(sv, u, "t", 8);
            const std::vector<double> p = sv.probabilities("e");
            const auto mode = static_cast<std::int64_t>(std::max_element(p.begin(), p.end()) - p.begin());
            const std::int64_t expect = std::llround(phase * 256.0) % 256;
            std::int64_t gap = std::abs(mode - expect);
            gap = std::min(gap, 256 - gap);
            EXPECT_LE(gap, 1);
        }
    }
}

TEST(Qpe, InverseRestoresInputOnExactPhases) {
    Rng rng = make_rng(23);
    std::normal_distribution<double> n01;
    // Unitary with dyadic eigenphases in a random basis.
    const MatrixXcd q = random_unitary(4, rng);
    VectorXcd d(4);
    const double phases[] = {0.0, 0.125, 0.5, 0.8125};
    for (int k = 0; k < 4; ++k) d(k) = std::polar(1.0, 2.0 * std::numbers::pi * phases[k]);
    const MatrixXcd u = q * d.asDiagonal() * q.adjoint();
    VectorXcd v(4);
    for (auto &c : v) c = Complex(n01(rng), n01(rng));
    const Statevector input = Statevector::from_amplitudes({{"t", 2}}, v.normalized());

    Statevector sv = input;
    qpe(sv, u, "t", 4);
    inverse_qpe(sv, repeated_squaring(u), "t", "e");
    EXPECT_NEAR(branch_probability(sv, "e", 0), 1.0, 1e-10);
    sv.discard_register("e");
    EXPECT_GE(fidelity(sv, input), 1.0 - 1e-9);
}

TEST(Qpe, RepeatedSquaring) {
    Rng rng = make_rng(29);
    const MatrixXcd u = random_unitary(2, rng);
    const UnitaryPower p = repeated_squaring(u);
    MatrixXcd acc = MatrixXcd::Identity(2, 2);
    for (int k = 0; k < 13; ++k) {
        EXPECT_LE((p(static_cast<std::uint64_t>(k)) - acc).cwiseAbs().maxCoeff(), 1e-12);
        acc = acc * u;
    }
}

TEST(Qpe, Errors) {
    Statevector sv({{"t", 1}});
    EXPECT_THROW(qpe(sv, MatrixXcd::Identity(4, 4), "t", 3), DomainError);
    EXPECT_THROW(qpe(sv, MatrixXcd::Identity(2, 2), "t", 0), DomainError);
    EXPECT_THROW(qpe(sv, MatrixXcd::Identity(2, 2), "nope", 2), DomainError);
    EXPECT_THROW(qpe(sv, MatrixXcd::Identity(2, 2), "t", 26), CapacityError);
}

}  // namespace
}  // namespace qrff
