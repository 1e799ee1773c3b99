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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qrff/density.h"
#include "qrff/errors.h"
#include "qrff/rng.h"

namespace qrff {
namespace {

using Eigen::VectorXcd;
using Eigen::VectorXd;

Statevector random_real(const RegisterSpec &spec, Rng &rng) {
    std::normal_distribution<double> n01;
    Statevector probe(spec);
    VectorXcd v(static_cast<Eigen::Index>(probe.dimension()));
    for (auto &c : v) c = n01(rng);
    return Statevector::from_amplitudes(spec, v.normalized());
}

Statevector random_complex(const RegisterSpec &spec, Rng &rng) {
    std::normal_distribution<double> n01;
    Statevector probe(spec);
    VectorXcd v(static_cast<Eigen::Index>(probe.dimension()));
    for (auto &c : v) c = Complex(n01(rng), n01(rng));
    return Statevector::from_amplitudes(spec, v.normalized());
}

TEST(HadamardTest, ExactModeTrivialCases) {
    Rng rng = make_rng(1);
    const Statevector a = random_real({{"s", 3}}, rng);
    EXPECT_NEAR(hadamard_test(a, a, 0, 0).value, 1.0, 1e-12);
    Statevector e0({{"s", 2}});
    Statevector e1 = applied(e0, GateOp::x(1));
    EXPECT_NEAR(hadamard_test(e0, e1, 0, 0).value, 0.0, 1e-15);
}

TEST(HadamardTest, ExactModeMatchesInnerProduct) {
    Rng rng = make_rng(2);
    for (int t = 0; t < 20; ++t) {
        const Statevector a = random_real({{"s", 3}}, rng);
        const Statevector b = random_real({{"s", 3}}, rng);
        const double dot = a.amplitudes().real().dot(b.amplitudes().real());
        EXPECT_NEAR(hadamard_test(a, b, 0, 0).value, dot, 1e-10);
        const Statevector c = random_complex({{"s", 2}, {"t", 1}}, rng);
        const Statevector d = random_complex({{"s", 2}, {"t", 1}}, rng);
        EXPECT_NEAR(hadamard_test(c, d, 0, 0).value, d.amplitudes().dot(c.amplitudes()).real(), 1e-10);
    }
}

TEST(HadamardTest, CircuitFormMatchesStateForm) {
    const Circuit pa = {GateOp::ry(0, 0.4), GateOp::ry(1, -1.1), GateOp::x(1).controlled_on(0)};
    const Circuit pb = {GateOp::h(0), GateOp::ry(1, 0.3)};
    const RegisterSpec layout = {{"s", 2}};
    const double from_states = hadamard_test(run_circuit(layout, pa), run_circuit(layout, pb), 0, 0).value;
    EXPECT_NEAR(hadamard_test(layout, pa, pb, 0, 0).value, from_states, 1e-12);
}

TEST(HadamardTest, ShotNoiseScalesAsInverseRootShots) {
    Rng rng = make_rng(3);
    const Statevector a = random_real({{"s", 3}}, rng);
    const Statevector b = random_real({{"s", 3}}, rng);
    for (std::uint64_t shots : {1000u, 100000u}) {
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const double v = hadamard_test(a, b, shots, seed).value;
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / 100.0;
        const double sd = std::sqrt((sum2 - 100.0 * mean * mean) / 99.0);
        EXPECT_LE(sd, 1.2 / std::sqrt(static_cast<double>(shots)));
        EXPECT_NEAR(mean, hadamard_test(a, b, 0, 0).value, 4.0 / std::sqrt(100.0 * shots));
    }
}

TEST(SwapTest, ExactModeCases) {
    Rng rng = make_rng(4);
    const Statevector a = random_complex({{"s", 3}}, rng);
    EXPECT_NEAR(swap_test(a, a, 0, 0).value, 1.0, 1e-12);
    Statevector e0({{"s", 2}});
    const Statevector e1 = applied(e0, GateOp::x(0));
    const OverlapEstimate o = swap_test(e0, e1, 0, 0);
    EXPECT_NEAR(o.value, 0.0, 1e-15);
    EXPECT_NEAR(o.p0, 0.5, 1e-15);
    for (int t = 0; t < 20; ++t) {
        const Statevector x = random_complex({{"s", 3}}, rng);
        const Statevector y = random_complex({{"s", 3}}, rng);
        EXPECT_NEAR(swap_test(x, y, 0, 0).value, std::norm(x.amplitudes().dot(y.amplitudes())), 1e-10);
    }
}

TEST(SwapTest, SubregisterMeasuresReducedState) {
    Rng rng = make_rng(5);
    for (int t = 0; t < 10; ++t) {
        const Statevector joint = random_real({{"m", 2}, {"j", 2}}, rng);
        const Statevector ref = random_real({{"m", 2}}, rng);
        const Eigen::MatrixXcd rho = partial_trace(joint, "m").matrix;
        const double expect = (ref.amplitudes().adjoint() * rho * ref.amplitudes())(0).real();
        EXPECT_NEAR(swap_test(joint, "m", ref, 0, 0).value, expect, 1e-10);
    }
    const Statevector joint = random_real({{"m", 2}, {"j", 2}}, rng);
    EXPECT_THROW(swap_test(joint, "m", Statevector({{"m", 3}}), 0, 0), DomainError);
}

TEST(SwapTest, BinomialConcentration) {
    Rng rng = make_rng(6);
    const Statevector a = random_complex({{"s", 2}}, rng);
    const Statevector b = random_complex({{"s", 2}}, rng);
    const double exact = swap_test(a, b, 0, 0).value;
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        within += std::abs(swap_test(a, b, 1'000'000, seed).value - exact) <= 2.0 * 3.0 / 1000.0;
    }
    EXPECT_GE(within, 99);
}

TEST(SwapTest, CircuitFormAndClamp) {
    const RegisterSpec layout = {{"s", 1}};
    const Circuit pa = {GateOp::ry(0, 0.2)};
    const Circuit pb = {GateOp::ry(0, 1.3)};
    EXPECT_NEAR(swap_test(layout, pa, pb, 0, 0).value, std::pow(std::cos(1.1), 2), 1e-12);
    // Orthogonal states with few shots can give a negative raw estimate; value stays in [0, 1].
    Statevector e0({{"s", 1}});
    const Statevector e1 = applied(e0, GateOp::x(0));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const OverlapEstimate o = swap_test(e0, e1, 7, seed);
        EXPECT_GE(o.value, 0.0);
        EXPECT_LE(o.value, 1.0);
        EXPECT_NEAR(o.raw, 2.0 * std::round(o.raw * 3.5 + 3.5) / 7.0 - 1.0, 1e-12);
    }
}

}  // namespace
}  // namespace qrff
