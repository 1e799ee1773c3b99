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

#include "qrff/kernel.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "exact_gp_fixture.h"
#include "oracles.h"
#include "qrff/errors.h"
#include "qrff/rng.h"

namespace qrff {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd vec1(double v) { return VectorXd::Constant(1, v); }

Dataset sine_dataset(Eigen::Index n, double noise_free_offset = 0.0) {
    Dataset ds;
    ds.inputs = VectorXd::LinSpaced(n, 0.0, 2.0 * std::numbers::pi);
    ds.targets = ds.inputs.col(0).array().sin() + noise_free_offset;
    return ds;
}

TEST(KernelHyper, Validation) {
    EXPECT_NO_THROW((KernelHyper{1.0, 1.0, 0.0}.validate()));
    EXPECT_THROW((KernelHyper{0.0, 1.0, 0.1}.validate()), DomainError);
    EXPECT_THROW((KernelHyper{1.0, -1.0, 0.1}.validate()), DomainError);
    EXPECT_THROW((KernelHyper{1.0, 1.0, -0.1}.validate()), DomainError);
    EXPECT_THROW((KernelHyper{1.0, NAN, 0.1}.validate()), DomainError);
}

TEST(Dataset, Validation) {
    Dataset ds{MatrixXd::Zero(3, 1), VectorXd::Zero(2)};
    EXPECT_THROW(ds.validate(), DomainError);
    ds.targets = VectorXd::Zero(3);
    EXPECT_NO_THROW(ds.validate());
    ds.inputs(1, 0) = INFINITY;
    EXPECT_THROW(ds.validate(), DomainError);
    EXPECT_THROW((Dataset{MatrixXd::Zero(0, 1), VectorXd::Zero(0)}.validate()), DomainError);
}

TEST(RbfKernel, Values) {
    const KernelHyper h{1.5, 1.0, 0.1};
    EXPECT_DOUBLE_EQ(rbf_kernel(vec1(0.3), vec1(0.3), h), 2.25);
    EXPECT_NEAR(rbf_kernel(vec1(0.0), vec1(1.0), h), 1.364693984, 1e-9);
    EXPECT_NEAR(rbf_kernel(vec1(0.0), vec1(1.0), h), 2.25 * std::exp(-0.5), 1e-15);
}

TEST(RbfKernel, SymmetricOnRandomPairs) {
    Rng rng = make_rng(1);
    std::normal_distribution<double> n01;
    const KernelHyper h{1.2, 0.7, 0.0};
    for (int t = 0; t < 50; ++t) {
        VectorXd a(3), b(3);
        for (int k = 0; k < 3; ++k) {
            a(k) = n01(rng);
            b(k) = n01(rng);
        }
        EXPECT_EQ(rbf_kernel(a, b, h), rbf_kernel(b, a, h));
    }
}

TEST(RbfKernel, DimensionMismatch) {
    EXPECT_THROW(rbf_kernel(VectorXd::Zero(2), VectorXd::Zero(3), KernelHyper{}), DomainError);
}

TEST(GramMatrix, SmallCases) {
    const KernelHyper h{1.5, 1.0, 0.0};
    const MatrixXd one = gram_matrix(MatrixXd::Constant(1, 1, 0.4), h);
    ASSERT_EQ(one.rows(), 1);
    EXPECT_DOUBLE_EQ(one(0, 0), 2.25);

    const MatrixXd dup = gram_matrix(MatrixXd::Constant(2, 1, 0.4), h);
    EXPECT_TRUE(dup.isApprox(2.25 * MatrixXd::Ones(2, 2)));
    Eigen::FullPivLU<MatrixXd> lu(dup);
    EXPECT_EQ(lu.rank(), 1);
}

TEST(GramMatrix, PositiveSemidefiniteProperty) {
    Rng rng = make_rng(2);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 20; ++t) {
        const KernelHyper h{0.5 + t * 0.1, 0.3 + t * 0.05, 0.0};
        MatrixXd pts(16, 2);
        for (auto &v : pts.reshaped()) v = u(rng);
        const MatrixXd k = gram_matrix(pts, h);
        EXPECT_TRUE(k.isApprox(k.transpose(), 0.0));
        const double lo = Eigen::SelfAdjointEigenSolver<MatrixXd>(k).eigenvalues().minCoeff();
        EXPECT_GE(lo, -1e-10 * h.signal_variance());
    }
    const MatrixXd k16 = gram_matrix(sine_dataset(16).inputs, KernelHyper{1.5, 1.0, 0.1});
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<MatrixXd>(k16).eigenvalues().minCoeff(), -1e-10);
}

TEST(SpectralDensity, ClosedForm) {
    const KernelHyper h{1.5, 1.0, 0.0};
    EXPECT_NEAR(spectral_density(vec1(0.0), h), 2.25 * std::sqrt(2.0 * std::numbers::pi), 1e-12);
    EXPECT_NEAR(spectral_density(vec1(0.0), h), 5.639913618, 1e-9);
    for (double w : {0.1, 0.7, 2.5}) {
        EXPECT_EQ(spectral_density(vec1(w), h), spectral_density(vec1(-w), h));
    }
}

TEST(SpectralDensity, QuadratureRecoversKernel) {
    for (const KernelHyper h : {KernelHyper{1.5, 1.0, 0.0}, KernelHyper{0.8, 0.6, 0.0}}) {
        EXPECT_NEAR(testing::kernel_from_spectral_density(0.0, h), h.signal_variance(), 1e-6);
        for (double tau = -5.0 * h.length_scale; tau <= 5.0 * h.length_scale; tau += 0.25 * h.length_scale) {
            const double k = rbf_kernel(vec1(0.0), vec1(tau), h);
            const double q = testing::kernel_from_spectral_density(tau, h);
            EXPECT_LE(std::abs(q - k), 1e-6 * std::max(k, 1e-300) + 1e-14) << "tau = " << tau;
        }
    }
}

TEST(ExactPosterior, MatchesDenseFixture) {
    const Dataset ds = sine_dataset(16);
    const ExactGp gp(ds, KernelHyper{1.5, 1.0, 0.1});
    for (const auto &row : testing::kExactFixture) {
        const Posterior p = gp.predict(vec1(row[0]));
        EXPECT_NEAR(p.mean, row[1], 1e-10);
        EXPECT_NEAR(p.variance, row[2], 1e-10);
    }
}

TEST(ExactPosterior, PriorRecoveryFarFromData) {
    const Dataset ds = sine_dataset(16);
    const KernelHyper h{1.5, 1.0, 0.1};
    const Posterior p = exact_posterior(ds, h, vec1(100.0));
    EXPECT_NEAR(p.mean, 0.0, 1e-12);
    EXPECT_NEAR(p.variance, h.signal_variance(), 1e-12);
}

TEST(ExactPosterior, InterpolationLimit) {
    const Dataset ds = sine_dataset(8);
    const KernelHyper h{1.0, 1.0, 1e-6};
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
        const Posterior p = exact_posterior(ds, h, ds.inputs.row(i).transpose());
        EXPECT_NEAR(p.mean, ds.targets(i), 1e-6);
    }
}

TEST(ExactPosterior, VarianceBoundsProperty) {
    Rng rng = make_rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    const KernelHyper h{1.3, 0.8, 0.05};
    Dataset ds{MatrixXd(12, 1), VectorXd(12)};
    for (auto &v : ds.inputs.reshaped()) v = u(rng);
    for (auto &v : ds.targets) v = u(rng);
    const ExactGp gp(ds, h);
    for (int t = 0; t < 200; ++t) {
        const Posterior p = gp.predict(vec1(u(rng) * 1.5));
        EXPECT_GE(p.variance, -1e-10);
        EXPECT_LE(p.variance, h.signal_variance() + 1e-10);
    }
}

TEST(ExactPosterior, PermutationInvariance) {
    Dataset ds = sine_dataset(10);
    ds.targets += VectorXd::LinSpaced(10, -0.1, 0.1);
    const KernelHyper h{1.5, 1.0, 0.1};
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(10);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + 10, make_rng(4));
    const Dataset shuffled{perm * ds.inputs, perm * ds.targets};
    for (double x : {0.1, 1.7, 3.3, 5.9}) {
        const Posterior a = exact_posterior(ds, h, vec1(x));
        const Posterior b = exact_posterior(shuffled, h, vec1(x));
        EXPECT_NEAR(a.mean, b.mean, 1e-12);
        EXPECT_NEAR(a.variance, b.variance, 1e-12);
    }
}

TEST(ExactPosterior, DuplicateInputsNeedJitterOnlyWithoutNoise) {
    Dataset ds{MatrixXd::Constant(3, 1, 0.5), VectorXd::Constant(3, 1.0)};
    const ExactGp noisy(ds, KernelHyper{1.0, 1.0, 0.1});
    EXPECT_FALSE(noisy.jitter_applied());
    EXPECT_THROW(ExactGp(ds, KernelHyper{1.0, 1.0, 0.0}), NumericalError);
}

TEST(ExactPosterior, ArbitraryDimension) {
    Dataset ds{MatrixXd(3, 2), VectorXd(3)};
    ds.inputs << 0, 0, 1, 0, 0, 1;
    ds.targets << 1, 2, 3;
    const KernelHyper h{1.0, 1.0, 0.1};
    const Posterior p = exact_posterior(ds, h, Eigen::Vector2d(0.5, 0.5));
    // Direct solve.
    MatrixXd k = gram_matrix(ds.inputs, h) + 0.01 * MatrixXd::Identity(3, 3);
    VectorXd ks(3);
    for (int i = 0; i < 3; ++i) ks(i) = rbf_kernel(ds.inputs.row(i).transpose(), Eigen::Vector2d(0.5, 0.5), h);
    EXPECT_NEAR(p.mean, ks.dot(k.inverse() * ds.targets), 1e-12);
    EXPECT_NEAR(p.variance, 1.0 - ks.dot(k.inverse() * ks), 1e-12);
    EXPECT_THROW(exact_posterior(ds, h, vec1(0.0)), DomainError);
}

}  // namespace
}  // namespace qrff
