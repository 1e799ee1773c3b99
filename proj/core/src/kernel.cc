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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <utility>

#include "qrff/errors.h"

namespace qrff {
namespace {

void require_finite(const Eigen::Ref<const Eigen::VectorXd> &v, const char *what) {
    if (!v.allFinite()) {
        throw DomainError(std::string(what) + " has a non-finite coordinate");
    }
}

constexpr double kJitter = 1e-10;
constexpr double kSingularPivot = 1e-13;

}  // namespace

void KernelHyper::validate() const {
    if (!std::isfinite(signal_std) || signal_std <= 0) {
        throw DomainError("signal_std must be positive and finite");
    }
    if (!std::isfinite(length_scale) || length_scale <= 0) {
        throw DomainError("length_scale must be positive and finite");
    }
    if (!std::isfinite(noise_std) || noise_std < 0) {
        throw DomainError("noise_std must be nonnegative and finite");
    }
}

void Dataset::validate() const {
    if (inputs.rows() < 1) {
        throw DomainError("dataset must contain at least one point");
    }
    if (inputs.cols() < 1) {
        throw DomainError("dataset inputs must have dimension >= 1");
    }
    if (inputs.rows() != targets.size()) {
        throw DomainError("dataset inputs and targets differ in length");
    }
    if (!inputs.allFinite() || !targets.allFinite()) {
        throw DomainError("dataset contains non-finite values");
    }
}

double rbf_kernel(const Eigen::Ref<const Eigen::VectorXd> &a, const Eigen::Ref<const Eigen::VectorXd> &b,
                  const KernelHyper &h) {
    if (a.size() != b.size()) {
        throw DomainError("rbf_kernel: dimension mismatch");
    }
    require_finite(a, "rbf_kernel argument");
    require_finite(b, "rbf_kernel argument");
    const double l2 = h.length_scale * h.length_scale;
    return h.signal_variance() * std::exp(-(a - b).squaredNorm() / (2.0 * l2));
}

Eigen::MatrixXd gram_matrix(const Eigen::Ref<const Eigen::MatrixXd> &points, const KernelHyper &h) {
    h.validate();
    const Eigen::Index n = points.rows();
    if (n < 1) {
        throw DomainError("gram_matrix needs at least one point");
    }
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = h.signal_variance();
        for (Eigen::Index j = 0; j < i; ++j) {
            k(i, j) = k(j, i) = rbf_kernel(points.row(i).transpose(), points.row(j).transpose(), h);
        }
    }
    return k;
}

double spectral_density(const Eigen::Ref<const Eigen::VectorXd> &omega, const KernelHyper &h) {
    h.validate();
    require_finite(omega, "spectral_density frequency");
    const double l2 = h.length_scale * h.length_scale;
    const double d = static_cast<double>(omega.size());
    return h.signal_variance() * std::pow(2.0 * std::numbers::pi * l2, d / 2.0) *
           std::exp(-0.5 * l2 * omega.squaredNorm());
}

ExactGp::ExactGp(Dataset data, KernelHyper h) : data_(std::move(data)), hyper_(h) {
    hyper_.validate();
    data_.validate();

    Eigen::MatrixXd system = gram_matrix(data_.inputs, hyper_);
    system.diagonal().array() += hyper_.noise_variance();

    const double sf2 = hyper_.signal_variance();
    auto singular = [&](const Eigen::LLT<Eigen::MatrixXd> &llt) {
        if (llt.info() != Eigen::Success) return true;
        const double min_pivot = llt.matrixLLT().diagonal().array().square().minCoeff();
        return hyper_.noise_std == 0.0 && min_pivot < kSingularPivot * sf2;
    };

    chol_.compute(system);
    if (singular(chol_)) {
        if (hyper_.noise_std == 0.0) {
            throw NumericalError("K + sigma_n^2 I is singular (sigma_n = 0 with duplicate or near-duplicate inputs)");
        }
        std::cerr << "qrff: Cholesky of K + sigma_n^2 I failed; retrying with diagonal jitter " << kJitter * sf2
                  << "\n";
        system.diagonal().array() += kJitter * sf2;
        chol_.compute(system);
        if (chol_.info() != Eigen::Success) {
            throw NumericalError("K + sigma_n^2 I is not positive definite even after jitter");
        }
        jitter_applied_ = true;
    }
    alpha_ = chol_.solve(data_.targets);
}

Posterior ExactGp::predict(const Eigen::Ref<const Eigen::VectorXd> &x_star) const {
    if (x_star.size() != data_.dim()) {
        throw DomainError("query dimension does not match dataset dimension");
    }
    require_finite(x_star, "query point");
    const Eigen::Index n = data_.size();
    Eigen::VectorXd k_star(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k_star(i) = rbf_kernel(data_.inputs.row(i).transpose(), x_star, hyper_);
    }
    Posterior out;
    out.mean = k_star.dot(alpha_);
    const Eigen::VectorXd v = chol_.matrixL().solve(k_star);
    out.variance = std::max(0.0, hyper_.signal_variance() - v.squaredNorm());
    return out;
}

Posterior exact_posterior(const Dataset &ds, const KernelHyper &h, const Eigen::Ref<const Eigen::VectorXd> &x_star) {
    return ExactGp(ds, h).predict(x_star);
}

}  // namespace qrff
