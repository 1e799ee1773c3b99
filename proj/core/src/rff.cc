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

#include "qrff/rff.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "qrff/errors.h"
#include "qrff/rng.h"

namespace qrff {

FrequencySet sample_frequencies(Eigen::Index count, const KernelHyper &h, Eigen::Index dim, std::uint64_t seed) {
    h.validate();
    if (count < 1) {
        throw DomainError("sample_frequencies: M must be >= 1");
    }
    if (dim < 1) {
        throw DomainError("sample_frequencies: d must be >= 1");
    }
    FrequencySet out;
    out.seed = seed;
    out.frequencies.resize(count, dim);
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0 / (2.0 * std::numbers::pi * h.length_scale));
    for (Eigen::Index r = 0; r < count; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            out.frequencies(r, c) = normal(rng);
        }
    }
    return out;
}

Eigen::VectorXd feature_map(const Eigen::Ref<const Eigen::VectorXd> &x, const FrequencySet &freq) {
    if (x.size() != freq.dim()) {
        throw DomainError("feature_map: dimension mismatch");
    }
    if (!x.allFinite()) {
        throw DomainError("feature_map: non-finite input");
    }
    const Eigen::Index m = freq.count();
    Eigen::VectorXd phi(2 * m);
    for (Eigen::Index r = 0; r < m; ++r) {
        const double angle = 2.0 * std::numbers::pi * freq.frequencies.row(r).dot(x);
        phi(2 * r) = std::cos(angle);
        phi(2 * r + 1) = std::sin(angle);
    }
    return phi;
}

FeatureModel::FeatureModel(FrequencySet freq, const Eigen::Ref<const Eigen::MatrixXd> &inputs, const KernelHyper &h)
    : freq_(std::move(freq)), hyper_(h), inputs_(inputs) {
    hyper_.validate();
    if (inputs.rows() < 1 || freq_.count() < 1) {
        throw DomainError("feature model needs N >= 1 and M >= 1");
    }
    if (inputs.cols() != freq_.dim()) {
        throw DomainError("feature model: input and frequency dimensions differ");
    }
    design_.resize(inputs.rows(), 2 * freq_.count());
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
        design_.row(i) = scaled_features(inputs.row(i).transpose()).transpose();
    }
    frobenius_ = design_.norm();
    if (!(frobenius_ > 0)) {
        throw NumericalError("feature model: design matrix is identically zero");
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(design_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > kRankCutoff * s(0)) {
        ++rank;
    }
    svd_.singular_values = s.head(rank);
    svd_.u = svd.matrixU().leftCols(rank);
    svd_.v = svd.matrixV().leftCols(rank);
}

Eigen::VectorXd FeatureModel::scaled_features(const Eigen::Ref<const Eigen::VectorXd> &x) const {
    const double scale = std::sqrt(hyper_.signal_variance() / static_cast<double>(freq_.count()));
    return scale * feature_map(x, freq_);
}

FeatureModel build_feature_model(const Dataset &ds, const FrequencySet &freq, const KernelHyper &h) {
    ds.validate();
    return FeatureModel(freq, ds.inputs, h);
}

RffGp::RffGp(const FeatureModel &fm, Eigen::VectorXd targets) : fm_(&fm) {
    if (targets.size() != fm.rows()) {
        throw DomainError("rff posterior: target length differs from design rows");
    }
    if (fm.hyper().noise_std == 0.0 && fm.svd().rank() < fm.columns()) {
        throw NumericalError("rff posterior: sigma_n = 0 with a rank-deficient design");
    }
    uty_ = fm.svd().u.transpose() * targets;
}

Posterior RffGp::predict(const Eigen::Ref<const Eigen::VectorXd> &x_star) const {
    return predict_features(fm_->scaled_features(x_star));
}

Posterior RffGp::predict_features(const Eigen::Ref<const Eigen::VectorXd> &scaled_phi) const {
    const Svd &svd = fm_->svd();
    const double noise = fm_->hyper().noise_variance();
    const Eigen::VectorXd proj = svd.v.transpose() * scaled_phi;  // phi*^T V_r
    const Eigen::ArrayXd lam = svd.singular_values.array();
    const Eigen::ArrayXd denom = lam.square() + noise;

    Posterior out;
    out.mean = ((lam / denom) * proj.array() * uty_.array()).sum();
    // Components of phi* outside span(V) see (X^T X + sigma_n^2 I)^{-1} = sigma_n^{-2}.
    const double null_part = std::max(0.0, scaled_phi.squaredNorm() - proj.squaredNorm());
    out.variance = noise * (proj.array().square() / denom).sum() + null_part;
    return out;
}

Posterior rff_posterior(const FeatureModel &fm, const Eigen::Ref<const Eigen::VectorXd> &y,
                        const Eigen::Ref<const Eigen::VectorXd> &x_star) {
    return RffGp(fm, y).predict(x_star);
}

}  // namespace qrff
