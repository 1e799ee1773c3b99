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

// Random Fourier feature approximation of the squared-exponential kernel.
//
// Frequencies s_r are drawn from the normalized spectral density written in the
// 2*pi convention, so each coordinate is Normal(0, (2 pi l)^-2). A point maps to
//
//   phi(x) = (cos 2pi s_1.x, sin 2pi s_1.x, ..., cos 2pi s_M.x, sin 2pi s_M.x)
//
// and the design matrix stacks sqrt(sigma_0^2 / M) phi(x_i)^T as rows, so that
// X X^T approximates K and the weight-space posterior
//
//   mean     = phi*^T (X^T X + sigma_n^2 I)^{-1} X^T y
//   variance = sigma_n^2 phi*^T (X^T X + sigma_n^2 I)^{-1} phi*
//
// is evaluated through the thin SVD X = U diag(lambda) V^T.

#ifndef QRFF_RFF_H_
#define QRFF_RFF_H_

#include <cstdint>

#include <Eigen/Dense>

#include "qrff/kernel.h"

namespace qrff {

struct FrequencySet {
    Eigen::MatrixXd frequencies;  // M x d, row r is s_r
    std::uint64_t seed = 0;

    Eigen::Index count() const { return frequencies.rows(); }
    Eigen::Index dim() const { return frequencies.cols(); }
};

FrequencySet sample_frequencies(Eigen::Index count, const KernelHyper &h, Eigen::Index dim, std::uint64_t seed);

/// Unscaled feature vector of length 2M, cos/sin interleaved per frequency.
Eigen::VectorXd feature_map(const Eigen::Ref<const Eigen::VectorXd> &x, const FrequencySet &freq);

struct Svd {
    Eigen::MatrixXd u;                // N x R
    Eigen::VectorXd singular_values;  // R, descending, all > 0
    Eigen::MatrixXd v;                // 2M x R

    Eigen::Index rank() const { return singular_values.size(); }
};

/// Singular values below this fraction of the largest are dropped from the rank.
inline constexpr double kRankCutoff = 1e-12;

class FeatureModel {
   public:
    FeatureModel(FrequencySet freq, const Eigen::Ref<const Eigen::MatrixXd> &inputs, const KernelHyper &h);

    const FrequencySet &frequencies() const { return freq_; }
    const KernelHyper &hyper() const { return hyper_; }
    const Eigen::MatrixXd &inputs() const { return inputs_; }
    const Eigen::MatrixXd &design() const { return design_; }
    const Svd &svd() const { return svd_; }
    double frobenius_norm() const { return frobenius_; }

    Eigen::Index rows() const { return design_.rows(); }
    Eigen::Index feature_count() const { return freq_.count(); }
    Eigen::Index columns() const { return design_.cols(); }

    /// sqrt(sigma_0^2 / M) * phi(x), the query-side counterpart of a design row.
    Eigen::VectorXd scaled_features(const Eigen::Ref<const Eigen::VectorXd> &x) const;

   private:
    FrequencySet freq_;
    KernelHyper hyper_;
    Eigen::MatrixXd inputs_;
    Eigen::MatrixXd design_;
    double frobenius_ = 0.0;
    Svd svd_;
};

FeatureModel build_feature_model(const Dataset &ds, const FrequencySet &freq, const KernelHyper &h);

/// Reduced-rank posterior with U^T y cached for repeated queries.
class RffGp {
   public:
    RffGp(const FeatureModel &fm, Eigen::VectorXd targets);

    Posterior predict(const Eigen::Ref<const Eigen::VectorXd> &x_star) const;
    Posterior predict_features(const Eigen::Ref<const Eigen::VectorXd> &scaled_phi) const;

   private:
    const FeatureModel *fm_;
    Eigen::VectorXd uty_;
};

Posterior rff_posterior(const FeatureModel &fm, const Eigen::Ref<const Eigen::VectorXd> &y,
                        const Eigen::Ref<const Eigen::VectorXd> &x_star);

}  // namespace qrff

#endif  // QRFF_RFF_H_
