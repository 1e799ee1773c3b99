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

// Exact Gaussian process regression with the squared-exponential kernel.
//
// The kernel is k(a, b) = sigma_f^2 exp(-|a - b|^2 / (2 l^2)) and the posterior at
// a query x* is
//
//   mean     = k*^T (K + sigma_n^2 I)^{-1} y
//   variance = k(x*, x*) - k*^T (K + sigma_n^2 I)^{-1} k*
//
// Everything here is a pure function of immutable inputs.

#ifndef QRFF_KERNEL_H_
#define QRFF_KERNEL_H_

#include <Eigen/Dense>

namespace qrff {

struct KernelHyper {
    double signal_std = 1.0;    // sigma_f (a.k.a. sigma_0)
    double length_scale = 1.0;  // l
    double noise_std = 0.0;     // sigma_n

    double signal_variance() const { return signal_std * signal_std; }
    double noise_variance() const { return noise_std * noise_std; }

    /// Throws DomainError unless sigma_f > 0, l > 0, sigma_n >= 0 (all finite).
    void validate() const;
};

/// N observations in d dimensions. Row i of `inputs` is x_i.
struct Dataset {
    Eigen::MatrixXd inputs;
    Eigen::VectorXd targets;

    Eigen::Index size() const { return inputs.rows(); }
    Eigen::Index dim() const { return inputs.cols(); }

    void validate() const;
};

struct Posterior {
    double mean = 0.0;
    double variance = 0.0;
};

double rbf_kernel(const Eigen::Ref<const Eigen::VectorXd> &a, const Eigen::Ref<const Eigen::VectorXd> &b,
                  const KernelHyper &h);

/// K_ij = k(x_i, x_j) over the rows of `points`.
Eigen::MatrixXd gram_matrix(const Eigen::Ref<const Eigen::MatrixXd> &points, const KernelHyper &h);

/// Fourier transform of the kernel in the angular convention
/// k(tau) = (2 pi)^{-d} \int S(w) exp(i w^T tau) dw, i.e.
/// S(w) = sigma_f^2 (2 pi l^2)^{d/2} exp(-l^2 |w|^2 / 2).
double spectral_density(const Eigen::Ref<const Eigen::VectorXd> &omega, const KernelHyper &h);

/// Factorized training system, reusable across many queries.
class ExactGp {
   public:
    /// Factorizes K + sigma_n^2 I with Cholesky. If that fails and sigma_n > 0 a
    /// diagonal jitter of 1e-10 sigma_f^2 is added once (logged to stderr). With
    /// sigma_n == 0 a singular system raises NumericalError.
    ExactGp(Dataset data, KernelHyper h);

    Posterior predict(const Eigen::Ref<const Eigen::VectorXd> &x_star) const;

    const Dataset &data() const { return data_; }
    const KernelHyper &hyper() const { return hyper_; }
    bool jitter_applied() const { return jitter_applied_; }

   private:
    Dataset data_;
    KernelHyper hyper_;
    Eigen::LLT<Eigen::MatrixXd> chol_;
    Eigen::VectorXd alpha_;  // (K + sigma_n^2 I)^{-1} y
    bool jitter_applied_ = false;
};

Posterior exact_posterior(const Dataset &ds, const KernelHyper &h, const Eigen::Ref<const Eigen::VectorXd> &x_star);

}  // namespace qrff

#endif  // QRFF_KERNEL_H_
