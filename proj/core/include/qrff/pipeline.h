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

// Quantum-assisted random-Fourier-feature GP regression, simulated exactly.
//
// Stages:
//   1. Encoding. The scaled design matrix X (N x 2M) is loaded as
//        |psi_X> = sum_{m,j} X[j, m] / |X|_F |m>|j>
//      by a uniform superposition over the valid (frequency, row) indices and one
//      multi-controlled Ry(2 pi s_r . x_j) per pair acting on the cos/sin qubit
//      (bit 0 of the column register m).
//   2. Spectral extraction. rho = Tr_j |psi_X><psi_X| = X^T X / |X|_F^2 is
//      exponentiated exactly and phase estimation with exp(+i rho t),
//      t = 2 pi / delta_R, writes bin b ~ lambda~^2 2^tau / delta_R into the
//      eigenvalue register e, where lambda~ = lambda / |X|_F.
//   3. Inversion. An ancilla is rotated by a sine that depends on the decoded bin
//      (c1 / (l^2 + s^2) for the mean, c2 / (l sqrt(l^2 + s^2)) for the variance,
//      s^2 = sigma_n^2 / |X|_F^2), post-selected on |1>, and the eigenvalue
//      register is uncomputed by inverse phase estimation and post-selected on |0>.
//   4. Readout. A Hadamard test against |phi*>|y> gives the mean; a SWAP test
//      between the column register and |phi*> gives the spectral variance.
//
// Scale recovery, with p the product of both post-selection probabilities:
//   mean     = sqrt(p) / c1 * |phi*| |y| / |X|_F * Re<phi* y | psi_1>
//   variance = sigma_n^2 * p / c2^2 * |phi*|^2 / |X|_F^2 * overlap^2 + |phi*_perp|^2
// where phi*_perp is the part of phi* outside the retained right-singular space.

#ifndef QRFF_PIPELINE_H_
#define QRFF_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qrff/gates.h"
#include "qrff/qpe.h"
#include "qrff/rff.h"
#include "qrff/statevector.h"

namespace qrff {

inline constexpr const char *kColumnRegister = "m";
inline constexpr const char *kRowRegister = "j";
inline constexpr const char *kEigenRegister = "e";
inline constexpr const char *kInversionAncilla = "a";

/// ceil(log2(n)) for n >= 1.
int qubits_for(std::uint64_t n);

/// Gates preparing the uniform superposition over |0>, ..., |count - 1> on
/// `qubits` (little-endian). Hadamards when count fills the register, otherwise
/// a binary tree of multi-controlled Ry rotations.
Circuit uniform_superposition_circuit(const std::vector<int> &qubits, std::uint64_t count);

struct EncodingStep {
    Eigen::Index row = 0;        // j
    Eigen::Index frequency = 0;  // r
    std::uint64_t control_pattern = 0;
    double theta = 0.0;  // 2 pi s_r . x_j
};

struct EncodingPlan {
    int col_qubits = 0;  // ceil(log2 2M)
    int row_qubits = 0;  // ceil(log2 N)
    Eigen::Index rows = 0;
    Eigen::Index features = 0;
    double frobenius_norm = 0.0;
    std::vector<EncodingStep> schedule;

    std::uint64_t padded_rows() const { return std::uint64_t{1} << row_qubits; }
    std::uint64_t padded_columns() const { return std::uint64_t{1} << col_qubits; }
    RegisterSpec layout() const;
    /// Control qubits of every schedule step: frequency bits of m, then all of j.
    std::vector<int> control_qubits() const;
    Circuit circuit() const;
};

EncodingPlan plan_encoding(const FeatureModel &fm);

Statevector prepare_data_state(const EncodingPlan &plan);

/// vec(X) / |X|_F in the (m, j) layout of the encoded state; zero on padding.
Eigen::VectorXcd vectorized_design(const FeatureModel &fm);

/// Default eigenvalue-register scale: 1.05 times the largest normalized eigenvalue.
double default_delta_r(const FeatureModel &fm);

struct SpectralRegisters {
    Statevector state;  // registers m, j, e
    int tau = 0;
    double delta_r = 0.0;
    double time = 0.0;        // 2 pi / delta_R
    Eigen::MatrixXcd rho;     // reduced column-register state
    Eigen::VectorXd lambda_tilde;   // classical normalized singular values
    Eigen::MatrixXd v_padded;       // right singular vectors, padded to 2^col_qubits
    UnitaryPower power;             // p -> exp(+i rho t p)

    std::uint64_t bins() const { return std::uint64_t{1} << tau; }
    /// lambda^2 estimate of bin b.
    double decode(std::uint64_t bin) const { return static_cast<double>(bin) * delta_r / static_cast<double>(bins()); }
    /// round(lambda~_r^2 2^tau / delta_R) for each retained component.
    std::vector<std::uint64_t> predicted_bins() const;
};

/// Runs qPCA + phase estimation on the encoded state. Throws ConfigError if
/// delta_R <= lambda~_max^2 (phase wraparound).
SpectralRegisters spectral_extraction(Statevector encoded, const FeatureModel &fm, int tau, double delta_r);

struct InversionConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double sigma_tilde2 = 0.0;     // sigma_n^2 / |X|_F^2
    double lambda_hat_min2 = 0.0;  // decoded bin of the smallest retained component
    double lambda_hat_max2 = 0.0;

    /// Rotation sine for the mean branch at decoded value lambda^2 (bin 0 -> 0).
    double mean_sine(double lambda2) const;
    double variance_sine(double lambda2) const;
};

/// Constants from the decoded bins of the retained components. Throws
/// ResolutionError if a retained component decodes to bin 0.
InversionConstants make_inversion_constants(const SpectralRegisters &sr, const FeatureModel &fm);

struct InvertedState {
    Statevector state;              // registers m, j
    double p_ancilla = 0.0;         // p(1) or p(2)
    double p_uncompute = 0.0;       // P(e = 0) after inverse phase estimation
    double acceptance() const { return p_ancilla * p_uncompute; }
};

InvertedState invert_for_mean(const SpectralRegisters &sr, const InversionConstants &ic);
InvertedState invert_for_variance(const SpectralRegisters &sr, const InversionConstants &ic);

enum class EstimatorMode { kExact, kSampled };

struct PipelineConfig {
    int tau = 13;
    std::optional<double> delta_r;  // default_delta_r when unset
    EstimatorMode mode = EstimatorMode::kExact;
    std::uint64_t shots = 1'000'000;
    std::uint64_t seed = 0;
};

struct PosteriorEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double variance_unclamped = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    std::uint64_t shots_used = 0;
    std::uint64_t shots_rejected = 0;
    EstimatorMode mode = EstimatorMode::kExact;
};

/// Runs stages 1-3 once; per-query readouts reuse the inverted states. Readouts
/// are const and may run concurrently. Each query passes a stream id from which
/// its shot seeds are derived.
class QuantumGp {
   public:
    QuantumGp(const FeatureModel &fm, PipelineConfig cfg);

    PosteriorEstimate estimate_mean(const Eigen::Ref<const Eigen::VectorXd> &y,
                                    const Eigen::Ref<const Eigen::VectorXd> &x_star, std::uint64_t stream = 0) const;
    PosteriorEstimate estimate_variance(const Eigen::Ref<const Eigen::VectorXd> &x_star,
                                        std::uint64_t stream = 0) const;

    /// Same, from a query feature vector already scaled and padded to 2^col_qubits.
    PosteriorEstimate mean_from_features(const Eigen::Ref<const Eigen::VectorXd> &y,
                                         const Eigen::Ref<const Eigen::VectorXd> &padded_phi,
                                         std::uint64_t stream = 0) const;
    PosteriorEstimate variance_from_features(const Eigen::Ref<const Eigen::VectorXd> &padded_phi,
                                             std::uint64_t stream = 0) const;

    Eigen::VectorXd padded_features(const Eigen::Ref<const Eigen::VectorXd> &x_star) const;

    const EncodingPlan &plan() const { return plan_; }
    const SpectralRegisters &spectral() const { return spectral_; }
    const InversionConstants &constants() const { return constants_; }
    const InvertedState &mean_branch() const { return mean_branch_; }
    const InvertedState &variance_branch() const { return variance_branch_; }
    const PipelineConfig &config() const { return cfg_; }

   private:
    const FeatureModel *fm_;
    PipelineConfig cfg_;
    EncodingPlan plan_;
    SpectralRegisters spectral_;
    InversionConstants constants_;
    InvertedState mean_branch_;
    InvertedState variance_branch_;
};

PosteriorEstimate estimate_mean(const FeatureModel &fm, const Eigen::Ref<const Eigen::VectorXd> &y,
                                const Eigen::Ref<const Eigen::VectorXd> &x_star, const PipelineConfig &cfg);
PosteriorEstimate estimate_variance(const FeatureModel &fm, const Eigen::Ref<const Eigen::VectorXd> &x_star,
                                    const PipelineConfig &cfg);

}  // namespace qrff

#endif  // QRFF_PIPELINE_H_
