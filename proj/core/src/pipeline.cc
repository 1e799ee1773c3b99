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

#include "qrff/pipeline.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "qrff/density.h"
#include "qrff/errors.h"
#include "qrff/measurement.h"
#include "qrff/overlap.h"
#include "qrff/rng.h"

namespace qrff {
namespace {

// Valid indices in [lo, lo + len) that are < count.
std::uint64_t clipped(std::uint64_t lo, std::uint64_t len, std::uint64_t count) {
    if (lo >= count) return 0;
    return std::min(len, count - lo);
}

Statevector column_state(const Eigen::Ref<const Eigen::VectorXd> &padded_phi, int col_qubits) {
    Eigen::VectorXcd amps = padded_phi.cast<Complex>();
    amps /= padded_phi.norm();
    return Statevector::from_amplitudes({{kColumnRegister, col_qubits}}, std::move(amps));
}

InvertedState invert(const SpectralRegisters &sr, const std::vector<double> &sines) {
    Statevector sv = sr.state;
    const Register &anc = sv.add_register(kInversionAncilla, 1);
    const int anc_qubit = anc.qubit(0);
    const Register &eval = sv.reg(kEigenRegister);

    std::vector<int> selectors(static_cast<std::size_t>(eval.width));
    for (int k = 0; k < eval.width; ++k) selectors[static_cast<std::size_t>(k)] = eval.qubit(k);
    std::vector<double> angles(sines.size());
    std::transform(sines.begin(), sines.end(), angles.begin(), [](double s) { return std::asin(s); });
    apply_gate(sv, GateOp::multiplexed_ry(anc_qubit, std::move(selectors), std::move(angles)));

    Postselected kept = postselect(sv, anc_qubit, 1);
    InvertedState out{std::move(kept.state), kept.probability, 0.0};
    out.state.discard_register(kInversionAncilla, 1);

    inverse_qpe(out.state, sr.power, kColumnRegister, kEigenRegister);
    Postselected back = postselect_register(out.state, kEigenRegister, 0);
    out.state = std::move(back.state);
    out.p_uncompute = back.probability;
    out.state.discard_register(kEigenRegister, 0);
    return out;
}

}  // namespace

int qubits_for(std::uint64_t n) {
    if (n == 0) throw DomainError("qubits_for(0)");
    return static_cast<int>(std::bit_width(n - 1));
}

Circuit uniform_superposition_circuit(const std::vector<int> &qubits, std::uint64_t count) {
    const int w = static_cast<int>(qubits.size());
    if (count == 0 || (w < 64 && count > (std::uint64_t{1} << w))) {
        throw DomainError("uniform superposition: count does not fit the register");
    }
    Circuit c;
    if (w == 0) return c;
    if (count == (std::uint64_t{1} << w)) {
        for (int q : qubits) c.push_back(GateOp::h(q));
        return c;
    }
    for (int level = w - 1; level >= 0; --level) {
        const std::uint64_t half = std::uint64_t{1} << level;
        std::vector<int> controls(qubits.begin() + level + 1, qubits.end());
        const std::uint64_t prefixes = std::uint64_t{1} << (w - level - 1);
        for (std::uint64_t p = 0; p < prefixes; ++p) {
            const std::uint64_t base = p << (level + 1);
            const auto n0 = static_cast<double>(clipped(base, half, count));
            const auto n1 = static_cast<double>(clipped(base + half, half, count));
            if (n1 == 0.0) continue;
            const double theta = std::atan2(std::sqrt(n1), std::sqrt(n0));
            GateOp g = GateOp::ry(qubits[static_cast<std::size_t>(level)], theta);
            c.push_back(controls.empty() ? g : g.controlled(controls, p));
        }
    }
    return c;
}

RegisterSpec EncodingPlan::layout() const { return {{kColumnRegister, col_qubits}, {kRowRegister, row_qubits}}; }

std::vector<int> EncodingPlan::control_qubits() const {
    std::vector<int> out;
    for (int q = 1; q < col_qubits; ++q) out.push_back(q);
    for (int q = 0; q < row_qubits; ++q) out.push_back(col_qubits + q);
    return out;
}

Circuit EncodingPlan::circuit() const {
    std::vector<int> freq_qubits;
    for (int q = 1; q < col_qubits; ++q) freq_qubits.push_back(q);
    std::vector<int> row_qubit_list;
    for (int q = 0; q < row_qubits; ++q) row_qubit_list.push_back(col_qubits + q);

    Circuit c = uniform_superposition_circuit(freq_qubits, static_cast<std::uint64_t>(features));
    const Circuit rows_prep = uniform_superposition_circuit(row_qubit_list, static_cast<std::uint64_t>(rows));
    c.insert(c.end(), rows_prep.begin(), rows_prep.end());

    const std::vector<int> controls = control_qubits();
    for (const EncodingStep &step : schedule) {
        GateOp g = GateOp::ry(0, step.theta);
        c.push_back(controls.empty() ? g : g.controlled(controls, step.control_pattern));
    }
    return c;
}

EncodingPlan plan_encoding(const FeatureModel &fm) {
    EncodingPlan plan;
    plan.rows = fm.rows();
    plan.features = fm.feature_count();
    if (plan.rows < 1 || plan.features < 1) {
        throw DomainError("plan_encoding: empty design");
    }
    plan.col_qubits = qubits_for(static_cast<std::uint64_t>(2 * plan.features));
    plan.row_qubits = qubits_for(static_cast<std::uint64_t>(plan.rows));
    plan.frobenius_norm = fm.frobenius_norm();

    const Eigen::MatrixXd &s = fm.frequencies().frequencies;
    plan.schedule.reserve(static_cast<std::size_t>(plan.rows * plan.features));
    const int freq_bits = plan.col_qubits - 1;
    for (Eigen::Index j = 0; j < plan.rows; ++j) {
        for (Eigen::Index r = 0; r < plan.features; ++r) {
            EncodingStep step;
            step.row = j;
            step.frequency = r;
            step.control_pattern = static_cast<std::uint64_t>(r) | (static_cast<std::uint64_t>(j) << freq_bits);
            step.theta = 2.0 * std::numbers::pi * s.row(r).dot(fm.inputs().row(j));
            plan.schedule.push_back(step);
        }
    }
    return plan;
}

Statevector prepare_data_state(const EncodingPlan &plan) {
    const Circuit c = plan.circuit();
    return run_circuit(plan.layout(), c);
}

Eigen::VectorXcd vectorized_design(const FeatureModel &fm) {
    const int cq = qubits_for(static_cast<std::uint64_t>(fm.columns()));
    const int rq = qubits_for(static_cast<std::uint64_t>(fm.rows()));
    const Eigen::Index pc = Eigen::Index{1} << cq;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(pc << rq);
    for (Eigen::Index j = 0; j < fm.rows(); ++j) {
        for (Eigen::Index m = 0; m < fm.columns(); ++m) {
            out(m + j * pc) = fm.design()(j, m) / fm.frobenius_norm();
        }
    }
    return out;
}

double default_delta_r(const FeatureModel &fm) {
    const double lmax = fm.svd().singular_values(0) / fm.frobenius_norm();
    return 1.05 * lmax * lmax;
}

std::vector<std::uint64_t> SpectralRegisters::predicted_bins() const {
    std::vector<std::uint64_t> out;
    for (Eigen::Index r = 0; r < lambda_tilde.size(); ++r) {
        const double phase = lambda_tilde(r) * lambda_tilde(r) / delta_r;
        out.push_back(static_cast<std::uint64_t>(std::llround(phase * static_cast<double>(bins()))));
    }
    return out;
}

SpectralRegisters spectral_extraction(Statevector encoded, const FeatureModel &fm, int tau, double delta_r) {
    if (tau < 1) {
        throw ConfigError("tau must be >= 1");
    }
    const double lmax2 = std::pow(fm.svd().singular_values(0) / fm.frobenius_norm(), 2);
    if (!std::isfinite(delta_r) || delta_r <= lmax2) {
        std::ostringstream msg;
        msg << "delta_R = " << delta_r << " must exceed the largest normalized eigenvalue " << lmax2
            << " (phase wraparound)";
        throw ConfigError(msg.str());
    }

    DensityOperator rho = partial_trace(encoded, kColumnRegister);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of the reduced column state failed");
    }
    const double t = 2.0 * std::numbers::pi / delta_r;
    // exp(+i rho t p) built from one eigendecomposition, so large powers stay exact.
    UnitaryPower power = [vals = Eigen::VectorXd(es.eigenvalues()), vecs = Eigen::MatrixXcd(es.eigenvectors()),
                          t](std::uint64_t p) {
        Eigen::VectorXcd ph(vals.size());
        for (Eigen::Index i = 0; i < vals.size(); ++i) {
            // Reduce the phase mod 2 pi before evaluating to keep precision for large p.
            const double turns = vals(i) * t * static_cast<double>(p) / (2.0 * std::numbers::pi);
            ph(i) = std::polar(1.0, 2.0 * std::numbers::pi * (turns - std::floor(turns)));
        }
        return Eigen::MatrixXcd(vecs * ph.asDiagonal() * vecs.adjoint());
    };

    qpe(encoded, power, kColumnRegister, tau, kEigenRegister);

    const int cq = encoded.reg(kColumnRegister).width;
    Eigen::MatrixXd v_padded = Eigen::MatrixXd::Zero(Eigen::Index{1} << cq, fm.svd().rank());
    v_padded.topRows(fm.columns()) = fm.svd().v;

    return SpectralRegisters{std::move(encoded),
                             tau,
                             delta_r,
                             t,
                             std::move(rho.matrix),
                             fm.svd().singular_values / fm.frobenius_norm(),
                             std::move(v_padded),
                             std::move(power)};
}

double InversionConstants::mean_sine(double lambda2) const {
    if (lambda2 <= 0.0) return 0.0;
    return std::min(1.0, c1 / (lambda2 + sigma_tilde2));
}

double InversionConstants::variance_sine(double lambda2) const {
    if (lambda2 <= 0.0) return 0.0;
    return std::min(1.0, c2 / (std::sqrt(lambda2) * std::sqrt(lambda2 + sigma_tilde2)));
}

InversionConstants make_inversion_constants(const SpectralRegisters &sr, const FeatureModel &fm) {
    const std::vector<std::uint64_t> bins = sr.predicted_bins();
    if (bins.empty()) {
        throw NumericalError("no retained singular values");
    }
    for (std::size_t r = 0; r < bins.size(); ++r) {
        if (bins[r] == 0) {
            std::ostringstream msg;
            msg << "singular value " << r << " (normalized eigenvalue " << sr.lambda_tilde(static_cast<Eigen::Index>(r)) *
                                                                             sr.lambda_tilde(static_cast<Eigen::Index>(r))
                << ") decodes to bin 0 at tau = " << sr.tau << "; increase tau or lower delta_R";
            throw ResolutionError(msg.str());
        }
        if (bins[r] >= sr.bins()) {
            throw ConfigError("delta_R is too close to the largest eigenvalue: its bin wraps to 0");
        }
    }
    const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
    InversionConstants ic;
    ic.sigma_tilde2 = fm.hyper().noise_variance() / (fm.frobenius_norm() * fm.frobenius_norm());
    ic.lambda_hat_min2 = sr.decode(*lo);
    ic.lambda_hat_max2 = sr.decode(*hi);
    ic.c1 = ic.lambda_hat_min2 + ic.sigma_tilde2;
    ic.c2 = std::sqrt(ic.lambda_hat_min2) * std::sqrt(ic.lambda_hat_min2 + ic.sigma_tilde2);
    return ic;
}

InvertedState invert_for_mean(const SpectralRegisters &sr, const InversionConstants &ic) {
    std::vector<double> sines(sr.bins());
    for (std::uint64_t b = 0; b < sr.bins(); ++b) sines[b] = ic.mean_sine(sr.decode(b));
    return invert(sr, sines);
}

InvertedState invert_for_variance(const SpectralRegisters &sr, const InversionConstants &ic) {
    std::vector<double> sines(sr.bins());
    for (std::uint64_t b = 0; b < sr.bins(); ++b) sines[b] = ic.variance_sine(sr.decode(b));
    return invert(sr, sines);
}

QuantumGp::QuantumGp(const FeatureModel &fm, PipelineConfig cfg)
    : fm_(&fm),
      cfg_(cfg),
      plan_(plan_encoding(fm)),
      spectral_(spectral_extraction(prepare_data_state(plan_), fm, cfg.tau, cfg.delta_r.value_or(default_delta_r(fm)))),
      constants_(make_inversion_constants(spectral_, fm)),
      mean_branch_(invert_for_mean(spectral_, constants_)),
      variance_branch_(invert_for_variance(spectral_, constants_)) {
    if (cfg_.mode == EstimatorMode::kSampled && cfg_.shots == 0) {
        throw ConfigError("sampled mode needs shots > 0");
    }
}

Eigen::VectorXd QuantumGp::padded_features(const Eigen::Ref<const Eigen::VectorXd> &x_star) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(plan_.padded_columns()));
    out.head(fm_->columns()) = fm_->scaled_features(x_star);
    return out;
}

PosteriorEstimate QuantumGp::estimate_mean(const Eigen::Ref<const Eigen::VectorXd> &y,
                                           const Eigen::Ref<const Eigen::VectorXd> &x_star,
                                           std::uint64_t stream) const {
    return mean_from_features(y, padded_features(x_star), stream);
}

PosteriorEstimate QuantumGp::estimate_variance(const Eigen::Ref<const Eigen::VectorXd> &x_star,
                                               std::uint64_t stream) const {
    return variance_from_features(padded_features(x_star), stream);
}

PosteriorEstimate QuantumGp::mean_from_features(const Eigen::Ref<const Eigen::VectorXd> &y,
                                                const Eigen::Ref<const Eigen::VectorXd> &padded_phi,
                                                std::uint64_t stream) const {
    if (y.size() != plan_.rows) {
        throw DomainError("target length differs from design rows");
    }
    if (static_cast<std::uint64_t>(padded_phi.size()) != plan_.padded_columns()) {
        throw DomainError("query feature vector has the wrong padded length");
    }
    const double y_norm = y.norm();
    const double phi_norm = padded_phi.norm();
    if (!(y_norm > 0.0)) {
        throw DomainError("quantum mean needs a nonzero target vector");
    }
    if (!(phi_norm > 0.0)) {
        throw DomainError("quantum mean needs a nonzero query feature vector");
    }

    // |psi_2> = |phi*>|y> on the (m, j) layout.
    const auto pc = static_cast<Eigen::Index>(plan_.padded_columns());
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(pc * static_cast<Eigen::Index>(plan_.padded_rows()));
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        for (Eigen::Index m = 0; m < pc; ++m) {
            amps(m + j * pc) = padded_phi(m) / phi_norm * y(j) / y_norm;
        }
    }
    const Statevector psi2 = Statevector::from_amplitudes(plan_.layout(), std::move(amps));

    PosteriorEstimate out;
    out.mode = cfg_.mode;
    out.p1 = mean_branch_.p_ancilla;
    const double accept = mean_branch_.acceptance();
    std::uint64_t shots = 0;
    if (cfg_.mode == EstimatorMode::kSampled) {
        shots = sample_binomial(cfg_.shots, accept, derive_seed(cfg_.seed, {stream, 1}));
        out.shots_rejected = cfg_.shots - shots;
        if (shots == 0) {
            throw PostselectionError("mean branch accepted none of " + std::to_string(cfg_.shots) + " shots");
        }
    }
    out.shots_used = shots;
    const OverlapEstimate ov = hadamard_test(mean_branch_.state, psi2, shots, derive_seed(cfg_.seed, {stream, 2}));
    const double scale = std::sqrt(accept) / constants_.c1 * phi_norm * y_norm / fm_->frobenius_norm();
    out.mean = scale * ov.value;
    return out;
}

PosteriorEstimate QuantumGp::variance_from_features(const Eigen::Ref<const Eigen::VectorXd> &padded_phi,
                                                    std::uint64_t stream) const {
    if (static_cast<std::uint64_t>(padded_phi.size()) != plan_.padded_columns()) {
        throw DomainError("query feature vector has the wrong padded length");
    }
    const double phi_norm2 = padded_phi.squaredNorm();
    if (!(phi_norm2 > 0.0)) {
        throw DomainError("quantum variance needs a nonzero query feature vector");
    }
    const Eigen::VectorXd proj = spectral_.v_padded.transpose() * padded_phi;
    const double null_part = std::max(0.0, phi_norm2 - proj.squaredNorm());

    PosteriorEstimate out;
    out.mode = cfg_.mode;
    out.p2 = variance_branch_.p_ancilla;
    const double accept = variance_branch_.acceptance();
    std::uint64_t shots = 0;
    if (cfg_.mode == EstimatorMode::kSampled) {
        shots = sample_binomial(cfg_.shots, accept, derive_seed(cfg_.seed, {stream, 3}));
        out.shots_rejected = cfg_.shots - shots;
        if (shots == 0) {
            throw PostselectionError("variance branch accepted none of " + std::to_string(cfg_.shots) + " shots");
        }
    }
    out.shots_used = shots;
    const Statevector ref = column_state(padded_phi, plan_.col_qubits);
    const OverlapEstimate ov =
        swap_test(variance_branch_.state, kColumnRegister, ref, shots, derive_seed(cfg_.seed, {stream, 4}));
    const double noise = fm_->hyper().noise_variance();
    const double fro2 = fm_->frobenius_norm() * fm_->frobenius_norm();
    const double scale = noise * accept / (constants_.c2 * constants_.c2) * phi_norm2 / fro2;
    out.variance_unclamped = scale * ov.raw + null_part;
    out.variance = std::max(0.0, scale * ov.value + null_part);
    return out;
}

PosteriorEstimate estimate_mean(const FeatureModel &fm, const Eigen::Ref<const Eigen::VectorXd> &y,
                                const Eigen::Ref<const Eigen::VectorXd> &x_star, const PipelineConfig &cfg) {
    return QuantumGp(fm, cfg).estimate_mean(y, x_star);
}

PosteriorEstimate estimate_variance(const FeatureModel &fm, const Eigen::Ref<const Eigen::VectorXd> &x_star,
                                    const PipelineConfig &cfg) {
    return QuantumGp(fm, cfg).estimate_variance(x_star);
}

}  // namespace qrff
