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

#include "qrff/measurement.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qrff/errors.h"
#include "qrff/rng.h"

namespace qrff {
namespace {

Postselected project(const Statevector &sv, std::uint64_t mask, std::uint64_t value, const std::string &what) {
    Statevector out = sv;
    Eigen::VectorXcd &a = out.mutable_amplitudes();
    double p = 0.0;
    for (std::uint64_t i = 0; i < out.dimension(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        if ((i & mask) == value) {
            p += std::norm(a(idx));
        } else {
            a(idx) = 0.0;
        }
    }
    if (!(p > kMinBranchProbability)) {
        std::ostringstream msg;
        msg << "post-selection impossible: " << what << " has probability " << p;
        throw PostselectionError(msg.str());
    }
    a /= std::sqrt(p);
    return Postselected{std::move(out), p};
}

}  // namespace

Histogram sample_counts(std::span<const double> probabilities, std::uint64_t shots, std::uint64_t seed) {
    Histogram h;
    h.shots = shots;
    h.counts.assign(probabilities.size(), 0);
    double remaining_p = 0.0;
    for (double p : probabilities) remaining_p += std::max(0.0, p);
    if (shots == 0 || probabilities.empty()) return h;
    if (!(remaining_p > 0.0)) {
        throw DomainError("cannot sample from an all-zero distribution");
    }
    Rng rng = make_rng(seed);
    std::uint64_t remaining = shots;
    for (std::size_t k = 0; k < probabilities.size() && remaining > 0; ++k) {
        const double p = std::max(0.0, probabilities[k]);
        std::uint64_t c = 0;
        if (k + 1 == probabilities.size() || p >= remaining_p) {
            c = remaining;
        } else if (p > 0.0) {
            std::binomial_distribution<std::uint64_t> draw(remaining, std::clamp(p / remaining_p, 0.0, 1.0));
            c = draw(rng);
        }
        h.counts[k] = c;
        remaining -= c;
        remaining_p -= p;
    }
    return h;
}

Histogram measure_register(const Statevector &sv, std::string_view name, std::uint64_t shots, std::uint64_t seed) {
    const std::vector<double> probs = sv.probabilities(name);
    return sample_counts(probs, shots, seed);
}

std::uint64_t sample_binomial(std::uint64_t shots, double p, std::uint64_t seed) {
    if (shots == 0) return 0;
    Rng rng = make_rng(seed);
    std::binomial_distribution<std::uint64_t> draw(shots, std::clamp(p, 0.0, 1.0));
    return draw(rng);
}

Postselected postselect(const Statevector &sv, int qubit, int outcome) {
    if (qubit < 0 || qubit >= sv.qubit_count()) {
        throw DomainError("postselect: qubit index out of range");
    }
    if (outcome != 0 && outcome != 1) {
        throw DomainError("postselect: outcome must be 0 or 1");
    }
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    return project(sv, mask, outcome ? mask : 0,
                   "qubit " + std::to_string(qubit) + " = " + std::to_string(outcome));
}

Postselected postselect_register(const Statevector &sv, std::string_view name, std::uint64_t value) {
    const Register &r = sv.reg(name);
    if (value >= r.dimension()) {
        throw DomainError("postselect: register value out of range");
    }
    return project(sv, r.mask(), value << r.offset,
                   "register '" + r.name + "' = " + std::to_string(value));
}

}  // namespace qrff
