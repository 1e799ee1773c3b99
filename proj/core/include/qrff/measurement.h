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

#ifndef QRFF_MEASUREMENT_H_
#define QRFF_MEASUREMENT_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qrff/statevector.h"

namespace qrff {

/// Branches with probability at or below this are treated as impossible.
inline constexpr double kMinBranchProbability = 1e-12;

/// counts[v] is the number of shots that read value v on the measured register.
struct Histogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;

    double frequency(std::uint64_t value) const {
        return shots == 0 ? 0.0 : static_cast<double>(counts.at(value)) / static_cast<double>(shots);
    }
};

/// Multinomial draw of `shots` outcomes from `probabilities` (renormalized).
Histogram sample_counts(std::span<const double> probabilities, std::uint64_t shots, std::uint64_t seed);

/// Samples the Born marginal of register `name`; the state is not collapsed.
Histogram measure_register(const Statevector &sv, std::string_view name, std::uint64_t shots, std::uint64_t seed);

/// Binomial(shots, p) draw.
std::uint64_t sample_binomial(std::uint64_t shots, double p, std::uint64_t seed);

struct Postselected {
    Statevector state;
    double probability = 0.0;
};

/// Projects `qubit` onto `outcome` and renormalizes. Throws PostselectionError
/// when the branch probability is <= kMinBranchProbability.
Postselected postselect(const Statevector &sv, int qubit, int outcome);

/// Same for a whole register reading `value`.
Postselected postselect_register(const Statevector &sv, std::string_view name, std::uint64_t value);

}  // namespace qrff

#endif  // QRFF_MEASUREMENT_H_
