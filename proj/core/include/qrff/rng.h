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

// Seeded random streams. Every stochastic operation takes an explicit seed and
// derives independent child streams by hashing (seed, stream ids) so results do
// not depend on call order or thread scheduling.

#ifndef QRFF_RNG_H_
#define QRFF_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qrff {

using Rng = std::mt19937_64;

/// One SplitMix64 output step.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic child seed of `base` for the given stream path.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace qrff

#endif  // QRFF_RNG_H_
