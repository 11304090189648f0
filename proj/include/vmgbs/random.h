// Copyright 2026 The vmgbs Authors
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

#ifndef VMGBS_RANDOM_H
#define VMGBS_RANDOM_H

#include <cstdint>
#include <random>

namespace vmgbs {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent child streams.
constexpr uint64_t mix_seed(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` under `seed`. Results depend only on (seed, index),
/// never on scheduling order.
constexpr uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return mix_seed(mix_seed(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

inline Rng derive_rng(uint64_t seed, uint64_t index) { return Rng(derive_seed(seed, index)); }

/// Uniform double in [0, 1) built from the top 53 bits, identical across standard libraries.
inline double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound). Lemire's method; portable, unlike std::uniform_int_distribution.
inline uint64_t uniform_below(Rng &rng, uint64_t bound) {
    if (bound <= 1) return 0;
    __uint128_t m = static_cast<__uint128_t>(rng()) * bound;
    uint64_t low = static_cast<uint64_t>(m);
    if (low < bound) {
        uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<__uint128_t>(rng()) * bound;
            low = static_cast<uint64_t>(m);
        }
    }
    return static_cast<uint64_t>(m >> 64);
}

}  // namespace vmgbs

#endif  // VMGBS_RANDOM_H
