// Copyright 2026 The hookinj Authors
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

#ifndef HOOKINJ_SIM_RNG_HPP
#define HOOKINJ_SIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace hookinj {

inline constexpr uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// SplitMix64. Satisfies UniformRandomBitGenerator so it also works with <random> distributions.
class SplitMix64 {
   public:
    using result_type = uint64_t;

    explicit SplitMix64(uint64_t seed = 0) : state_(seed) {
    }

    /// Independent stream for one shot of a seeded run; the same (seed, shot) always gives the
    /// same stream no matter how shots are split between workers.
    static SplitMix64 for_shot(uint64_t seed, uint64_t shot) {
        return SplitMix64(splitmix64_mix(splitmix64_mix(seed) ^ (shot * 0xD1B54A32D192ED03ULL + 1)));
    }

    static constexpr uint64_t min() {
        return 0;
    }
    static constexpr uint64_t max() {
        return std::numeric_limits<uint64_t>::max();
    }

    uint64_t operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return (double)((*this)() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    /// Uniform integer in [0, n).
    uint32_t below(uint32_t n) {
        return (uint32_t)(((*this)() >> 32) * n >> 32);
    }

    /// Number of failures before the first success of a Bernoulli(p) sequence.
    uint64_t geometric(double p) {
        if (p >= 1) {
            return 0;
        }
        if (p <= 0) {
            return std::numeric_limits<uint64_t>::max();
        }
        double u = uniform();
        double g = std::floor(std::log1p(-u) / std::log1p(-p));
        if (!(g < 1.8e19)) {
            return std::numeric_limits<uint64_t>::max();
        }
        return (uint64_t)g;
    }

   private:
    uint64_t state_;
};

}  // namespace hookinj

#endif
