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

#ifndef HOOKINJ_ANALYSIS_CENSUS_HPP
#define HOOKINJ_ANALYSIS_CENSUS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hookinj/analysis/dem.hpp"

namespace hookinj {

/// Channel terms that flip an observable while firing no detector anywhere in the circuit.
inline std::vector<TermSource> find_distance1(const DetectorErrorModel &dem, uint64_t observable_mask = ~uint64_t{0}) {
    std::vector<TermSource> out;
    for (const auto &m : dem.mechanisms) {
        if (m.detectors.empty() && (m.observables & observable_mask)) {
            out.insert(out.end(), m.sources.begin(), m.sources.end());
        }
    }
    return out;
}

/// Undetected single terms grouped by where they sit relative to the single-qubit terms among them.
struct Distance1Breakdown {
    size_t single_qubit = 0;
    /// Two-qubit terms in layers before (after) the earliest (latest) single-qubit term.
    size_t two_qubit_before = 0;
    size_t two_qubit_after = 0;
    /// Two-qubit terms that fit neither group, or any other channel.
    size_t other = 0;
    std::map<uint32_t, size_t> two_qubit_by_layer;
};

inline Distance1Breakdown summarize_distance1(const std::vector<TermSource> &terms) {
    Distance1Breakdown b;
    uint32_t first = UINT32_MAX, last = 0;
    for (const auto &t : terms) {
        if (t.channel == Gate::DEPOLARIZE1) {
            b.single_qubit++;
            first = std::min(first, t.layer);
            last = std::max(last, t.layer);
        }
    }
    for (const auto &t : terms) {
        if (t.channel == Gate::DEPOLARIZE2) {
            b.two_qubit_by_layer[t.layer]++;
            if (b.single_qubit && t.layer < first) {
                b.two_qubit_before++;
            } else if (b.single_qubit && t.layer > last) {
                b.two_qubit_after++;
            } else {
                b.other++;
            }
        } else if (t.channel != Gate::DEPOLARIZE1) {
            b.other++;
        }
    }
    return b;
}

/// Which detectors a pair may fire and still count as an undetected pair.
enum class PairWindow {
    /// The pair fires no detector at all.
    Anywhere,
    /// The pair fires no postselected detector (it may fire later ones).
    Postselected,
};

struct Distance2Census {
    /// Number of unordered term pairs.
    size_t num_pairs = 0;
    /// Number of distinct channel terms that are part of at least one pair.
    size_t num_participating = 0;
    /// Sum over pairs of the product of the two term probabilities.
    double pair_mass = 0;

    /// pair_mass expressed as a multiple of p^2.
    double coefficient(double p) const {
        return p > 0 ? pair_mass / (p * p) : 0;
    }
};

/// Finds pairs of channel terms whose combined signature flips the observable and fires no detector
/// in the chosen window. Works per term rather than per merged mechanism, so terms that share a
/// signature are counted separately.
inline Distance2Census find_distance2(const DetectorErrorModel &dem, const std::vector<bool> &postselected,
                                      PairWindow window = PairWindow::Anywhere, uint64_t observable_mask = 1) {
    // Two terms pair up exactly when they agree on every detector in the window and disagree on the
    // observable. Group by the windowed detector set, then by observable value.
    // Per windowed detector set: observable value -> (number of terms, summed probability).
    std::map<std::vector<uint32_t>, std::map<uint64_t, std::pair<size_t, double>>> groups;
    for (const auto &m : dem.mechanisms) {
        std::vector<uint32_t> key;
        for (uint32_t d : m.detectors) {
            if (window == PairWindow::Anywhere || (d < postselected.size() && postselected[d])) {
                key.push_back(d);
            }
        }
        auto &slot = groups[key][m.observables & observable_mask];
        for (const auto &s : m.sources) {
            slot.first++;
            slot.second += s.probability;
        }
    }
    Distance2Census out;
    for (const auto &[key, by_obs] : groups) {
        // Pairs need the observable parities to differ in the tracked observable.
        std::vector<std::pair<size_t, double>> classes;
        std::vector<uint64_t> masks;
        for (const auto &[obs, slot] : by_obs) {
            classes.push_back(slot);
            masks.push_back(obs);
        }
        std::vector<bool> used(classes.size(), false);
        for (size_t a = 0; a < classes.size(); a++) {
            for (size_t b = a + 1; b < classes.size(); b++) {
                if (masks[a] != masks[b]) {
                    out.num_pairs += classes[a].first * classes[b].first;
                    out.pair_mass += classes[a].second * classes[b].second;
                    used[a] = used[b] = true;
                }
            }
        }
        for (size_t a = 0; a < classes.size(); a++) {
            if (used[a]) {
                out.num_participating += classes[a].first;
            }
        }
    }
    return out;
}

/// Injected state: |+> or |i>.
enum class InjectedState { Plus, I };

inline std::string state_name(InjectedState s) {
    return s == InjectedState::Plus ? "plus" : "i";
}
inline InjectedState parse_state(const std::string &s) {
    if (s == "plus" || s == "+") {
        return InjectedState::Plus;
    }
    if (s == "i") {
        return InjectedState::I;
    }
    throw std::invalid_argument("unknown state '" + s + "' (expected plus or i)");
}

/// Error floor from counting undetected single and paired mechanisms of the hook circuit:
/// 7p/30 + 56p^2 for |i> and 5p/30 + 21p^2 for |+>.
inline double analytic_limit(InjectedState state, double p) {
    if (state == InjectedState::I) {
        return 7 * p / 30 + 56 * p * p;
    }
    return 5 * p / 30 + 21 * p * p;
}

/// The other pairing of the same terms (first-order term of one state with the second-order term of
/// the other), reported next to analytic_limit because both pairings circulate.
inline double analytic_limit_swapped(InjectedState state, double p) {
    if (state == InjectedState::I) {
        return 7 * p / 30 + 21 * p * p;
    }
    return 5 * p / 30 + 56 * p * p;
}

/// Samples shots directly from a detector error model (independent Bernoulli per mechanism).
inline void sample_dem(const DetectorErrorModel &dem, size_t num_shots, uint64_t seed, BitMatrix &detectors,
                       BitMatrix &observables) {
    detectors = BitMatrix(num_shots, dem.num_detectors);
    observables = BitMatrix(num_shots, dem.num_observables);
    for (size_t s = 0; s < num_shots; s++) {
        SplitMix64 rng = SplitMix64::for_shot(seed, s);
        for (const auto &m : dem.mechanisms) {
            if (rng.bernoulli(m.probability)) {
                for (uint32_t d : m.detectors) {
                    detectors.flip(s, d);
                }
                for (size_t o = 0; o < dem.num_observables; o++) {
                    if ((m.observables >> o) & 1) {
                        observables.flip(s, o);
                    }
                }
            }
        }
    }
}

}  // namespace hookinj

#endif
