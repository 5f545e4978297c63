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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "hookinj/analysis/census.hpp"
#include "hookinj/analysis/dem.hpp"
#include "hookinj/builders/builders.hpp"
#include "hookinj/circuit/noise.hpp"
#include "hookinj/circuit/transpile.hpp"

using namespace hookinj;

namespace {

DetectorErrorModel hook_dem(InjectedState st, int k, int r, int d, double p) {
    InjectionSpec s;
    s.state = st;
    s.d_inject = k;
    s.r_inject = r;
    s.d = d;
    s.r_hold = 1;
    return extract_dem(apply_si1000(transpile_to_cz(build(s).circuit), NoiseParams{p}));
}

TermSource term(double prob) {
    TermSource t;
    t.probability = prob;
    return t;
}

ErrorMechanism mech(std::vector<uint32_t> dets, uint64_t obs, std::vector<double> probs) {
    ErrorMechanism m;
    m.detectors = std::move(dets);
    m.observables = obs;
    for (double q : probs) {
        m.sources.push_back(term(q));
        m.probability = xor_probability(m.probability, q);
    }
    return m;
}

/// Pair count by brute force over all term pairs.
Distance2Census brute_pairs(const DetectorErrorModel &dem, const std::vector<bool> &post, PairWindow w) {
    struct Flat {
        std::vector<uint32_t> key;
        uint64_t obs;
        double prob;
        size_t id;
    };
    std::vector<Flat> flat;
    for (const auto &m : dem.mechanisms) {
        std::vector<uint32_t> key;
        for (uint32_t d : m.detectors) {
            if (w == PairWindow::Anywhere || post[d]) {
                key.push_back(d);
            }
        }
        for (const auto &s : m.sources) {
            flat.push_back({key, m.observables & 1, s.probability, flat.size()});
        }
    }
    Distance2Census out;
    std::vector<bool> used(flat.size(), false);
    for (size_t a = 0; a < flat.size(); a++) {
        for (size_t b = a + 1; b < flat.size(); b++) {
            if (flat[a].key == flat[b].key && flat[a].obs != flat[b].obs) {
                out.num_pairs++;
                out.pair_mass += flat[a].prob * flat[b].prob;
                used[a] = used[b] = true;
            }
        }
    }
    out.num_participating = std::count(used.begin(), used.end(), true);
    return out;
}

}  // namespace

TEST(Census, AnalyticLimitValues) {
    EXPECT_NEAR(analytic_limit(InjectedState::I, 1e-3), 2.8933e-4, 1e-8);
    EXPECT_NEAR(analytic_limit(InjectedState::Plus, 1e-3), 1.8767e-4, 1e-8);
    EXPECT_EQ(analytic_limit(InjectedState::I, 0), 0);
    EXPECT_GT(analytic_limit_swapped(InjectedState::Plus, 1e-3), analytic_limit(InjectedState::Plus, 1e-3));
}

TEST(Census, HookIHasFourUndetectedSingleTerms) {
    auto dem = hook_dem(InjectedState::I, 5, 2, 7, 0.001);
    auto terms = find_distance1(dem, 1);
    ASSERT_EQ(terms.size(), 4u);
    auto b = summarize_distance1(terms);
    EXPECT_EQ(b.single_qubit, 1u);
    EXPECT_EQ(b.two_qubit_before, 2u);
    EXPECT_EQ(b.two_qubit_after, 1u);
    EXPECT_EQ(b.other, 0u);
    EXPECT_EQ(b.two_qubit_by_layer.size(), 2u);
}

TEST(Census, SingleTermCountDoesNotDependOnPatchSize) {
    size_t ref = find_distance1(hook_dem(InjectedState::I, 3, 2, 5, 0.001), 1).size();
    EXPECT_EQ(find_distance1(hook_dem(InjectedState::I, 5, 2, 7, 0.001), 1).size(), ref);
    EXPECT_EQ(find_distance1(hook_dem(InjectedState::I, 3, 1, 7, 0.001), 1).size(), ref);
}

TEST(Census, InvariantUnderMechanismOrder) {
    auto dem = hook_dem(InjectedState::I, 3, 2, 5, 0.001);
    std::vector<bool> post(dem.num_detectors, false);
    for (size_t d = 0; d < post.size(); d += 3) {
        post[d] = true;
    }
    auto a1 = find_distance1(dem, 1).size();
    auto a2 = find_distance2(dem, post, PairWindow::Anywhere);
    auto a3 = find_distance2(dem, post, PairWindow::Postselected);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 3; trial++) {
        std::shuffle(dem.mechanisms.begin(), dem.mechanisms.end(), rng);
        EXPECT_EQ(find_distance1(dem, 1).size(), a1);
        auto b2 = find_distance2(dem, post, PairWindow::Anywhere);
        auto b3 = find_distance2(dem, post, PairWindow::Postselected);
        EXPECT_EQ(b2.num_pairs, a2.num_pairs);
        EXPECT_NEAR(b2.pair_mass, a2.pair_mass, 1e-15);
        EXPECT_EQ(b3.num_pairs, a3.num_pairs);
        EXPECT_EQ(b3.num_participating, a3.num_participating);
    }
}

TEST(Census, PairsMatchBruteForceOnToyModels) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; trial++) {
        DetectorErrorModel dem;
        dem.num_detectors = 4;
        dem.num_observables = 1;
        std::vector<bool> post(4);
        for (size_t d = 0; d < 4; d++) {
            post[d] = rng() & 1;
        }
        std::set<std::pair<std::vector<uint32_t>, uint64_t>> seen;
        for (int m = 0; m < 12; m++) {
            std::vector<uint32_t> dets;
            for (uint32_t d = 0; d < 4; d++) {
                if (rng() % 3 == 0) {
                    dets.push_back(d);
                }
            }
            uint64_t obs = rng() & 1;
            if (!seen.insert({dets, obs}).second) {
                continue;
            }
            std::vector<double> probs(1 + rng() % 3);
            for (double &q : probs) {
                q = 1e-3 * (1 + rng() % 7);
            }
            dem.mechanisms.push_back(mech(dets, obs, probs));
        }
        for (PairWindow w : {PairWindow::Anywhere, PairWindow::Postselected}) {
            auto got = find_distance2(dem, post, w);
            auto want = brute_pairs(dem, post, w);
            EXPECT_EQ(got.num_pairs, want.num_pairs);
            EXPECT_EQ(got.num_participating, want.num_participating);
            EXPECT_NEAR(got.pair_mass, want.pair_mass, 1e-15);
        }
    }
}

// Postselected-only windows ignore later detectors, so they can only admit more pairs.
TEST(Census, PostselectedWindowIsLooser) {
    InjectionSpec s;
    s.d_inject = 3;
    s.d = 5;
    s.r_hold = 1;
    auto built = build(s);
    auto dem = extract_dem(apply_si1000(transpile_to_cz(built.circuit), NoiseParams{0.001}));
    auto any = find_distance2(dem, built.postselected, PairWindow::Anywhere);
    auto ps = find_distance2(dem, built.postselected, PairWindow::Postselected);
    EXPECT_GE(ps.num_pairs, any.num_pairs);
    EXPECT_GT(any.num_pairs, 0u);
    EXPECT_NEAR(any.coefficient(0.001), any.pair_mass / 1e-6, 1e-9);
}

TEST(Census, BreakdownClassifiesLayers) {
    TermSource one = term(1e-4);
    one.channel = Gate::DEPOLARIZE1;
    one.layer = 5;
    TermSource early = term(1e-4), late = term(1e-4), mid = term(1e-4), flip = term(1e-4);
    early.channel = late.channel = mid.channel = Gate::DEPOLARIZE2;
    early.layer = 2;
    late.layer = 8;
    mid.layer = 5;
    flip.channel = Gate::M;
    auto b = summarize_distance1({one, early, late, mid, flip});
    EXPECT_EQ(b.single_qubit, 1u);
    EXPECT_EQ(b.two_qubit_before, 1u);
    EXPECT_EQ(b.two_qubit_after, 1u);
    EXPECT_EQ(b.other, 2u);
    EXPECT_EQ(b.two_qubit_by_layer.size(), 3u);
}
