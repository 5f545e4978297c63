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

#include <cmath>
#include <random>
#include <sstream>

#include "hookinj/builders/builders.hpp"
#include "hookinj/harness/experiment.hpp"
#include "hookinj/harness/report.hpp"
#include "hookinj/harness/stats.hpp"

using namespace hookinj;

namespace {

InjectionSpec small_hook(int k = 3, int r = 2) {
    InjectionSpec s;
    s.d_inject = k;
    s.r_inject = r;
    s.d = 5;
    s.r_hold = 1;
    return s;
}

double binomial_loglik(double k, double n, double q) {
    double a = k > 0 ? k * std::log(q) : 0;
    double b = n - k > 0 ? (n - k) * std::log1p(-q) : 0;
    return a + b;
}

}  // namespace

TEST(Stats, LikelihoodIntervalWithNoErrors) {
    auto [lo, hi] = likelihood_interval(0, 100);
    EXPECT_EQ(lo, 0);
    EXPECT_NEAR(hi, 1 - std::pow(1000.0, -1.0 / 100), 1e-6 * hi);
    EXPECT_NEAR(hi, 0.0668, 1e-4);
    auto [lo2, hi2] = likelihood_interval(100, 100);
    EXPECT_EQ(hi2, 1);
    EXPECT_NEAR(lo2, std::pow(1000.0, -1.0 / 100), 1e-6);
    EXPECT_THROW(likelihood_interval(0, 0), std::invalid_argument);
}

// Both ends sit where the log-likelihood has dropped by ln(factor) from its maximum.
TEST(Stats, LikelihoodIntervalEndpoints) {
    for (auto [k, n] : {std::pair{1, 10}, std::pair{7, 1000}, std::pair{300, 1000000}, std::pair{50, 60}}) {
        auto [lo, hi] = likelihood_interval(k, n);
        double mle = (double)k / n;
        double top = binomial_loglik(k, n, mle);
        EXPECT_LT(lo, mle);
        EXPECT_GT(hi, mle);
        // Independent root solve on each side of the maximum, 200 halvings.
        auto root = [&](double a, double b) {
            for (int it = 0; it < 200; it++) {
                double m = (a + b) / 2;
                bool above = binomial_loglik(k, n, m) > top - std::log(1000.0);
                ((above == (a < mle)) ? b : a) = m;
            }
            return (a + b) / 2;
        };
        EXPECT_NEAR(lo, root(1e-300, mle), 1e-5 * lo);
        EXPECT_NEAR(hi, root(mle, 1 - 1e-16), 1e-5 * hi);
    }
}

TEST(Stats, ExpectedCostAndDeadline) {
    EXPECT_DOUBLE_EQ(expected_cost(5, 2, 0), 49.0 * 2);
    EXPECT_DOUBLE_EQ(expected_cost(5, 2, 0.5), 196.0);
    EXPECT_THROW(expected_cost(5, 2, 1.0), std::invalid_argument);
    EXPECT_THROW(expected_cost(5, 2, -0.1), std::invalid_argument);
    EXPECT_DOUBLE_EQ(deadline_success(100, 0), 0);
    EXPECT_NEAR(deadline_success(100, 70), 0.5, 1e-12);
    EXPECT_NEAR(deadline_success(100, 490), 1 - 1.0 / 128, 1e-12);
}

TEST(Stats, ParetoFrontierMatchesDominanceOracle) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 30; trial++) {
        std::vector<CostPoint> pts(20);
        for (size_t k = 0; k < pts.size(); k++) {
            pts[k].expected_cost = std::round(u(rng) * 10);
            pts[k].error_rate = std::round(u(rng) * 10);
            pts[k].label = std::to_string(k);
        }
        auto front = pareto_frontier(pts);
        auto dominated = [&](const CostPoint &a) {
            for (const auto &b : pts) {
                if (b.expected_cost <= a.expected_cost && b.error_rate <= a.error_rate &&
                    (b.expected_cost < a.expected_cost || b.error_rate < a.error_rate)) {
                    return true;
                }
            }
            return false;
        };
        size_t expected = 0;
        for (const auto &p : pts) {
            expected += !dominated(p);
        }
        EXPECT_EQ(front.size(), expected);
        for (size_t k = 0; k < front.size(); k++) {
            EXPECT_FALSE(dominated(front[k]));
            if (k > 0) {
                EXPECT_LE(front[k - 1].expected_cost, front[k].expected_cost);
            }
        }
    }
}

TEST(Experiment, ZeroNoiseHasNoErrorsOrDiscards) {
    RunOptions opt;
    opt.max_shots = 5000;
    opt.batch_size = 1000;
    auto st = run_experiment(small_hook(), 0.0, opt);
    EXPECT_EQ(st.shots, 5000u);
    EXPECT_EQ(st.discards, 0u);
    EXPECT_EQ(st.errors, 0u);
    EXPECT_DOUBLE_EQ(st.cost(), expected_cost(3, 2, 0));
}

TEST(Experiment, WorkersAndSeeds) {
    auto ex = PreparedExperiment::make(small_hook(), 0.003);
    RunOptions opt;
    opt.max_shots = 6000;
    opt.batch_size = 2048;
    opt.seed = 9;
    auto a = run_experiment(*ex, opt);
    opt.workers = 3;
    auto b = run_experiment(*ex, opt);
    EXPECT_TRUE(a == b);
    opt.seed = 10;
    auto c = run_experiment(*ex, opt);
    EXPECT_FALSE(a.discards == c.discards && a.errors == c.errors);
}

TEST(Experiment, StopRule) {
    auto ex = PreparedExperiment::make(small_hook(), 0.01);
    RunOptions opt;
    opt.max_shots = 1'000'000;
    opt.max_errors = 5;
    opt.batch_size = 500;
    auto st = run_experiment(*ex, opt);
    EXPECT_GE(st.errors, 5u);
    EXPECT_LT(st.shots, opt.max_shots);
    EXPECT_EQ(st.shots % 500, 0u);
    opt.max_errors = 1000;
    opt.max_shots = 1200;
    st = run_experiment(*ex, opt);
    EXPECT_EQ(st.shots, 1200u);
    opt.max_shots = 0;
    EXPECT_THROW(run_experiment(*ex, opt), std::invalid_argument);
}

TEST(Experiment, DiscardGrowsWithInjectionRounds) {
    RunOptions opt;
    opt.max_shots = 20000;
    opt.max_errors = 1'000'000;
    opt.seed = 4;
    double prev = -1;
    for (int r = 1; r <= 3; r++) {
        auto st = run_experiment(small_hook(3, r), 0.002, opt);
        EXPECT_GT(st.discard_rate(), prev);
        prev = st.discard_rate();
    }
}

TEST(Experiment, DetectionFraction) {
    auto mem = build_memory(3, 3, 'Z').circuit;
    EXPECT_EQ(detection_fraction(mem, 0.0, 1000, 1), 0.0);
    double lo = detection_fraction(mem, 0.001, 20000, 1);
    double hi = detection_fraction(mem, 0.004, 20000, 1);
    EXPECT_GT(lo, 0);
    EXPECT_GT(hi, lo);
}

TEST(Report, CsvRoundTrip) {
    TrialStats st;
    st.spec = small_hook(4, 3);
    st.spec.protocol = Protocol::ZzTweaked;
    st.spec.state = InjectedState::Plus;
    st.p = 0.0015;
    st.shots = 12345;
    st.discards = 345;
    st.errors = 17;
    st.seed = 77;
    std::string text = std::string(kCsvHeader) + "\n" + csv_row(st) + "\n";
    std::istringstream in(text);
    auto rows = read_csv(in);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0] == st);
    EXPECT_EQ(csv_row(rows[0]), csv_row(st));

    std::istringstream bad("protocol,state\n");
    EXPECT_THROW(read_csv(bad), std::runtime_error);
    std::istringstream short_row(std::string(kCsvHeader) + "\nhook,i,0.001\n");
    EXPECT_THROW(read_csv(short_row), std::runtime_error);
}

TEST(Report, AllDiscardedRowHasInfiniteCost) {
    TrialStats st;
    st.spec = small_hook();
    st.shots = st.discards = 10;
    EXPECT_NE(csv_row(st).find(",inf,"), std::string::npos);
    EXPECT_TRUE(to_json(st)["expected_cost_qubit_rounds"].is_null());
}

TEST(Report, JsonFields) {
    TrialStats st;
    st.spec = small_hook();
    st.p = 0.001;
    st.shots = 100;
    st.discards = 50;
    st.errors = 1;
    auto j = to_json(st);
    EXPECT_EQ(j["protocol"], "hook");
    EXPECT_EQ(j["state"], "i");
    EXPECT_DOUBLE_EQ(j["error_rate"].get<double>(), 0.02);
    EXPECT_DOUBLE_EQ(j["expected_cost_qubit_rounds"].get<double>(), expected_cost(3, 2, 0.5));
    EXPECT_EQ(j.size(), 16u);
}

TEST(Sweep, GridShape) {
    SweepGrid grid;
    EXPECT_EQ(grid.specs().size(), 36u);
    grid.protocols = {Protocol::HookPregrown};
    auto pre = grid.specs();
    EXPECT_EQ(pre.size(), 60u);
    EXPECT_EQ(pre.back().d_inject, 11);
    // d_inject above d is invalid for plain hook and is skipped.
    grid.protocols = {Protocol::Hook};
    grid.d = 5;
    EXPECT_EQ(grid.specs().size(), 24u);
}

TEST(Sweep, RunsRowsInOrder) {
    SweepGrid grid;
    grid.d_inject = {2, 3};
    grid.r_inject = {1};
    grid.d = 3;
    grid.r_hold = 1;
    grid.ps = {0.001, 0.002};
    RunOptions opt;
    opt.max_shots = 2000;
    size_t seen = 0;
    auto rows = sweep(grid, opt, [&](const TrialStats &) { seen++; });
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(seen, 4u);
    EXPECT_EQ(rows[0].p, 0.001);
    EXPECT_EQ(rows[3].p, 0.002);
    EXPECT_EQ(rows[1].spec.d_inject, 3);
}
