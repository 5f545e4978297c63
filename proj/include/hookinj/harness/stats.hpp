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

#ifndef HOOKINJ_HARNESS_STATS_HPP
#define HOOKINJ_HARNESS_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hookinj {

/// Binomial likelihood interval: all q with q^k (1-q)^(n-k) within `factor` of the maximum.
inline std::pair<double, double> likelihood_interval(uint64_t errors, uint64_t shots, double factor = 1000) {
    if (shots == 0) {
        throw std::invalid_argument("likelihood interval needs at least one shot");
    }
    if (errors > shots) {
        throw std::invalid_argument("more errors than shots");
    }
    if (!(factor >= 1)) {
        throw std::invalid_argument("likelihood factor must be at least 1");
    }
    double k = (double)errors, n = (double)shots;
    auto log_l = [&](double q) {
        double a = k > 0 ? k * std::log(q) : 0.0;
        double b = n - k > 0 ? (n - k) * std::log1p(-q) : 0.0;
        return a + b;
    };
    double mle = k / n;
    double cut = log_l(mle) - std::log(factor);
    // Bisects on a monotone side of the likelihood until the bracket is relatively tight.
    auto solve = [&](double inside, double outside) {
        for (int it = 0; it < 200; it++) {
            double mid = 0.5 * (inside + outside);
            if (log_l(mid) >= cut) {
                inside = mid;
            } else {
                outside = mid;
            }
            if (std::abs(outside - inside) <= 1e-6 * std::max(std::abs(inside), 1e-300)) {
                break;
            }
        }
        return inside;
    };
    double lo = errors == 0 ? 0.0 : solve(mle, 0.0);
    double hi = errors == shots ? 1.0 : solve(mle, 1.0);
    return {lo, hi};
}

/// Qubit-rounds spent per accepted attempt: the full patch (data plus measure qubits) held for the
/// postselection rounds, scaled up by the number of attempts needed on average.
inline double expected_cost(int d_inject, int r_inject, double discard_rate) {
    if (!(discard_rate >= 0) || discard_rate >= 1) {
        throw std::invalid_argument("discard rate must lie in [0, 1)");
    }
    return (2.0 * d_inject * d_inject - 1) * r_inject / (1 - discard_rate);
}

/// Chance that a repeat-until-success process finishes within `budget`, using a half life of 70%
/// of the expected cost.
inline double deadline_success(double expected, double budget) {
    if (!(expected > 0) || budget < 0) {
        throw std::invalid_argument("expected cost must be positive and budget non-negative");
    }
    return 1 - std::exp2(-budget / (0.7 * expected));
}

struct CostPoint {
    double expected_cost = 0;
    double error_rate = 0;
    double err_lo = 0;
    double err_hi = 0;
    double discard_rate = 0;
    std::string label;
};

/// Points not dominated in (expected_cost, error_rate), sorted by cost.
inline std::vector<CostPoint> pareto_frontier(const std::vector<CostPoint> &points) {
    std::vector<CostPoint> out;
    for (size_t i = 0; i < points.size(); i++) {
        const auto &a = points[i];
        bool dominated = false;
        for (size_t j = 0; j < points.size() && !dominated; j++) {
            const auto &b = points[j];
            bool no_worse = b.expected_cost <= a.expected_cost && b.error_rate <= a.error_rate;
            bool better = b.expected_cost < a.expected_cost || b.error_rate < a.error_rate;
            dominated = j != i && no_worse && better;
        }
        if (!dominated) {
            out.push_back(a);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CostPoint &x, const CostPoint &y) {
        return x.expected_cost < y.expected_cost;
    });
    return out;
}

}  // namespace hookinj

#endif
