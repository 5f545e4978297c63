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

#ifndef HOOKINJ_DECODING_MWPM_HPP
#define HOOKINJ_DECODING_MWPM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hookinj/decoding/blossom.hpp"
#include "hookinj/decoding/graph.hpp"

namespace hookinj {

/// Shortest-path distances between fired nodes (and from each to the boundary), with the observable
/// parity of the chosen path. Entry [i][n] is the boundary.
struct SyndromeDistances {
    std::vector<std::vector<double>> dist;
    std::vector<std::vector<uint64_t>> obs;
};

/// Lowest total weight of a pairing of fired nodes (with each other or the boundary), computed by
/// exhaustive DP over subsets. Exponential; used to cross-check the blossom matcher.
struct MatchingResult {
    double weight = 0;
    uint64_t observables = 0;
};

inline MatchingResult match_by_subset_dp(const SyndromeDistances &sd) {
    size_t n = sd.dist.size();
    if (n > 20) {
        throw std::invalid_argument("subset DP matching is limited to 20 fired detectors");
    }
    std::vector<double> best(size_t{1} << n, std::numeric_limits<double>::infinity());
    std::vector<uint64_t> obs(size_t{1} << n, 0);
    best[0] = 0;
    for (size_t mask = 1; mask < best.size(); mask++) {
        size_t i = (size_t)__builtin_ctzll(mask);
        size_t rest = mask & ~(size_t{1} << i);
        double c = best[rest] + sd.dist[i][n];
        if (c < best[mask]) {
            best[mask] = c;
            obs[mask] = obs[rest] ^ sd.obs[i][n];
        }
        for (size_t j = i + 1; j < n; j++) {
            if (!(rest & (size_t{1} << j))) {
                continue;
            }
            size_t r2 = rest & ~(size_t{1} << j);
            double c2 = best[r2] + sd.dist[i][j];
            if (c2 < best[mask]) {
                best[mask] = c2;
                obs[mask] = obs[r2] ^ sd.obs[i][j];
            }
        }
    }
    return {best.back(), obs.back()};
}

/// Minimum-weight perfect matching decoder over a DecodingGraph. Read-only after construction, so
/// one instance can be shared by concurrent decode calls.
class MwpmDecoder {
   public:
    /// Graphs with at most this many nodes get an all-pairs distance table at construction.
    static constexpr size_t kTableLimit = 2048;

    explicit MwpmDecoder(const DecodingGraph &graph) : graph_(&graph) {
        if (graph.num_nodes <= kTableLimit) {
            size_t n = graph.num_nodes;
            table_dist_.resize(n * n);
            table_obs_.resize(n * n);
            std::vector<double> dist;
            std::vector<uint64_t> par;
            for (uint32_t s = 0; s < n; s++) {
                single_source(s, dist, par, nullptr, 0);
                std::copy(dist.begin(), dist.end(), table_dist_.begin() + (ptrdiff_t)(s * n));
                std::copy(par.begin(), par.end(), table_obs_.begin() + (ptrdiff_t)(s * n));
            }
        }
    }

    bool has_table() const {
        return !table_dist_.empty();
    }

    /// Distances between the given graph nodes and to the boundary. Paths never pass through the
    /// boundary node.
    SyndromeDistances distances(const std::vector<uint32_t> &nodes) const {
        const DecodingGraph &g = *graph_;
        size_t n = nodes.size();
        SyndromeDistances sd;
        sd.dist.assign(n, std::vector<double>(n + 1, std::numeric_limits<double>::infinity()));
        sd.obs.assign(n, std::vector<uint64_t>(n + 1, 0));
        if (has_table()) {
            size_t stride = g.num_nodes;
            for (size_t i = 0; i < n; i++) {
                size_t base = nodes[i] * stride;
                for (size_t j = 0; j < n; j++) {
                    sd.dist[i][j] = table_dist_[base + nodes[j]];
                    sd.obs[i][j] = table_obs_[base + nodes[j]];
                }
                sd.dist[i][n] = table_dist_[base + g.boundary];
                sd.obs[i][n] = table_obs_[base + g.boundary];
            }
            return sd;
        }
        std::vector<double> dist;
        std::vector<uint64_t> par;
        for (size_t i = 0; i < n; i++) {
            single_source(nodes[i], dist, par, &nodes, i);
            for (size_t j = i; j < n; j++) {
                sd.dist[i][j] = sd.dist[j][i] = dist[nodes[j]];
                sd.obs[i][j] = sd.obs[j][i] = par[nodes[j]];
            }
            sd.dist[i][n] = dist[g.boundary];
            sd.obs[i][n] = par[g.boundary];
        }
        return sd;
    }

    /// Matches fired nodes with the blossom algorithm. Each fired node gets a private boundary twin;
    /// twins are joined to each other at zero cost so any subset can go to the boundary.
    MatchingResult match(const SyndromeDistances &sd) const {
        size_t n = sd.dist.size();
        if (n == 0) {
            return {};
        }
        constexpr double scale = 1 << 20;
        constexpr double inf_cost = 1e12;
        auto icost = [&](double w) -> int64_t { return std::isfinite(w) ? std::llround(w * scale) : (int64_t)inf_cost; };
        int64_t big = 0;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = i + 1; j <= n; j++) {
                big = std::max(big, icost(sd.dist[i][j]));
            }
        }
        big += 1;
        std::vector<WeightedEdge> edges;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = i + 1; j < n; j++) {
                if (std::isfinite(sd.dist[i][j])) {
                    edges.push_back({(int32_t)i, (int32_t)j, big - icost(sd.dist[i][j])});
                }
            }
            if (std::isfinite(sd.dist[i][n])) {
                edges.push_back({(int32_t)i, (int32_t)(n + i), big - icost(sd.dist[i][n])});
            }
            for (size_t j = i + 1; j < n; j++) {
                edges.push_back({(int32_t)(n + i), (int32_t)(n + j), big});
            }
        }
        BlossomMatcher bm;
        auto mate = bm.solve((int32_t)(2 * n), edges, true);
        MatchingResult out;
        for (size_t i = 0; i < n; i++) {
            int32_t m = mate[i];
            if (m < 0) {
                throw std::runtime_error("matching left a fired detector unmatched");
            }
            if ((size_t)m >= n) {
                out.weight += sd.dist[i][n];
                out.observables ^= sd.obs[i][n];
            } else if ((size_t)m > i) {
                out.weight += sd.dist[i][m];
                out.observables ^= sd.obs[i][m];
            }
        }
        return out;
    }

    /// Predicted observable flips for a list of fired detector indices (postselected ones are ignored).
    uint64_t decode(const std::vector<uint32_t> &fired_detectors) const {
        std::vector<uint32_t> nodes;
        for (uint32_t d : fired_detectors) {
            int32_t node = graph_->node_of_detector.at(d);
            if (node >= 0) {
                nodes.push_back((uint32_t)node);
            }
        }
        if (nodes.empty()) {
            return 0;
        }
        return match(distances(nodes)).observables;
    }

    const DecodingGraph &graph() const {
        return *graph_;
    }

   private:
    /// Dijkstra from `source`. With `targets`, stops once targets[first..] and the boundary are
    /// settled; otherwise settles everything.
    void single_source(uint32_t source, std::vector<double> &dist, std::vector<uint64_t> &par,
                       const std::vector<uint32_t> *targets, size_t first) const {
        const DecodingGraph &g = *graph_;
        dist.assign(g.num_nodes, std::numeric_limits<double>::infinity());
        par.assign(g.num_nodes, 0);
        size_t remaining = 1;
        std::vector<uint8_t> wanted;
        if (targets) {
            wanted.assign(g.num_nodes, 0);
            for (size_t j = first; j < targets->size(); j++) {
                remaining += !wanted[(*targets)[j]];
                wanted[(*targets)[j]] = 1;
            }
        }
        using Item = std::pair<double, uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[source] = 0;
        pq.push({0, source});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) {
                continue;
            }
            if (targets) {
                if (wanted[u] || u == g.boundary) {
                    remaining--;
                }
                if (remaining == 0) {
                    break;
                }
            }
            // The boundary is a sink: paths do not continue through it.
            if (u == g.boundary) {
                continue;
            }
            for (auto [v, e] : g.adjacency[u]) {
                double nd = d + g.edges[e].weight;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    par[v] = par[u] ^ g.edges[e].observables;
                    pq.push({nd, v});
                }
            }
        }
    }

    const DecodingGraph *graph_;
    std::vector<double> table_dist_;
    std::vector<uint64_t> table_obs_;
};

/// Exact maximum-likelihood decoding by enumerating every subset of mechanisms. Predicts the
/// observable mask with the largest total probability among subsets reproducing the syndrome; ties
/// go to no flip.
inline uint64_t decode_ml_bruteforce(const DetectorErrorModel &dem, const std::vector<uint32_t> &fired_detectors) {
    size_t m = dem.mechanisms.size();
    if (m > 20) {
        throw std::invalid_argument("brute-force ML decoding is limited to 20 mechanisms");
    }
    if (dem.num_detectors > 64) {
        throw std::invalid_argument("brute-force ML decoding is limited to 64 detectors");
    }
    uint64_t target = 0;
    for (uint32_t d : fired_detectors) {
        target ^= uint64_t{1} << d;
    }
    std::vector<uint64_t> sig(m, 0);
    for (size_t k = 0; k < m; k++) {
        for (uint32_t d : dem.mechanisms[k].detectors) {
            sig[k] ^= uint64_t{1} << d;
        }
    }
    std::map<uint64_t, double> mass;
    for (uint64_t s = 0; s < (uint64_t{1} << m); s++) {
        uint64_t syn = 0, obs = 0;
        double p = 1;
        for (size_t k = 0; k < m; k++) {
            if ((s >> k) & 1) {
                syn ^= sig[k];
                obs ^= dem.mechanisms[k].observables;
                p *= dem.mechanisms[k].probability;
            } else {
                p *= 1 - dem.mechanisms[k].probability;
            }
        }
        if (syn == target) {
            mass[obs] += p;
        }
    }
    uint64_t best = 0;
    double best_p = mass.count(0) ? mass[0] : 0;
    for (const auto &[obs, p] : mass) {
        if (p > best_p) {
            best_p = p;
            best = obs;
        }
    }
    return best;
}

}  // namespace hookinj

#endif
