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

#ifndef HOOKINJ_DECODING_GRAPH_HPP
#define HOOKINJ_DECODING_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hookinj/analysis/dem.hpp"

namespace hookinj {

class DecompositionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Log-likelihood weight of an independent error with probability p.
inline double edge_weight(double p) {
    if (p <= 0) {
        return std::numeric_limits<double>::infinity();
    }
    if (p >= 0.5) {
        return 0;
    }
    return std::log((1 - p) / p);
}

struct GraphEdge {
    uint32_t u = 0;
    /// Second endpoint; equals the boundary node for single-detector edges.
    uint32_t v = 0;
    double probability = 0;
    double weight = 0;
    uint64_t observables = 0;
    /// DEM mechanism indices that contributed probability to this edge.
    std::vector<uint32_t> mechanisms;
};

/// Matching graph over the detectors plus one boundary node.
struct DecodingGraph {
    size_t num_nodes = 0;
    uint32_t boundary = 0;
    /// Detector index -> node, or -1 for dropped postselected detectors.
    std::vector<int32_t> node_of_detector;
    std::vector<uint32_t> detector_of_node;
    std::vector<GraphEdge> edges;
    /// Per node: (neighbour, edge index).
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adjacency;
    /// Mechanisms whose remaining signature is empty but flip an observable; no decoder can see them.
    std::vector<uint32_t> invisible;
    /// Number of mechanisms with more than two remaining detectors that were split into edges.
    size_t num_decomposed = 0;

    std::optional<uint32_t> find_edge(uint32_t a, uint32_t b) const {
        if (a > b) {
            std::swap(a, b);
        }
        for (auto [n, e] : adjacency[a]) {
            if (n == b) {
                return e;
            }
        }
        return std::nullopt;
    }

    void scale_weights(double factor) {
        for (auto &e : edges) {
            e.weight *= factor;
        }
    }
};

namespace detail {

struct PendingEdge {
    double probability = 0;
    uint64_t observables = 0;
    std::vector<uint32_t> mechanisms;
};

/// One graphlike piece of a split hyperedge: the node pair and which observable variant of it.
struct CoverPart {
    uint32_t a = 0;
    uint32_t b = 0;
    uint64_t observables = 0;
};

/// Cheapest way to split `nodes` into existing edge signatures (pairs or single boundary edges) whose
/// observable masks XOR to `target`. Every observable variant seen on a node pair is a candidate, not
/// only the dominant one. Returns nullopt when no cover exists.
inline std::optional<std::vector<CoverPart>> cover_hyperedge(
    const std::vector<uint32_t> &nodes, uint64_t target, uint32_t boundary,
    const std::map<std::pair<uint32_t, uint32_t>, std::map<uint64_t, PendingEdge>> &known) {
    size_t n = nodes.size();
    if (n > 16) {
        return std::nullopt;
    }
    struct Best {
        double cost;
        std::vector<CoverPart> parts;
    };
    // memo[mask] maps achievable observable masks to the cheapest cover of the nodes in mask.
    std::vector<std::optional<std::map<uint64_t, Best>>> memo(size_t{1} << n);
    std::function<const std::map<uint64_t, Best> &(uint32_t)> solve = [&](uint32_t mask) -> const std::map<uint64_t, Best> & {
        if (memo[mask]) {
            return *memo[mask];
        }
        std::map<uint64_t, Best> out;
        if (mask == 0) {
            out[0] = Best{0, {}};
            memo[mask] = std::move(out);
            return *memo[mask];
        }
        uint32_t i = (uint32_t)__builtin_ctz(mask);
        auto consider = [&](uint32_t rest, uint32_t a, uint32_t b) {
            auto it = known.find({std::min(a, b), std::max(a, b)});
            if (it == known.end()) {
                return;
            }
            const auto &sub = solve(rest);
            for (const auto &[variant, pe] : it->second) {
                double w = edge_weight(pe.probability);
                for (const auto &[obs, best] : sub) {
                    uint64_t o = obs ^ variant;
                    double c = best.cost + w;
                    auto found = out.find(o);
                    if (found == out.end() || c < found->second.cost) {
                        Best nb{c, best.parts};
                        nb.parts.push_back({std::min(a, b), std::max(a, b), variant});
                        out[o] = std::move(nb);
                    }
                }
            }
        };
        uint32_t without_i = mask & ~(1u << i);
        consider(without_i, nodes[i], boundary);
        for (uint32_t j = i + 1; j < n; j++) {
            if (mask & (1u << j)) {
                consider(without_i & ~(1u << j), nodes[i], nodes[j]);
            }
        }
        memo[mask] = std::move(out);
        return *memo[mask];
    };
    const auto &all = solve((uint32_t)((size_t{1} << n) - 1));
    auto it = all.find(target);
    if (it == all.end()) {
        return std::nullopt;
    }
    return it->second.parts;
}

}  // namespace detail

/// How postselected detectors enter the matching graph.
enum class PostselectedNodes {
    /// Kept as ordinary nodes. They never fire in an accepted shot, but paths may run through them,
    /// which keeps apart error classes that only differ in the postselected region.
    Keep,
    /// Removed from every signature. Cheaper, but merges those classes onto shared edges.
    Drop,
};

/// Builds the matching graph. Mechanisms with one or two remaining detectors become edges; larger
/// ones are split into the cheapest cover by existing edges with a matching observable mask.
/// Parallel contributions are merged by XOR probability; when they disagree on the observable mask
/// the more likely mask is kept.
inline DecodingGraph build_graph(const DetectorErrorModel &dem, const std::vector<bool> &postselected,
                                 PostselectedNodes mode = PostselectedNodes::Keep) {
    DecodingGraph g;
    g.node_of_detector.assign(dem.num_detectors, -1);
    for (size_t d = 0; d < dem.num_detectors; d++) {
        if (mode == PostselectedNodes::Drop && d < postselected.size() && postselected[d]) {
            continue;
        }
        g.node_of_detector[d] = (int32_t)g.detector_of_node.size();
        g.detector_of_node.push_back((uint32_t)d);
    }
    g.boundary = (uint32_t)g.detector_of_node.size();
    g.num_nodes = g.boundary + 1;

    std::vector<std::vector<uint32_t>> remaining(dem.mechanisms.size());
    for (size_t m = 0; m < dem.mechanisms.size(); m++) {
        for (uint32_t d : dem.mechanisms[m].detectors) {
            if (g.node_of_detector[d] >= 0) {
                remaining[m].push_back((uint32_t)g.node_of_detector[d]);
            }
        }
    }

    // Per (a, b) key, probability mass split by observable mask so conflicts can be resolved.
    std::map<std::pair<uint32_t, uint32_t>, std::map<uint64_t, detail::PendingEdge>> parts;
    auto add = [&](uint32_t a, uint32_t b, uint64_t obs, double p, uint32_t m) {
        auto &slot = parts[{std::min(a, b), std::max(a, b)}][obs];
        slot.probability = xor_probability(slot.probability, p);
        slot.observables = obs;
        slot.mechanisms.push_back(m);
    };
    for (size_t m = 0; m < dem.mechanisms.size(); m++) {
        const auto &mech = dem.mechanisms[m];
        const auto &r = remaining[m];
        if (r.empty()) {
            if (mech.observables) {
                g.invisible.push_back((uint32_t)m);
            }
        } else if (r.size() == 1) {
            add(r[0], g.boundary, mech.observables, mech.probability, (uint32_t)m);
        } else if (r.size() == 2) {
            add(r[0], r[1], mech.observables, mech.probability, (uint32_t)m);
        }
    }
    auto collapse = [&]() {
        std::map<std::pair<uint32_t, uint32_t>, detail::PendingEdge> out;
        for (const auto &[key, by_obs] : parts) {
            detail::PendingEdge best;
            std::vector<uint32_t> all;
            double total = 0;
            double best_p = -1;
            for (const auto &[obs, pe] : by_obs) {
                total = xor_probability(total, pe.probability);
                all.insert(all.end(), pe.mechanisms.begin(), pe.mechanisms.end());
                if (pe.probability > best_p) {
                    best_p = pe.probability;
                    best.observables = obs;
                }
            }
            best.probability = total;
            best.mechanisms = std::move(all);
            out[key] = std::move(best);
        }
        return out;
    };
    // Covers are chosen against the graphlike mechanisms only, so the result does not depend on the
    // order hyperedges are visited.
    const auto graphlike = parts;
    for (size_t m = 0; m < dem.mechanisms.size(); m++) {
        const auto &r = remaining[m];
        if (r.size() <= 2) {
            continue;
        }
        const auto &mech = dem.mechanisms[m];
        auto cover = detail::cover_hyperedge(r, mech.observables, g.boundary, graphlike);
        if (!cover) {
            std::string dets;
            for (uint32_t d : mech.detectors) {
                dets += " D" + std::to_string(d);
            }
            throw DecompositionError("cannot split mechanism " + std::to_string(m) + " (" + dets.substr(1) +
                                     ") into graphlike edges");
        }
        for (const auto &part : *cover) {
            add(part.a, part.b, part.observables, mech.probability, (uint32_t)m);
        }
        g.num_decomposed++;
    }
    auto known = collapse();

    g.adjacency.assign(g.num_nodes, {});
    for (auto &[key, pe] : known) {
        GraphEdge e;
        e.u = key.first;
        e.v = key.second;
        e.probability = pe.probability;
        e.weight = edge_weight(pe.probability);
        e.observables = pe.observables;
        e.mechanisms = std::move(pe.mechanisms);
        uint32_t idx = (uint32_t)g.edges.size();
        g.adjacency[e.u].push_back({e.v, idx});
        g.adjacency[e.v].push_back({e.u, idx});
        g.edges.push_back(std::move(e));
    }
    return g;
}

}  // namespace hookinj

#endif
