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

#ifndef HOOKINJ_HARNESS_EXPERIMENT_HPP
#define HOOKINJ_HARNESS_EXPERIMENT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hookinj/analysis/dem.hpp"
#include "hookinj/builders/builders.hpp"
#include "hookinj/circuit/noise.hpp"
#include "hookinj/circuit/transpile.hpp"
#include "hookinj/decoding/graph.hpp"
#include "hookinj/decoding/mwpm.hpp"
#include "hookinj/harness/stats.hpp"
#include "hookinj/sim/frame_sampler.hpp"
#include "hookinj/sim/reference.hpp"
#include "hookinj/sim/rng.hpp"

namespace hookinj {

struct TrialStats {
    InjectionSpec spec;
    double p = 0;
    uint64_t shots = 0;
    uint64_t discards = 0;
    /// Logical errors among undiscarded shots.
    uint64_t errors = 0;
    uint64_t seed = 0;

    uint64_t kept() const {
        return shots - discards;
    }
    double discard_rate() const {
        return shots ? (double)discards / (double)shots : 0.0;
    }
    double error_rate() const {
        return kept() ? (double)errors / (double)kept() : 0.0;
    }
    /// Factor-1000 likelihood interval on the error rate; (0, 1) when nothing was kept.
    std::pair<double, double> error_interval(double factor = 1000) const {
        if (kept() == 0) {
            return {0.0, 1.0};
        }
        return likelihood_interval(errors, kept(), factor);
    }
    double cost() const {
        return expected_cost(spec.d_inject, spec.r_inject, std::min(discard_rate(), 1 - 1e-12));
    }
    CostPoint cost_point() const {
        auto [lo, hi] = error_interval();
        return {cost(), error_rate(), lo, hi, discard_rate(),
                "(" + std::to_string(spec.r_inject) + "," + std::to_string(spec.d_inject) + ")"};
    }
    bool operator==(const TrialStats &o) const {
        return shots == o.shots && discards == o.discards && errors == o.errors && seed == o.seed && p == o.p;
    }
};

struct RunOptions {
    uint64_t max_shots = 1'000'000;
    uint64_t max_errors = 1000;
    uint64_t seed = 0;
    unsigned workers = 1;
    uint64_t batch_size = uint64_t{1} << 16;
};

/// Everything derived from a spec and noise strength that does not depend on the shots.
struct PreparedExperiment {
    InjectionSpec spec;
    double p = 0;
    AnnotatedCircuit built;
    Circuit noisy;
    ReferenceFrame reference;
    DetectorErrorModel dem;
    DecodingGraph graph;
    std::vector<uint64_t> postselect_mask;

    static std::unique_ptr<PreparedExperiment> make(const InjectionSpec &spec, double p) {
        auto out = std::make_unique<PreparedExperiment>();
        out->spec = spec;
        out->p = p;
        out->built = build(spec);
        out->noisy = apply_si1000(transpile_to_cz(out->built.circuit), NoiseParams{p});
        out->reference = compute_reference(out->noisy);
        out->dem = extract_dem(out->noisy);
        out->graph = build_graph(out->dem, out->built.postselected);
        size_t nd = out->noisy.num_detectors();
        out->postselect_mask.assign(words_for_bits(nd), 0);
        for (size_t d = 0; d < out->built.postselected.size() && d < nd; d++) {
            if (out->built.postselected[d]) {
                out->postselect_mask[d / 64] |= uint64_t{1} << (d % 64);
            }
        }
        return out;
    }
};

namespace detail {

/// Seed for batch b; batches draw independent streams so the stop rule does not shift shot noise.
inline uint64_t batch_seed(uint64_t seed, uint64_t b) {
    return splitmix64_mix(seed ^ splitmix64_mix(b + 0x9E3779B97F4A7C15ULL));
}

/// Runs fn(w) for w in [0, workers) on separate threads.
inline void parallel_for_workers(unsigned workers, const std::function<void(unsigned)> &fn) {
    if (workers <= 1) {
        fn(0);
        return;
    }
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; w++) {
        threads.emplace_back(fn, w);
    }
    for (auto &t : threads) {
        t.join();
    }
}

}  // namespace detail

/// Samples, postselects and decodes in batches until max_shots or max_errors is reached. Counts are
/// identical for any worker count: shots are drawn from per-shot streams and the stop rule is only
/// checked between batches.
inline TrialStats run_experiment(const PreparedExperiment &ex, const RunOptions &opt) {
    if (opt.max_shots < 1 || opt.max_errors < 1 || opt.batch_size < 1) {
        throw std::invalid_argument("max_shots, max_errors and batch_size must be positive");
    }
    TrialStats st;
    st.spec = ex.spec;
    st.p = ex.p;
    st.seed = opt.seed;
    FrameSampler sampler(ex.noisy);
    MwpmDecoder decoder(ex.graph);
    unsigned workers = std::max(1u, opt.workers);
    for (uint64_t b = 0; st.shots < opt.max_shots && st.errors < opt.max_errors; b++) {
        size_t n = (size_t)std::min(opt.batch_size, opt.max_shots - st.shots);
        ShotBatch batch = sampler.sample(n, detail::batch_seed(opt.seed, b), workers);
        std::vector<uint64_t> discards(workers, 0), errors(workers, 0);
        detail::parallel_for_workers(workers, [&](unsigned w) {
            std::vector<uint32_t> fired;
            for (size_t s = w; s < n; s += workers) {
                auto row = batch.detectors.row(s);
                bool discard = false;
                for (size_t k = 0; k < row.size() && !discard; k++) {
                    discard = (row[k] & ex.postselect_mask[k]) != 0;
                }
                if (discard) {
                    discards[w]++;
                    continue;
                }
                fired.clear();
                for (size_t k = 0; k < row.size(); k++) {
                    for (uint64_t bits = row[k]; bits; bits &= bits - 1) {
                        fired.push_back((uint32_t)(k * 64 + (size_t)__builtin_ctzll(bits)));
                    }
                }
                uint64_t actual = batch.observables.row(s).empty() ? 0 : batch.observables.row(s)[0];
                uint64_t predicted = fired.empty() ? 0 : decoder.decode(fired);
                if (((actual ^ predicted) >> ex.built.observable_index) & 1) {
                    errors[w]++;
                }
            }
        });
        st.shots += n;
        for (unsigned w = 0; w < workers; w++) {
            st.discards += discards[w];
            st.errors += errors[w];
        }
    }
    return st;
}

inline TrialStats run_experiment(const InjectionSpec &spec, double p, const RunOptions &opt) {
    auto ex = PreparedExperiment::make(spec, p);
    return run_experiment(*ex, opt);
}

/// Mean detection-event rate over all detectors and shots of a noiseless circuit after SI1000 noise
/// of strength p.
inline double detection_fraction(const Circuit &circuit, double p, size_t shots, uint64_t seed,
                                 unsigned workers = 1) {
    Circuit noisy = apply_si1000(transpile_to_cz(circuit), NoiseParams{p});
    ReferenceFrame ref = compute_reference(noisy);
    size_t nd = noisy.num_detectors();
    if (nd == 0 || shots == 0) {
        return 0.0;
    }
    ShotBatch batch = frame_sample(noisy, ref, shots, seed, workers);
    return (double)batch.detectors.count_ones() / ((double)nd * (double)shots);
}

/// One row per (protocol, d_inject, r_inject) variant, each with its own stop rule.
struct SweepGrid {
    std::vector<Protocol> protocols{Protocol::Hook};
    std::vector<InjectedState> states{InjectedState::I};
    std::vector<int> d_inject{2, 3, 4, 5, 6, 7};
    std::vector<int> r_inject{1, 2, 3, 4, 5, 6};
    std::vector<double> ps{0.001};
    int d = 7;
    int r_hold = 7;
    /// Extra d_inject values used only for hook_pregrown (postselection diameter beyond d).
    std::vector<int> pregrown_extra{8, 9, 10, 11};

    std::vector<InjectionSpec> specs() const {
        std::vector<InjectionSpec> out;
        for (Protocol pr : protocols) {
            std::vector<int> ks = d_inject;
            if (pr == Protocol::HookPregrown) {
                ks.insert(ks.end(), pregrown_extra.begin(), pregrown_extra.end());
            }
            for (InjectedState s : states) {
                for (int k : ks) {
                    for (int r : r_inject) {
                        InjectionSpec spec;
                        spec.protocol = pr;
                        spec.state = s;
                        spec.d_inject = k;
                        spec.r_inject = r;
                        spec.d = d;
                        spec.r_hold = r_hold;
                        try {
                            spec.validate();
                        } catch (const std::invalid_argument &) {
                            continue;
                        }
                        out.push_back(spec);
                    }
                }
            }
        }
        return out;
    }
};

/// Runs every variant of the grid at every p. `on_row` sees each finished row in order.
inline std::vector<TrialStats> sweep(const SweepGrid &grid, const RunOptions &opt,
                                     const std::function<void(const TrialStats &)> &on_row = {}) {
    std::vector<TrialStats> rows;
    for (double p : grid.ps) {
        for (const auto &spec : grid.specs()) {
            rows.push_back(run_experiment(spec, p, opt));
            if (on_row) {
                on_row(rows.back());
            }
        }
    }
    return rows;
}

}  // namespace hookinj

#endif
