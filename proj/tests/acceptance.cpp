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

// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hookinj/analysis/census.hpp"
#include "hookinj/analysis/dem.hpp"
#include "hookinj/builders/builders.hpp"
#include "hookinj/circuit/noise.hpp"
#include "hookinj/circuit/transpile.hpp"
#include "hookinj/decoding/graph.hpp"
#include "hookinj/decoding/mwpm.hpp"
#include "hookinj/harness/experiment.hpp"
#include "hookinj/harness/stats.hpp"
#include "hookinj/sim/frame_sampler.hpp"
#include "hookinj/sim/reference.hpp"
#include "hookinj/sim/rng.hpp"

using namespace hookinj;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

unsigned g_workers = std::max(1u, std::thread::hardware_concurrency());

Circuit noisy_circuit(const InjectionSpec &spec, double p) {
    return apply_si1000(transpile_to_cz(build(spec).circuit), NoiseParams{p});
}

InjectionSpec hook_spec(InjectedState state, int k, int r, int d, int r_hold) {
    InjectionSpec s;
    s.protocol = Protocol::Hook;
    s.state = state;
    s.d_inject = k;
    s.r_inject = r;
    s.d = d;
    s.r_hold = r_hold;
    return s;
}

double sigma(const TrialStats &st) {
    double q = st.error_rate();
    return st.kept() ? std::sqrt(std::max(q * (1 - q), 1e-300) / (double)st.kept()) : 1.0;
}

std::string describe(const TrialStats &st) {
    auto [lo, hi] = st.error_interval();
    return protocol_name(st.spec.protocol) + "(" + std::to_string(st.spec.d_inject) + "," +
           std::to_string(st.spec.r_inject) + ",d=" + std::to_string(st.spec.d) + ") err=" +
           fmt("%.3e", st.error_rate()) + " [" + fmt("%.2e", lo) + "," + fmt("%.2e", hi) + "] discard=" +
           fmt("%.3f", st.discard_rate()) + " shots=" + std::to_string(st.shots) + " errors=" +
           std::to_string(st.errors);
}

Outcome criterion1() {
    auto t0 = Clock::now();
    std::ostringstream out;
    bool ok = true;
    for (InjectedState state : {InjectedState::I, InjectedState::Plus}) {
        auto spec = hook_spec(state, 5, 2, 7, 1);
        auto built = build(spec);
        auto dem = extract_dem(apply_si1000(transpile_to_cz(built.circuit), NoiseParams{0.001}));
        auto terms = find_distance1(dem, uint64_t{1} << built.observable_index);
        auto b = summarize_distance1(terms);
        size_t want = state == InjectedState::I ? 4 : 3;
        bool this_ok = terms.size() == want;
        if (state == InjectedState::I) {
            // One rotation term, two terms on the CZ layer before it and one on the CZ layer after.
            bool layers = b.two_qubit_by_layer.size() == 2 && b.two_qubit_by_layer.begin()->second == 2 &&
                          b.two_qubit_by_layer.rbegin()->second == 1;
            this_ok = this_ok && b.single_qubit == 1 && b.two_qubit_before == 2 && b.two_qubit_after == 1 &&
                      b.other == 0 && layers;
        }
        ok = ok && this_ok;
        out << state_name(state) << ": " << terms.size() << " (want " << want << "; 1q=" << b.single_qubit
            << " before=" << b.two_qubit_before << " after=" << b.two_qubit_after << " other=" << b.other << ") ";
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 60;
    out << "time=" << fmt("%.1fs", secs);
    return {ok, out.str()};
}

Outcome criterion2() {
    auto t0 = Clock::now();
    std::ostringstream out;
    bool ok = true;
    for (InjectedState state : {InjectedState::I, InjectedState::Plus}) {
        auto spec = hook_spec(state, 5, 2, 7, 1);
        auto built = build(spec);
        auto dem = extract_dem(apply_si1000(transpile_to_cz(built.circuit), NoiseParams{0.001}));
        auto c = find_distance2(dem, built.postselected, PairWindow::Anywhere, uint64_t{1} << built.observable_index);
        double want_n = state == InjectedState::I ? 213 : 200;
        double want_c = state == InjectedState::I ? 56 : 21;
        double coef = c.coefficient(0.001);
        bool this_ok = std::abs((double)c.num_participating - want_n) <= 0.15 * want_n &&
                       std::abs(coef - want_c) <= 0.25 * want_c;
        ok = ok && this_ok;
        out << state_name(state) << ": participating=" << c.num_participating << " (want " << want_n
            << "+-15%) c2=" << fmt("%.2f", coef) << " (want " << want_c << "+-25%) ";
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 600;
    out << "time=" << fmt("%.1fs", secs);
    return {ok, out.str()};
}

Outcome criterion3() {
    auto t0 = Clock::now();
    std::ostringstream out;
    bool ok = true;
    for (double p : {1e-3, 3e-3, 1e-2}) {
        RunOptions opt;
        opt.max_shots = 1'000'000;
        opt.max_errors = 300;
        opt.seed = 3;
        opt.workers = g_workers;
        auto st = run_experiment(hook_spec(InjectedState::I, 5, 2, 7, 1), p, opt);
        double lower = 7 * p / 30 - 4 * sigma(st);
        double upper = 6 * analytic_limit(InjectedState::I, p);
        bool this_ok = st.error_rate() >= lower && st.error_rate() <= upper;
        ok = ok && this_ok;
        out << "p=" << p << ": err=" << fmt("%.3e", st.error_rate()) << " in [" << fmt("%.3e", lower) << ","
            << fmt("%.3e", upper) << "]" << (this_ok ? "" : " MISS") << " (" << st.errors << "/" << st.kept()
            << "); ";
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 1800;
    out << "time=" << fmt("%.1fs", secs);
    return {ok, out.str()};
}

TrialStats operating_point(int k, int d, uint64_t seed) {
    RunOptions opt;
    opt.max_shots = 1'000'000;
    opt.max_errors = 1000;
    opt.seed = seed;
    opt.workers = g_workers;
    return run_experiment(hook_spec(InjectedState::I, k, 2, d, 1), 0.001, opt);
}

Outcome criterion4(const TrialStats &a, const TrialStats &b) {
    bool first = a.error_rate() >= 3e-4 && a.error_rate() <= 3e-3 && a.discard_rate() >= 0.2 && a.discard_rate() <= 0.6;
    bool second = b.error_rate() < a.error_rate() && b.discard_rate() > a.discard_rate();
    return {first && second, describe(a) + "; " + describe(b)};
}

Outcome criterion5() {
    double c1 = expected_cost(5, 2, 0.5);
    double c2 = expected_cost(7, 2, 0.72);
    double c3 = expected_cost(15, 15, 0.0);
    // Each quoted figure is the computed cost rounded to its leading digit.
    auto rounds_to = [](double v, double quoted, double unit) { return std::round(v / unit) * unit == quoted; };
    bool ok = c1 == 196 && rounds_to(c1, 200, 100) && rounds_to(c2, 700, 100) && c3 == 6735 && rounds_to(c3, 7000, 1000);
    return {ok, "(5,2,0.5)->" + fmt("%.4g", c1) + " (7,2,0.72)->" + fmt("%.4g", c2) + " (15,15,0)->" +
                    fmt("%.4g", c3)};
}

Outcome criterion6(const TrialStats &hook) {
    std::ostringstream out;
    bool ok = true;
    out << describe(hook) << "; ";
    for (Protocol pr : {Protocol::Li, Protocol::Zz}) {
        InjectionSpec s = hook.spec;
        s.protocol = pr;
        RunOptions opt;
        opt.max_shots = 1'000'000;
        opt.max_errors = 1000;
        opt.seed = 6;
        opt.workers = g_workers;
        auto st = run_experiment(s, 0.001, opt);
        double z = (st.error_rate() - hook.error_rate()) / std::hypot(sigma(st), sigma(hook));
        ok = ok && z >= 4;
        out << describe(st) << " z=" << fmt("%.1f", z) << "; ";
    }
    return {ok, out.str()};
}

Outcome criterion7() {
    auto t0 = Clock::now();
    std::ostringstream out;
    bool ok = true;
    const size_t shots = 100'000;
    for (Protocol pr : {Protocol::Hook, Protocol::HookPregrown, Protocol::Li, Protocol::Zz, Protocol::ZzTweaked}) {
        InjectionSpec s;
        s.protocol = pr;
        s.d_inject = 3;
        s.r_inject = 2;
        s.d = 5;
        s.r_hold = 2;
        Circuit noisy = noisy_circuit(s, 0.005);
        ReferenceFrame ref = compute_reference(noisy);
        ShotBatch frame = frame_sample(noisy, ref, shots, 70, g_workers);
        size_t nd = noisy.num_detectors();
        std::vector<double> tab(nd, 0);
        for (size_t k = 0; k < shots; k++) {
            auto shot = tableau_run(noisy, splitmix64_mix(0x7ab1e + k), &ref.measurements);
            shot.detectors.for_each_set_bit([&](size_t d) { tab[d]++; });
        }
        std::vector<double> fr(nd, 0);
        for (size_t k = 0; k < shots; k++) {
            for (size_t d = 0; d < nd; d++) {
                fr[d] += frame.detectors.get(k, d);
            }
        }
        // Two-sample chi-square over detectors (2 x 2 table per detector, summed).
        double chi2 = 0;
        size_t dof = 0;
        for (size_t d = 0; d < nd; d++) {
            double pooled = (tab[d] + fr[d]) / (2.0 * shots);
            if (pooled <= 0 || pooled >= 1) {
                continue;
            }
            double var = pooled * (1 - pooled) * 2.0 / shots;
            double diff = (tab[d] - fr[d]) / shots;
            chi2 += diff * diff / var;
            dof++;
        }
        // Wilson-Hilferty upper quantile of chi-square at significance 1e-3 (z = 3.0902).
        double k = (double)std::max<size_t>(dof, 1);
        double crit = k * std::pow(1 - 2 / (9 * k) + 3.0902 * std::sqrt(2 / (9 * k)), 3);
        bool this_ok = chi2 <= crit;
        ok = ok && this_ok;
        out << protocol_name(pr) << " chi2=" << fmt("%.1f", chi2) << "/" << fmt("%.1f", crit) << "(" << dof << "); ";
    }
    // p = 0 gives empty batches.
    InjectionSpec s;
    s.d_inject = 3;
    s.d = 5;
    s.r_hold = 2;
    Circuit quiet = noisy_circuit(s, 0.0);
    ShotBatch zero = frame_sample(quiet, compute_reference(quiet), 4096, 1, g_workers);
    bool zeros = zero.detectors.count_ones() == 0 && zero.observables.count_ones() == 0;
    ok = ok && zeros;
    out << "p=0 zeros=" << (zeros ? "yes" : "no") << " time=" << fmt("%.1fs", seconds_since(t0));
    return {ok, out.str()};
}

Outcome criterion8() {
    SplitMix64 rng(8);
    double mwpm = 0, ml = 0;
    bool empty_ok = true;
    const int trials = 500;
    for (int t = 0; t < trials; t++) {
        DetectorErrorModel dem;
        dem.num_detectors = 8;
        dem.num_observables = 1;
        for (int k = 0; k < 12; k++) {
            ErrorMechanism m;
            m.probability = 0.01 + 0.2 * rng.uniform();
            std::set<uint32_t> dets;
            size_t want = 1 + rng.below(2);
            while (dets.size() < want) {
                dets.insert(rng.below(8));
            }
            m.detectors.assign(dets.begin(), dets.end());
            m.observables = rng.below(2);
            dem.mechanisms.push_back(m);
        }
        DecodingGraph g = build_graph(dem, {});
        MwpmDecoder dec(g);
        empty_ok = empty_ok && dec.decode({}) == 0;
        // Exact error rates: enumerate every error subset, decode each syndrome once.
        std::map<uint64_t, std::pair<uint64_t, uint64_t>> cache;
        for (uint64_t s = 0; s < (uint64_t{1} << 12); s++) {
            double pr = 1;
            uint64_t syn = 0, obs = 0;
            for (size_t k = 0; k < 12; k++) {
                const auto &m = dem.mechanisms[k];
                if ((s >> k) & 1) {
                    pr *= m.probability;
                    for (uint32_t d : m.detectors) {
                        syn ^= uint64_t{1} << d;
                    }
                    obs ^= m.observables;
                } else {
                    pr *= 1 - m.probability;
                }
            }
            auto it = cache.find(syn);
            if (it == cache.end()) {
                std::vector<uint32_t> fired;
                for (uint32_t d = 0; d < 8; d++) {
                    if ((syn >> d) & 1) {
                        fired.push_back(d);
                    }
                }
                it = cache.emplace(syn, std::make_pair(dec.decode(fired), decode_ml_bruteforce(dem, fired))).first;
            }
            mwpm += it->second.first != obs ? pr : 0;
            ml += it->second.second != obs ? pr : 0;
        }
    }
    mwpm /= trials;
    ml /= trials;
    return {mwpm <= ml + 0.05 && empty_ok,
            "mwpm=" + fmt("%.4f", mwpm) + " ml=" + fmt("%.4f", ml) + " empty->noflip=" + (empty_ok ? "yes" : "no")};
}

Outcome criterion9() {
    std::ostringstream out;
    const std::vector<double> ps{0.0005, 0.001, 0.002, 0.005, 0.01};
    bool monotone = true;
    std::vector<double> at2;
    for (int d : {3, 5, 7, 9}) {
        auto mem = build_memory(d, d, 'Z');
        double prev = detection_fraction(mem.circuit, 0.0, 1024, 9, g_workers);
        monotone = monotone && prev == 0;
        for (double p : ps) {
            double f = detection_fraction(mem.circuit, p, 20000, 9, g_workers);
            monotone = monotone && f >= prev;
            prev = f;
            if (p == 0.002) {
                at2.push_back(f);
            }
        }
    }
    double lo = *std::min_element(at2.begin(), at2.end());
    double hi = *std::max_element(at2.begin(), at2.end());
    double mean = (at2[0] + at2[1] + at2[2] + at2[3]) / 4;
    double spread = (hi - lo) / mean;
    out << "monotone=" << (monotone ? "yes" : "no") << " p=0.002 fractions:";
    for (double f : at2) {
        out << " " << fmt("%.4f", f);
    }
    out << " spread(max-min)/mean=" << fmt("%.3f", spread);
    return {monotone && spread < 0.2, out.str()};
}

Outcome criterion10() {
    auto spec = hook_spec(InjectedState::I, 3, 2, 5, 2);
    auto ex = PreparedExperiment::make(spec, 0.003);
    std::vector<TrialStats> runs;
    for (unsigned w : {1u, 2u, 3u, 8u}) {
        RunOptions opt;
        opt.max_shots = 200'000;
        opt.max_errors = 150;
        opt.batch_size = 8192;
        opt.seed = 10;
        opt.workers = w;
        runs.push_back(run_experiment(*ex, opt));
    }
    bool same = true;
    for (const auto &r : runs) {
        same = same && r == runs[0];
    }
    return {same, "workers 1/2/3/8: shots=" + std::to_string(runs[0].shots) + " discards=" +
                      std::to_string(runs[0].discards) + " errors=" + std::to_string(runs[0].errors) +
                      (same ? " identical" : " DIFFER")};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const std::string &name, const std::function<Outcome()> &fn) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << o.detail << " ["
                  << fmt("%.1fs", seconds_since(t0)) << "]" << std::endl;
    };
    report(1, "distance-1 census", criterion1);
    report(2, "distance-2 census", criterion2);
    report(3, "analytic floor", criterion3);
    TrialStats k5, k7;
    report(4, "operating points", [&] {
        k5 = operating_point(5, 7, 4);
        k7 = operating_point(7, 9, 4);
        return criterion4(k5, k7);
    });
    report(5, "cost model", criterion5);
    report(6, "protocol ordering", [&] { return criterion6(k5); });
    report(7, "simulator cross-validation", criterion7);
    report(8, "decoder oracle", criterion8);
    report(9, "detection fraction", criterion9);
    report(10, "determinism", criterion10);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
