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

#ifndef HOOKINJ_SIM_REFERENCE_HPP
#define HOOKINJ_SIM_REFERENCE_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hookinj/circuit/circuit.hpp"
#include "hookinj/sim/tableau.hpp"

namespace hookinj {

class NondeterministicError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Pauli terms of a two-qubit depolarizing channel, indexed 0..14.
inline std::pair<Pauli, Pauli> dep2_term(uint32_t k) {
    uint32_t v = k + 1;
    return {(Pauli)(v >> 2), (Pauli)(v & 3)};
}
inline Pauli dep1_term(uint32_t k) {
    return (Pauli)(k + 1);
}

inline void measure_product(Tableau &t, const PauliString &prod, SplitMix64 &rng, std::vector<BitVector> &out) {
    const auto &terms = prod.terms();
    const Clifford1 &h = CLIFFORD1_TABLE[(size_t)Gate::H];
    const Clifford1 &hyz = CLIFFORD1_TABLE[(size_t)Gate::H_YZ];
    auto basis = [&]() {
        for (auto [q, p] : terms) {
            if (p == Pauli::X) {
                t.apply_clifford1(h, q);
            } else if (p == Pauli::Y) {
                t.apply_clifford1(hyz, q);
            }
        }
    };
    uint32_t root = terms[0].first;
    basis();
    for (size_t k = 1; k < terms.size(); k++) {
        t.apply_cx(terms[k].first, root);
    }
    out.push_back(t.measure_z(root, rng));
    for (size_t k = 1; k < terms.size(); k++) {
        t.apply_cx(terms[k].first, root);
    }
    basis();
}

/// Runs the circuit on a tableau, appending one outcome expression per measurement.
/// Noise channels and measurement flips are sampled only when `noisy` is set.
inline std::vector<BitVector> run_on_tableau(const Circuit &circuit, Tableau &t, SplitMix64 &rng, bool noisy) {
    std::vector<BitVector> record;
    record.reserve(circuit.num_measurements());
    const Clifford1 &h = CLIFFORD1_TABLE[(size_t)Gate::H];
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        const Instruction &inst = circuit.instructions[k];
        Gate g = inst.gate;
        auto qs = is_operation(g) || is_noise(g) ? inst.qubits() : std::vector<uint32_t>{};
        if (is_clifford1(g)) {
            const Clifford1 &c = clifford_of(g);
            for (uint32_t q : qs) {
                t.apply_clifford1(c, q);
            }
        } else if (g == Gate::CX || g == Gate::CZ) {
            for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                if (g == Gate::CX) {
                    t.apply_cx(qs[j], qs[j + 1]);
                } else {
                    t.apply_cz(qs[j], qs[j + 1]);
                }
            }
        } else if (g == Gate::R || g == Gate::RX) {
            for (uint32_t q : qs) {
                if (g == Gate::RX) {
                    t.apply_clifford1(h, q);
                }
                t.reset_z(q, rng);
                if (g == Gate::RX) {
                    t.apply_clifford1(h, q);
                }
            }
        } else if (g == Gate::M || g == Gate::MX) {
            double flip = noisy && !inst.args.empty() ? inst.args[0] : 0;
            for (uint32_t q : qs) {
                if (g == Gate::MX) {
                    t.apply_clifford1(h, q);
                }
                BitVector e = t.measure_z(q, rng);
                if (g == Gate::MX) {
                    t.apply_clifford1(h, q);
                }
                if (flip > 0 && rng.bernoulli(flip)) {
                    e.flip(0);
                }
                record.push_back(std::move(e));
            }
        } else if (g == Gate::MPP) {
            for (const auto &prod : inst.mpp_products()) {
                measure_product(t, prod, rng, record);
            }
        } else if (is_noise(g)) {
            if (!noisy) {
                continue;
            }
            double p = inst.args.at(0);
            if (g == Gate::DEPOLARIZE2) {
                for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                    if (rng.bernoulli(p)) {
                        auto [a, b] = dep2_term(rng.below(15));
                        t.apply_pauli(a, qs[j]);
                        t.apply_pauli(b, qs[j + 1]);
                    }
                }
            } else {
                for (uint32_t q : qs) {
                    if (!rng.bernoulli(p)) {
                        continue;
                    }
                    Pauli e = g == Gate::X_ERROR ? Pauli::X : g == Gate::Z_ERROR ? Pauli::Z : dep1_term(rng.below(3));
                    t.apply_pauli(e, q);
                }
            }
        }
    }
    return record;
}

inline BitVector combine(const std::vector<BitVector> &record, const std::vector<size_t> &refs, size_t width) {
    BitVector out(width);
    for (size_t m : refs) {
        out ^= record[m];
    }
    return out;
}

}  // namespace detail

/// One shot of the reference simulator.
struct TableauShot {
    BitVector measurements;
    BitVector detectors;
    BitVector observables;
};

/// Samples one noisy shot by full stabilizer simulation. Detector and observable values are
/// reported relative to the noiseless reference (so a noiseless deterministic circuit gives zeros).
inline TableauShot tableau_run(const Circuit &circuit, uint64_t seed, const BitVector *reference = nullptr) {
    Tableau t(circuit.num_qubits());
    SplitMix64 rng(seed);
    auto record = detail::run_on_tableau(circuit, t, rng, true);
    auto map = circuit.record_map();
    TableauShot shot{BitVector(record.size()), BitVector(map.detectors.size()), BitVector(map.observables.size())};
    for (size_t m = 0; m < record.size(); m++) {
        bool v = record[m][0] ^ (reference ? (*reference)[m] : false);
        shot.measurements.set(m, v);
    }
    for (size_t d = 0; d < map.detectors.size(); d++) {
        bool v = false;
        for (size_t m : map.detectors[d]) {
            v ^= shot.measurements[m];
        }
        shot.detectors.set(d, v);
    }
    for (size_t o = 0; o < map.observables.size(); o++) {
        bool v = false;
        for (size_t m : map.observables[o]) {
            v ^= shot.measurements[m];
        }
        shot.observables.set(o, v);
    }
    return shot;
}

/// Which detectors and observables of the noiseless circuit are random, found symbolically.
struct DeterminismReport {
    std::vector<size_t> random_detectors;
    std::vector<size_t> random_observables;
    /// For each entry above, the earliest random measurement it depends on.
    std::vector<size_t> detector_culprits;
    std::vector<size_t> observable_culprits;
    /// Noiseless measurement values with every random outcome fixed to 0.
    BitVector measurements;

    bool deterministic() const {
        return random_detectors.empty() && random_observables.empty();
    }
};

inline DeterminismReport analyze_determinism(const Circuit &circuit) {
    size_t budget = circuit.num_measurements() + circuit.count_gates(Gate::R) + circuit.count_gates(Gate::RX);
    Tableau t(circuit.num_qubits(), budget, true);
    SplitMix64 rng(0);
    auto record = detail::run_on_tableau(circuit, t, rng, false);
    // Symbol s was introduced by the first measurement whose expression contains it.
    size_t width = t.expression_bits();
    std::vector<size_t> origin(width, SIZE_MAX);
    for (size_t m = 0; m < record.size(); m++) {
        record[m].for_each_set_bit([&](size_t s) {
            if (s > 0 && origin[s] == SIZE_MAX) {
                origin[s] = m;
            }
        });
    }
    auto culprit = [&](const BitVector &e) {
        size_t best = SIZE_MAX;
        e.for_each_set_bit([&](size_t s) {
            if (s > 0) {
                best = std::min(best, origin[s]);
            }
        });
        return best;
    };
    auto has_symbols = [](const BitVector &e) {
        auto w = e.words();
        for (size_t k = 0; k < w.size(); k++) {
            if (w[k] & (k ? ~uint64_t{0} : ~uint64_t{1})) {
                return true;
            }
        }
        return false;
    };
    DeterminismReport rep;
    rep.measurements = BitVector(record.size());
    for (size_t m = 0; m < record.size(); m++) {
        rep.measurements.set(m, record[m][0]);
    }
    auto map = circuit.record_map();
    for (size_t d = 0; d < map.detectors.size(); d++) {
        BitVector e = detail::combine(record, map.detectors[d], width);
        if (has_symbols(e)) {
            rep.random_detectors.push_back(d);
            rep.detector_culprits.push_back(culprit(e));
        }
    }
    for (size_t o = 0; o < map.observables.size(); o++) {
        BitVector e = detail::combine(record, map.observables[o], width);
        if (has_symbols(e)) {
            rep.random_observables.push_back(o);
            rep.observable_culprits.push_back(culprit(e));
        }
    }
    return rep;
}

/// Noiseless measurement values that every frame-sampled shot is reported relative to.
struct ReferenceFrame {
    BitVector measurements;
};

inline ReferenceFrame compute_reference(const Circuit &circuit) {
    DeterminismReport rep = analyze_determinism(circuit);
    if (!rep.random_detectors.empty()) {
        throw NondeterministicError("detector " + std::to_string(rep.random_detectors[0]) +
                                    " is not deterministic; it depends on random measurement " +
                                    std::to_string(rep.detector_culprits[0]));
    }
    if (!rep.random_observables.empty()) {
        throw NondeterministicError("observable " + std::to_string(rep.random_observables[0]) +
                                    " is not deterministic; it depends on random measurement " +
                                    std::to_string(rep.observable_culprits[0]));
    }
    return {std::move(rep.measurements)};
}

}  // namespace hookinj

#endif
