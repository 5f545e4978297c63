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

#ifndef HOOKINJ_ANALYSIS_DEM_HPP
#define HOOKINJ_ANALYSIS_DEM_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hookinj/circuit/circuit.hpp"
#include "hookinj/circuit/text_format.hpp"
#include "hookinj/sim/bit_vector.hpp"
#include "hookinj/sim/reference.hpp"

namespace hookinj {

/// Where one Pauli term of one noise channel sits in the circuit.
struct TermSource {
    uint32_t instruction = 0;
    uint32_t layer = 0;
    Gate channel = Gate::DEPOLARIZE1;
    /// Operation the channel follows on the first target qubit (Gate::TICK when idling).
    Gate after = Gate::TICK;
    uint32_t q0 = 0, q1 = 0;
    Pauli p0 = Pauli::I, p1 = Pauli::I;
    double probability = 0;

    bool is_measurement_flip() const {
        return channel == Gate::M || channel == Gate::MX;
    }

    std::string describe() const {
        std::string s(gate_name(channel));
        if (is_measurement_flip()) {
            return "measurement flip of " + s + " on qubit " + std::to_string(q0) + " at layer " + std::to_string(layer);
        }
        s += " term ";
        s += pauli_char(p0);
        if (channel == Gate::DEPOLARIZE2) {
            s += pauli_char(p1);
            s += " on qubits " + std::to_string(q0) + "," + std::to_string(q1);
        } else {
            s += " on qubit " + std::to_string(q0);
        }
        s += after == Gate::TICK ? std::string(" while idle") : " after " + std::string(gate_name(after));
        s += " at layer " + std::to_string(layer);
        return s;
    }
};

struct ErrorMechanism {
    double probability = 0;
    std::vector<uint32_t> detectors;
    uint64_t observables = 0;
    /// Every channel term that produces this signature, before merging.
    std::vector<TermSource> sources;
};

struct DetectorErrorModel {
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<ErrorMechanism> mechanisms;

    size_t num_terms() const {
        size_t n = 0;
        for (const auto &m : mechanisms) {
            n += m.sources.size();
        }
        return n;
    }

    /// One line per mechanism: "error(p) D3 D7 L0", with provenance of the first source as a comment.
    std::string to_text(bool with_provenance = true) const {
        std::string out;
        for (const auto &m : mechanisms) {
            out += "error(" + format_number(m.probability) + ")";
            for (uint32_t d : m.detectors) {
                out += " D" + std::to_string(d);
            }
            for (size_t o = 0; o < num_observables; o++) {
                if ((m.observables >> o) & 1) {
                    out += " L" + std::to_string(o);
                }
            }
            if (with_provenance && !m.sources.empty()) {
                out += "  # " + m.sources[0].describe();
                if (m.sources.size() > 1) {
                    out += " (+" + std::to_string(m.sources.size() - 1) + " more)";
                }
            }
            out += '\n';
        }
        return out;
    }
};

/// XOR-combination of two independent flip probabilities.
inline double xor_probability(double a, double b) {
    return a * (1 - b) + b * (1 - a);
}

namespace detail {

struct Sensitivity {
    std::vector<BitVector> xs, zs;

    Sensitivity(size_t num_qubits, size_t width) : xs(num_qubits, BitVector(width)), zs(num_qubits, BitVector(width)) {
    }

    BitVector of(uint32_t q, Pauli p) const {
        BitVector out(xs[q].size());
        if (has_x(p)) {
            out ^= zs[q];
        }
        if (has_z(p)) {
            out ^= xs[q];
        }
        return out;
    }
};

inline Clifford1 inverse_of(const Clifford1 &c) {
    for (const auto &cand : CLIFFORD1_TABLE) {
        if (c.then(cand) == CLIFFORD1_TABLE[0]) {
            return cand;
        }
    }
    throw std::logic_error("Clifford has no inverse in the table");
}

}  // namespace detail

/// Builds the detector error model of a noisy Clifford circuit.
///
/// Each Pauli term of each noise channel becomes one mechanism (DEPOLARIZE1 gives 3 terms of p/3,
/// DEPOLARIZE2 gives 15 of p/15, a noisy measurement gives one record-flip term). Signatures are found
/// by sweeping the circuit backwards while tracking, for every qubit, which detectors and observables
/// an X or Z error at that point would flip. Terms with identical signatures are merged; terms with
/// an empty signature are dropped.
inline DetectorErrorModel extract_dem(const Circuit &circuit) {
    auto map = circuit.record_map();
    size_t nd = map.detectors.size(), no = map.observables.size();
    if (no > 64) {
        throw std::invalid_argument("at most 64 observables are supported");
    }
    size_t width = nd + no;
    size_t nm = circuit.num_measurements();
    std::vector<std::vector<uint32_t>> rec_to(nm);
    for (size_t d = 0; d < nd; d++) {
        for (size_t r : map.detectors[d]) {
            rec_to[r].push_back((uint32_t)d);
        }
    }
    for (size_t o = 0; o < no; o++) {
        for (size_t r : map.observables[o]) {
            rec_to[r].push_back((uint32_t)(nd + o));
        }
    }
    auto rec_set = [&](size_t r) {
        BitVector v(width);
        for (uint32_t k : rec_to[r]) {
            v.flip(k);
        }
        return v;
    };

    size_t nq = circuit.num_qubits();
    detail::Sensitivity sens(nq, width);

    // Layer index and the operation preceding each noise channel, for provenance.
    std::vector<uint32_t> layer_of(circuit.instructions.size());
    std::vector<std::vector<std::pair<uint32_t, Gate>>> layer_ops;
    {
        uint32_t layer = 0;
        layer_ops.emplace_back();
        for (size_t k = 0; k < circuit.instructions.size(); k++) {
            const Instruction &inst = circuit.instructions[k];
            layer_of[k] = layer;
            if (inst.gate == Gate::TICK) {
                layer++;
                layer_ops.emplace_back();
            } else if (is_operation(inst.gate)) {
                for (uint32_t q : inst.qubits()) {
                    layer_ops[layer].push_back({q, inst.gate});
                }
            }
        }
    }
    auto op_before = [&](uint32_t layer, uint32_t q) {
        for (auto [qq, g] : layer_ops[layer]) {
            if (qq == q) {
                return g;
            }
        }
        return Gate::TICK;
    };

    auto fail = [&](const BitVector &bad, const std::string &where) {
        size_t k = bad.first_set();
        std::string what = k < nd ? "detector " + std::to_string(k) : "observable " + std::to_string(k - nd);
        throw NondeterministicError(what + " is not deterministic (anticommutes with " + where + ")");
    };

    std::map<std::pair<uint64_t, std::vector<uint32_t>>, size_t> index;
    DetectorErrorModel dem;
    dem.num_detectors = nd;
    dem.num_observables = no;
    auto add_term = [&](const BitVector &sig, const TermSource &src) {
        if (!sig.any() || src.probability <= 0) {
            return;
        }
        std::pair<uint64_t, std::vector<uint32_t>> key{0, {}};
        sig.for_each_set_bit([&](size_t k) {
            if (k < nd) {
                key.second.push_back((uint32_t)k);
            } else {
                key.first |= uint64_t{1} << (k - nd);
            }
        });
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, dem.mechanisms.size());
            dem.mechanisms.push_back({src.probability, key.second, key.first, {src}});
        } else {
            auto &m = dem.mechanisms[it->second];
            m.probability = xor_probability(m.probability, src.probability);
            m.sources.push_back(src);
        }
    };

    size_t m = nm;
    for (size_t k = circuit.instructions.size(); k-- > 0;) {
        const Instruction &inst = circuit.instructions[k];
        Gate g = inst.gate;
        if (is_annotation(g) || g == Gate::TICK) {
            continue;
        }
        auto qs = inst.qubits();
        uint32_t layer = layer_of[k];
        if (is_noise(g)) {
            double p = inst.args.at(0);
            TermSource src;
            src.instruction = (uint32_t)k;
            src.layer = layer;
            src.channel = g;
            if (g == Gate::DEPOLARIZE2) {
                for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                    src.q0 = qs[j];
                    src.q1 = qs[j + 1];
                    src.after = op_before(layer, qs[j]);
                    src.probability = p / 15;
                    for (uint32_t t = 0; t < 15; t++) {
                        auto [a, b] = detail::dep2_term(t);
                        src.p0 = a;
                        src.p1 = b;
                        BitVector sig = sens.of(qs[j], a);
                        sig ^= sens.of(qs[j + 1], b);
                        add_term(sig, src);
                    }
                }
            } else {
                for (uint32_t q : qs) {
                    src.q0 = q;
                    src.after = op_before(layer, q);
                    if (g == Gate::DEPOLARIZE1) {
                        src.probability = p / 3;
                        for (uint32_t t = 0; t < 3; t++) {
                            src.p0 = detail::dep1_term(t);
                            add_term(sens.of(q, src.p0), src);
                        }
                    } else {
                        src.probability = p;
                        src.p0 = g == Gate::X_ERROR ? Pauli::X : Pauli::Z;
                        add_term(sens.of(q, src.p0), src);
                    }
                }
            }
        } else if (is_measurement(g)) {
            for (size_t j = qs.size(); j-- > 0;) {
                uint32_t q = qs[j];
                size_t r = --m;
                BitVector dets = rec_set(r);
                if (!inst.args.empty() && inst.args[0] > 0) {
                    TermSource src;
                    src.instruction = (uint32_t)k;
                    src.layer = layer;
                    src.channel = g;
                    src.after = g;
                    src.q0 = q;
                    src.probability = inst.args[0];
                    add_term(dets, src);
                }
                BitVector &anti = g == Gate::M ? sens.xs[q] : sens.zs[q];
                if (anti.any()) {
                    fail(anti, std::string(gate_name(g)) + " on qubit " + std::to_string(q));
                }
                (g == Gate::M ? sens.zs[q] : sens.xs[q]) ^= dets;
            }
        } else if (g == Gate::MPP) {
            auto prods = inst.mpp_products();
            for (size_t j = prods.size(); j-- > 0;) {
                size_t r = --m;
                BitVector anti(width);
                for (auto [q, p] : prods[j].terms()) {
                    anti ^= sens.of(q, p);
                }
                if (anti.any()) {
                    fail(anti, "MPP " + prods[j].str());
                }
                BitVector dets = rec_set(r);
                for (auto [q, p] : prods[j].terms()) {
                    if (has_x(p)) {
                        sens.xs[q] ^= dets;
                    }
                    if (has_z(p)) {
                        sens.zs[q] ^= dets;
                    }
                }
            }
        } else if (is_reset(g)) {
            for (uint32_t q : qs) {
                const BitVector &anti = g == Gate::R ? sens.xs[q] : sens.zs[q];
                if (anti.any()) {
                    fail(anti, std::string(gate_name(g)) + " on qubit " + std::to_string(q));
                }
                sens.xs[q].clear();
                sens.zs[q].clear();
            }
        } else if (is_clifford1(g)) {
            Clifford1 inv = detail::inverse_of(clifford_of(g));
            Pauli ix = inv.x_image.pauli, iz = inv.z_image.pauli, iy = inv.y_image().pauli;
            for (uint32_t q : qs) {
                auto xw = sens.xs[q].words(), zw = sens.zs[q].words();
                for (size_t w = 0; w < xw.size(); w++) {
                    uint64_t x = xw[w], z = zw[w];
                    uint64_t mx = x & ~z, mz = z & ~x, my = x & z;
                    xw[w] = (has_x(ix) ? mx : 0) | (has_x(iz) ? mz : 0) | (has_x(iy) ? my : 0);
                    zw[w] = (has_z(ix) ? mx : 0) | (has_z(iz) ? mz : 0) | (has_z(iy) ? my : 0);
                }
            }
        } else if (g == Gate::CX) {
            for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                sens.xs[qs[j + 1]] ^= sens.xs[qs[j]];
                sens.zs[qs[j]] ^= sens.zs[qs[j + 1]];
            }
        } else if (g == Gate::CZ) {
            for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                sens.zs[qs[j]] ^= sens.xs[qs[j + 1]];
                sens.zs[qs[j + 1]] ^= sens.xs[qs[j]];
            }
        }
    }
    for (uint32_t q = 0; q < nq; q++) {
        if (sens.xs[q].any()) {
            fail(sens.xs[q], "the initial |0> state of qubit " + std::to_string(q));
        }
    }
    return dem;
}

}  // namespace hookinj

#endif
