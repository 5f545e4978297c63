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

#ifndef HOOKINJ_CIRCUIT_CIRCUIT_HPP
#define HOOKINJ_CIRCUIT_CIRCUIT_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hookinj/circuit/gates.hpp"
#include "hookinj/circuit/pauli.hpp"

namespace hookinj {

enum class TargetKind : uint8_t { Qubit, Rec, Pauli, Combiner };

struct Target {
    TargetKind kind = TargetKind::Qubit;
    Pauli pauli = Pauli::I;
    /// Qubit index, or a negative lookback for rec targets.
    int32_t value = 0;

    static Target qubit(uint32_t q) {
        return {TargetKind::Qubit, Pauli::I, (int32_t)q};
    }
    static Target rec(int32_t lookback) {
        return {TargetKind::Rec, Pauli::I, lookback};
    }
    static Target pauli_target(Pauli p, uint32_t q) {
        return {TargetKind::Pauli, p, (int32_t)q};
    }
    static Target combiner() {
        return {TargetKind::Combiner, Pauli::I, 0};
    }

    bool is_qubit_like() const {
        return kind == TargetKind::Qubit || kind == TargetKind::Pauli;
    }
    bool operator==(const Target &) const = default;
};

struct Instruction {
    Gate gate = Gate::TICK;
    std::vector<double> args;
    std::vector<Target> targets;

    bool operator==(const Instruction &) const = default;

    /// Number of measurement-record entries this instruction appends.
    size_t num_measurements() const {
        if (is_measurement(gate)) {
            return targets.size();
        }
        if (gate == Gate::MPP) {
            size_t n = 0;
            for (size_t k = 0; k < targets.size(); k++) {
                if (targets[k].kind == TargetKind::Pauli && (k == 0 || targets[k - 1].kind != TargetKind::Combiner)) {
                    n++;
                }
            }
            return n;
        }
        return 0;
    }

    /// Products measured by an MPP instruction, in record order.
    std::vector<PauliString> mpp_products() const {
        std::vector<PauliString> out;
        for (size_t k = 0; k < targets.size(); k++) {
            const Target &t = targets[k];
            if (t.kind != TargetKind::Pauli) {
                continue;
            }
            if (k == 0 || targets[k - 1].kind != TargetKind::Combiner) {
                out.emplace_back();
            }
            out.back().mul((uint32_t)t.value, t.pauli);
        }
        return out;
    }

    /// Qubits touched by the instruction (empty for annotations).
    std::vector<uint32_t> qubits() const {
        std::vector<uint32_t> out;
        if (is_annotation(gate) && gate != Gate::QUBIT_COORDS) {
            return out;
        }
        for (const Target &t : targets) {
            if (t.is_qubit_like()) {
                out.push_back((uint32_t)t.value);
            }
        }
        return out;
    }
};

inline Instruction make_mpp(const std::vector<PauliString> &products) {
    Instruction inst{Gate::MPP, {}, {}};
    for (const auto &prod : products) {
        if (prod.empty()) {
            throw std::invalid_argument("MPP product must not be empty");
        }
        bool first = true;
        for (auto [q, p] : prod.terms()) {
            if (!first) {
                inst.targets.push_back(Target::combiner());
            }
            inst.targets.push_back(Target::pauli_target(p, q));
            first = false;
        }
    }
    return inst;
}

/// Ordered instruction list; layers are delimited by TICK.
class Circuit {
   public:
    std::vector<Instruction> instructions;

    Circuit() = default;
    explicit Circuit(std::vector<Instruction> insts) : instructions(std::move(insts)) {
    }

    void append(Instruction inst) {
        instructions.push_back(std::move(inst));
    }
    void append(Gate g, std::initializer_list<uint32_t> qubits, std::vector<double> args = {}) {
        append(g, std::vector<uint32_t>(qubits), std::move(args));
    }
    void append(Gate g, const std::vector<uint32_t> &qubits, std::vector<double> args = {}) {
        Instruction inst{g, std::move(args), {}};
        for (uint32_t q : qubits) {
            inst.targets.push_back(Target::qubit(q));
        }
        instructions.push_back(std::move(inst));
    }
    void tick() {
        instructions.push_back({Gate::TICK, {}, {}});
    }
    /// DETECTOR over absolute measurement indices (converted to lookbacks).
    void append_detector(const std::vector<size_t> &measurements, std::vector<double> coords = {}) {
        append_rec_instruction(Gate::DETECTOR, measurements, std::move(coords));
    }
    void append_observable(const std::vector<size_t> &measurements, uint32_t index) {
        append_rec_instruction(Gate::OBSERVABLE_INCLUDE, measurements, {(double)index});
    }

    size_t num_qubits() const {
        size_t n = 0;
        for (const auto &inst : instructions) {
            for (const auto &t : inst.targets) {
                if (t.is_qubit_like()) {
                    n = std::max(n, (size_t)t.value + 1);
                }
            }
        }
        return n;
    }
    size_t num_measurements() const {
        size_t n = 0;
        for (const auto &inst : instructions) {
            n += inst.num_measurements();
        }
        return n;
    }
    size_t num_detectors() const {
        size_t n = 0;
        for (const auto &inst : instructions) {
            n += inst.gate == Gate::DETECTOR;
        }
        return n;
    }
    size_t num_observables() const {
        size_t n = 0;
        for (const auto &inst : instructions) {
            if (inst.gate == Gate::OBSERVABLE_INCLUDE && !inst.args.empty()) {
                n = std::max(n, (size_t)inst.args[0] + 1);
            }
        }
        return n;
    }
    size_t count_gates(Gate g) const {
        size_t n = 0;
        for (const auto &inst : instructions) {
            if (inst.gate == g) {
                n += is_two_qubit_gate(g) || g == Gate::DEPOLARIZE2 ? inst.targets.size() / 2 : inst.targets.size();
            }
        }
        return n;
    }
    size_t num_ticks() const {
        size_t n = 0;
        for (const auto &inst : instructions) {
            n += inst.gate == Gate::TICK;
        }
        return n;
    }

    std::map<uint32_t, std::vector<double>> qubit_coords() const {
        std::map<uint32_t, std::vector<double>> out;
        for (const auto &inst : instructions) {
            if (inst.gate == Gate::QUBIT_COORDS) {
                for (const auto &t : inst.targets) {
                    out[(uint32_t)t.value] = inst.args;
                }
            }
        }
        return out;
    }

    /// Coordinates of each detector, in detector order.
    std::vector<std::vector<double>> detector_coords() const {
        std::vector<std::vector<double>> out;
        for (const auto &inst : instructions) {
            if (inst.gate == Gate::DETECTOR) {
                out.push_back(inst.args);
            }
        }
        return out;
    }

    /// Measurements referenced by each detector (absolute indices) and by each observable.
    struct RecordMap {
        std::vector<std::vector<size_t>> detectors;
        std::vector<std::vector<size_t>> observables;
    };
    RecordMap record_map() const {
        RecordMap out;
        out.observables.resize(num_observables());
        size_t m = 0;
        for (const auto &inst : instructions) {
            if (inst.gate == Gate::DETECTOR || inst.gate == Gate::OBSERVABLE_INCLUDE) {
                std::vector<size_t> recs;
                for (const auto &t : inst.targets) {
                    if (t.kind != TargetKind::Rec || (int64_t)m + t.value < 0 || t.value >= 0) {
                        throw std::invalid_argument("bad measurement record reference");
                    }
                    recs.push_back((size_t)((int64_t)m + t.value));
                }
                if (inst.gate == Gate::DETECTOR) {
                    out.detectors.push_back(std::move(recs));
                } else {
                    auto &obs = out.observables[(size_t)inst.args[0]];
                    obs.insert(obs.end(), recs.begin(), recs.end());
                }
            }
            m += inst.num_measurements();
        }
        return out;
    }

    bool operator==(const Circuit &) const = default;

   private:
    void append_rec_instruction(Gate g, const std::vector<size_t> &measurements, std::vector<double> args) {
        size_t m = num_measurements();
        Instruction inst{g, std::move(args), {}};
        for (size_t k : measurements) {
            if (k >= m) {
                throw std::invalid_argument("record reference to a measurement that has not happened yet");
            }
            inst.targets.push_back(Target::rec((int32_t)k - (int32_t)m));
        }
        instructions.push_back(std::move(inst));
    }
};

/// Returns human-readable invariant violations; empty means valid.
inline std::vector<std::string> validate(const Circuit &circuit) {
    std::vector<std::string> out;
    auto fail = [&](size_t k, const std::string &msg) {
        out.push_back("instruction " + std::to_string(k) + " (" + std::string(gate_name(circuit.instructions[k].gate)) +
                      "): " + msg);
    };
    size_t measured = 0;
    std::set<uint32_t> layer_qubits;
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        const Instruction &inst = circuit.instructions[k];
        Gate g = inst.gate;
        if (g == Gate::TICK) {
            layer_qubits.clear();
            continue;
        }
        bool probability_args = is_noise(g) || is_measurement(g);
        if (probability_args) {
            for (double a : inst.args) {
                if (!(a >= 0 && a <= 1)) {
                    fail(k, "probability argument outside [0, 1]");
                }
            }
            if (inst.args.size() != (is_noise(g) ? 1u : inst.args.size()) || inst.args.size() > 1) {
                fail(k, "wrong number of arguments");
            }
        }
        if (g == Gate::DETECTOR || g == Gate::OBSERVABLE_INCLUDE) {
            for (const auto &t : inst.targets) {
                if (t.kind != TargetKind::Rec) {
                    fail(k, "targets must be measurement record references");
                } else if (t.value >= 0 || (int64_t)measured + t.value < 0) {
                    fail(k, "rec[" + std::to_string(t.value) + "] does not refer to an earlier measurement");
                }
            }
            if (g == Gate::OBSERVABLE_INCLUDE &&
                (inst.args.size() != 1 || inst.args[0] < 0 || inst.args[0] != std::floor(inst.args[0]))) {
                fail(k, "observable index must be a single non-negative integer");
            }
            continue;
        }
        if (g == Gate::MPP) {
            bool after_combiner = true;
            for (const auto &t : inst.targets) {
                if (t.kind == TargetKind::Combiner) {
                    if (after_combiner) {
                        fail(k, "misplaced combiner");
                        break;
                    }
                    after_combiner = true;
                } else if (t.kind == TargetKind::Pauli && t.pauli != Pauli::I && t.value >= 0) {
                    after_combiner = false;
                } else {
                    fail(k, "MPP targets must be Pauli terms");
                    break;
                }
            }
            if (!inst.targets.empty() && inst.targets.back().kind == TargetKind::Combiner) {
                fail(k, "dangling combiner");
            }
            std::set<int32_t> in_product;
            for (size_t j = 0; j < inst.targets.size(); j++) {
                const Target &t = inst.targets[j];
                if (t.kind != TargetKind::Pauli) {
                    continue;
                }
                if (j == 0 || inst.targets[j - 1].kind != TargetKind::Combiner) {
                    in_product.clear();
                }
                if (!in_product.insert(t.value).second) {
                    fail(k, "qubit " + std::to_string(t.value) + " repeated within a Pauli product");
                }
            }
        } else {
            for (const auto &t : inst.targets) {
                if (t.kind != TargetKind::Qubit) {
                    fail(k, "targets must be qubits");
                    break;
                }
                if (t.value < 0) {
                    fail(k, "negative qubit index");
                }
            }
        }
        if ((is_two_qubit_gate(g) || g == Gate::DEPOLARIZE2) && inst.targets.size() % 2 != 0) {
            fail(k, "two-qubit instruction needs an even number of targets");
        }
        if (is_two_qubit_gate(g) || g == Gate::DEPOLARIZE2) {
            for (size_t j = 0; j + 1 < inst.targets.size(); j += 2) {
                if (inst.targets[j].value == inst.targets[j + 1].value) {
                    fail(k, "two-qubit instruction targets the same qubit twice");
                }
            }
        }
        if (is_operation(g)) {
            for (uint32_t q : inst.qubits()) {
                if (!layer_qubits.insert(q).second && g != Gate::MPP) {
                    fail(k, "qubit " + std::to_string(q) + " is targeted more than once in a layer");
                }
            }
        }
        measured += inst.num_measurements();
    }
    return out;
}

/// Splits instruction indices into TICK-delimited layers (TICKs excluded).
inline std::vector<std::vector<size_t>> layers_of(const Circuit &circuit) {
    std::vector<std::vector<size_t>> out(1);
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        if (circuit.instructions[k].gate == Gate::TICK) {
            out.emplace_back();
        } else {
            out.back().push_back(k);
        }
    }
    return out;
}

}  // namespace hookinj

#endif
