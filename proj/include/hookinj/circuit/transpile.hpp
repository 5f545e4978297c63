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

#ifndef HOOKINJ_CIRCUIT_TRANSPILE_HPP
#define HOOKINJ_CIRCUIT_TRANSPILE_HPP

#include <map>
#include <stdexcept>

#include "hookinj/circuit/circuit.hpp"

namespace hookinj {

namespace detail {

class PendingCliffords {
   public:
    void apply(uint32_t q, const Clifford1 &c) {
        auto it = pending_.find(q);
        if (it == pending_.end()) {
            pending_.emplace(q, c);
        } else {
            it->second = it->second.then(c);
        }
    }

    /// Emits all pending gates as a single layer (followed by TICK) and clears them.
    void flush(Circuit &out) {
        std::map<Gate, std::vector<uint32_t>> by_gate;
        for (const auto &[q, c] : pending_) {
            Gate g = gate_of(c);
            if (g != Gate::I) {
                by_gate[g].push_back(q);
            }
        }
        pending_.clear();
        if (by_gate.empty()) {
            return;
        }
        for (const auto &[g, qs] : by_gate) {
            out.append(g, qs);
        }
        out.tick();
    }

   private:
    std::map<uint32_t, Clifford1> pending_;
};

}  // namespace detail

/// Rewrites CX as H-CZ-H and merges runs of single-qubit gates into one named Clifford per qubit.
///
/// Merged single-qubit gates are emitted as their own layer immediately before the next layer
/// containing a two-qubit gate, reset or measurement. Single-qubit gates that share a layer with
/// such operations are hoisted into that preceding layer. RX and MX are kept native.
inline Circuit transpile_to_cz(const Circuit &circuit) {
    for (const auto &inst : circuit.instructions) {
        if (is_noise(inst.gate)) {
            throw std::invalid_argument("transpile_to_cz expects a noiseless circuit");
        }
        if (is_measurement(inst.gate) && !inst.args.empty()) {
            throw std::invalid_argument("transpile_to_cz expects noiseless measurements");
        }
    }
    const Clifford1 &h = CLIFFORD1_TABLE[(size_t)Gate::H];
    Circuit out;
    detail::PendingCliffords pending;
    auto layers = layers_of(circuit);
    for (const auto &layer : layers) {
        bool has_two = false, has_other = false;
        for (size_t k : layer) {
            Gate g = circuit.instructions[k].gate;
            has_two |= is_two_qubit_gate(g);
            has_other |= is_reset(g) || produces_measurements(g);
        }
        std::vector<const Instruction *> annotations;
        for (size_t k : layer) {
            const Instruction &inst = circuit.instructions[k];
            if (is_clifford1(inst.gate)) {
                for (uint32_t q : inst.qubits()) {
                    pending.apply(q, clifford_of(inst.gate));
                }
            } else if (is_annotation(inst.gate)) {
                annotations.push_back(&inst);
            }
        }
        if (!has_two && !has_other) {
            // Pure single-qubit layer: keep accumulating. Annotations stay in place.
            for (const Instruction *a : annotations) {
                out.append(*a);
            }
            continue;
        }
        std::vector<uint32_t> cx_targets;
        for (size_t k : layer) {
            const Instruction &inst = circuit.instructions[k];
            if (inst.gate == Gate::CX) {
                for (size_t j = 1; j < inst.targets.size(); j += 2) {
                    cx_targets.push_back((uint32_t)inst.targets[j].value);
                    pending.apply((uint32_t)inst.targets[j].value, h);
                }
            }
        }
        pending.flush(out);
        for (size_t k : layer) {
            const Instruction &inst = circuit.instructions[k];
            if (inst.gate == Gate::CX) {
                out.append(Instruction{Gate::CZ, {}, inst.targets});
            } else if (!is_clifford1(inst.gate)) {
                out.append(inst);
            }
        }
        out.tick();
        for (uint32_t t : cx_targets) {
            pending.apply(t, h);
        }
    }
    pending.flush(out);
    while (!out.instructions.empty() && out.instructions.back().gate == Gate::TICK) {
        out.instructions.pop_back();
    }
    return out;
}

}  // namespace hookinj

#endif
