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

#ifndef HOOKINJ_CIRCUIT_NOISE_HPP
#define HOOKINJ_CIRCUIT_NOISE_HPP

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hookinj/circuit/circuit.hpp"

namespace hookinj {

/// Superconducting-inspired digitized noise, parameterized by the CZ depolarization strength.
struct NoiseParams {
    double p = 0;

    static constexpr const char *model = "SI1000";

    double single_qubit() const {
        return clamp(p / 10);
    }
    double two_qubit() const {
        return clamp(p);
    }
    double reset_flip() const {
        return clamp(2 * p);
    }
    double measure_flip() const {
        return clamp(5 * p);
    }
    double measure_depolarize() const {
        return clamp(p);
    }
    double wait() const {
        return clamp(2 * p);
    }

   private:
    static double clamp(double v) {
        return std::clamp(v, 0.0, 1.0);
    }
};

/// Inserts SI1000 channels into a CZ-transpiled noiseless circuit.
///
/// Each TICK-delimited layer keeps its instructions in order; its noise channels are placed right
/// after the layer's last operation. Layers of MPP are treated as ideal readout and get no noise.
inline Circuit apply_si1000(const Circuit &circuit, const NoiseParams &params) {
    if (!(params.p >= 0 && params.p <= 1)) {
        throw std::invalid_argument("noise strength must lie in [0, 1]");
    }
    for (size_t k = 0; k < circuit.instructions.size(); k++) {
        const Instruction &inst = circuit.instructions[k];
        if (inst.gate == Gate::CX) {
            throw std::invalid_argument("instruction " + std::to_string(k) + ": CX must be transpiled to CZ first");
        }
        if (is_noise(inst.gate) || (is_measurement(inst.gate) && !inst.args.empty())) {
            throw std::invalid_argument("instruction " + std::to_string(k) + ": input already has noise");
        }
    }
    if (params.p == 0) {
        return circuit;
    }
    size_t n = circuit.num_qubits();
    Circuit out;
    auto layers = layers_of(circuit);
    size_t next = 0;
    for (const auto &layer : layers) {
        // Copy any TICKs separating this layer from the previous one.
        size_t first = layer.empty() ? next : layer.front();
        while (next < first) {
            out.append(circuit.instructions[next++]);
        }
        bool has_mpp = false, has_mr = false, has_op = false;
        size_t last_op = 0;
        for (size_t k : layer) {
            Gate g = circuit.instructions[k].gate;
            if (is_operation(g)) {
                has_op = true;
                last_op = k;
            }
            has_mpp |= g == Gate::MPP;
            has_mr |= g == Gate::M || g == Gate::MX || is_reset(g);
        }
        if (has_mpp) {
            for (size_t k : layer) {
                Gate g = circuit.instructions[k].gate;
                if (is_operation(g) && g != Gate::MPP) {
                    throw std::invalid_argument("instruction " + std::to_string(k) + ": MPP must be alone in its layer");
                }
            }
        }
        Circuit noise;
        std::vector<bool> busy(n, false);
        if (has_op && !has_mpp) {
            for (size_t k : layer) {
                const Instruction &inst = circuit.instructions[k];
                if (!is_operation(inst.gate)) {
                    continue;
                }
                auto qs = inst.qubits();
                for (uint32_t q : qs) {
                    busy[q] = true;
                }
                if (inst.gate == Gate::CZ) {
                    noise.append(Gate::DEPOLARIZE2, qs, {params.two_qubit()});
                } else if (is_clifford1(inst.gate)) {
                    noise.append(Gate::DEPOLARIZE1, qs, {params.single_qubit()});
                } else if (inst.gate == Gate::R) {
                    noise.append(Gate::X_ERROR, qs, {params.reset_flip()});
                } else if (inst.gate == Gate::RX) {
                    noise.append(Gate::Z_ERROR, qs, {params.reset_flip()});
                } else if (inst.gate == Gate::M || inst.gate == Gate::MX) {
                    noise.append(Gate::DEPOLARIZE1, qs, {params.measure_depolarize()});
                } else {
                    throw std::invalid_argument("instruction " + std::to_string(k) + ": unsupported gate " +
                                                std::string(gate_name(inst.gate)));
                }
            }
            std::vector<uint32_t> idle;
            for (uint32_t q = 0; q < n; q++) {
                if (!busy[q]) {
                    idle.push_back(q);
                }
            }
            if (!idle.empty()) {
                noise.append(Gate::DEPOLARIZE1, idle, {params.single_qubit()});
                if (has_mr) {
                    noise.append(Gate::DEPOLARIZE1, idle, {params.wait()});
                }
            }
        }
        for (size_t k : layer) {
            Instruction inst = circuit.instructions[k];
            if ((inst.gate == Gate::M || inst.gate == Gate::MX) && !has_mpp) {
                inst.args = {params.measure_flip()};
            }
            out.append(std::move(inst));
            if (has_op && k == last_op) {
                for (auto &ni : noise.instructions) {
                    out.append(std::move(ni));
                }
            }
        }
        next = layer.empty() ? next : layer.back() + 1;
    }
    while (next < circuit.instructions.size()) {
        out.append(circuit.instructions[next++]);
    }
    return out;
}

/// Removes noise channels and measurement flip arguments.
inline Circuit strip_noise(const Circuit &circuit) {
    Circuit out;
    for (const auto &inst : circuit.instructions) {
        if (is_noise(inst.gate)) {
            continue;
        }
        Instruction copy = inst;
        if (is_measurement(copy.gate)) {
            copy.args.clear();
        }
        out.append(std::move(copy));
    }
    return out;
}

}  // namespace hookinj

#endif
