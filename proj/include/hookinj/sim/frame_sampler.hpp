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

#ifndef HOOKINJ_SIM_FRAME_SAMPLER_HPP
#define HOOKINJ_SIM_FRAME_SAMPLER_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <thread>
#include <vector>

#include "hookinj/circuit/circuit.hpp"
#include "hookinj/sim/bit_vector.hpp"
#include "hookinj/sim/reference.hpp"
#include "hookinj/sim/rng.hpp"

namespace hookinj {

/// Detection events and observable flips, one row per shot.
struct ShotBatch {
    size_t num_shots = 0;
    BitMatrix detectors;
    BitMatrix observables;

    /// Writes the raw dump: three little-endian uint64 header words (shots, detectors,
    /// observables) followed by the detector rows and then the observable rows, each row padded
    /// to whole 64-bit words.
    void write_binary(const std::string &path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open " + path);
        }
        uint64_t header[3] = {num_shots, detectors.num_cols(), observables.num_cols()};
        out.write(reinterpret_cast<const char *>(header), sizeof(header));
        auto dump = [&](const BitMatrix &m) {
            out.write(reinterpret_cast<const char *>(m.raw().data()), (std::streamsize)(m.raw().size() * 8));
        };
        dump(detectors);
        dump(observables);
    }
};

/// In-place transpose of a 64x64 bit block (word i, bit j) -> (word j, bit i).
inline void transpose64(uint64_t *a) {
    static constexpr uint64_t masks[6] = {0x00000000FFFFFFFFULL, 0x0000FFFF0000FFFFULL, 0x00FF00FF00FF00FFULL,
                                          0x0F0F0F0F0F0F0F0FULL, 0x3333333333333333ULL, 0x5555555555555555ULL};
    for (int level = 0, width = 32; width; level++, width >>= 1) {
        uint64_t m = masks[level];
        for (int base = 0; base < 64; base += 2 * width) {
            for (int i = base; i < base + width; i++) {
                uint64_t lo = a[i], hi = a[i + width];
                a[i] = (lo & m) | ((hi & m) << width);
                a[i + width] = ((lo >> width) & m) | (hi & ~m);
            }
        }
    }
}

/// One sampled error: which noise site fired, in which of the 64 shots, and which Pauli term.
struct FrameEvent {
    uint32_t site;
    uint8_t shot;
    uint8_t term;
    bool operator<(const FrameEvent &o) const {
        return site < o.site || (site == o.site && shot < o.shot);
    }
};

/// Pauli-frame sampler: propagates sampled errors through the Clifford circuit 64 shots at a time.
///
/// Every shot draws its errors from its own stream keyed by (seed, shot index), so output does not
/// depend on how shots are divided between workers.
class FrameSampler {
   public:
    explicit FrameSampler(const Circuit &circuit) : circuit_(circuit) {
        for (const auto &inst : circuit.instructions) {
            if (inst.gate == Gate::CX || inst.gate == Gate::CZ || is_clifford1(inst.gate) || is_reset(inst.gate) ||
                produces_measurements(inst.gate) || is_noise(inst.gate) || is_annotation(inst.gate) ||
                inst.gate == Gate::TICK) {
                continue;
            }
            throw std::invalid_argument("frame sampler cannot handle " + std::string(gate_name(inst.gate)));
        }
        num_qubits_ = circuit.num_qubits();
        num_measurements_ = circuit.num_measurements();
        map_ = circuit.record_map();
        qubits_.resize(circuit.instructions.size());
        products_.resize(circuit.instructions.size());
        site_begin_.resize(circuit.instructions.size(), 0);
        std::map<double, size_t> class_of;
        uint32_t site = 0;
        for (size_t k = 0; k < circuit.instructions.size(); k++) {
            const Instruction &inst = circuit.instructions[k];
            if (is_operation(inst.gate) || is_noise(inst.gate)) {
                qubits_[k] = inst.qubits();
            }
            if (inst.gate == Gate::MPP) {
                products_[k] = inst.mpp_products();
            }
            site_begin_[k] = site;
            double p = 0;
            uint8_t terms = 0;
            size_t count = 0;
            if (is_noise(inst.gate)) {
                p = inst.args.at(0);
                count = inst.gate == Gate::DEPOLARIZE2 ? qubits_[k].size() / 2 : qubits_[k].size();
                terms = inst.gate == Gate::DEPOLARIZE1 ? 3 : inst.gate == Gate::DEPOLARIZE2 ? 15 : 1;
            } else if (is_measurement(inst.gate) && !inst.args.empty()) {
                p = inst.args[0];
                count = qubits_[k].size();
                terms = 1;
            }
            if (p > 0 && count > 0) {
                auto it = class_of.find(p);
                if (it == class_of.end()) {
                    it = class_of.emplace(p, classes_.size()).first;
                    classes_.push_back({p, {}});
                }
                for (size_t j = 0; j < count; j++) {
                    classes_[it->second].sites.push_back(site + (uint32_t)j);
                    site_terms_.push_back(terms);
                }
            } else {
                for (size_t j = 0; j < count; j++) {
                    site_terms_.push_back(terms);
                }
            }
            site += (uint32_t)count;
        }
    }

    size_t num_detectors() const {
        return map_.detectors.size();
    }
    size_t num_observables() const {
        return map_.observables.size();
    }
    size_t num_sites() const {
        return site_terms_.size();
    }

    /// Samples `num_shots` shots using up to `workers` threads.
    ShotBatch sample(size_t num_shots, uint64_t seed, unsigned workers = 1) const {
        ShotBatch batch{num_shots, BitMatrix(num_shots, num_detectors()), BitMatrix(num_shots, num_observables())};
        size_t num_blocks = (num_shots + 63) / 64;
        workers = std::max(1u, std::min<unsigned>(workers, (unsigned)std::max<size_t>(num_blocks, 1)));
        auto work = [&](unsigned w) {
            std::vector<FrameEvent> events;
            BlockState state;
            for (size_t b = w; b < num_blocks; b += workers) {
                size_t first = b * 64;
                size_t count = std::min<size_t>(64, num_shots - first);
                events.clear();
                for (size_t s = 0; s < count; s++) {
                    draw_events(seed, first + s, (uint8_t)s, events);
                }
                std::sort(events.begin(), events.end());
                run_block(events, state);
                store_block(state, batch, first, count);
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> threads;
            for (unsigned w = 0; w < workers; w++) {
                threads.emplace_back(work, w);
            }
            for (auto &t : threads) {
                t.join();
            }
        }
        return batch;
    }

    /// Frame words after running one block: bit s of each word belongs to shot s.
    struct BlockState {
        std::vector<uint64_t> x, z, record, detectors, observables;
    };

    /// Propagates an explicit, sorted list of events. Exposed for signature checks.
    void run_block(const std::vector<FrameEvent> &events, BlockState &st) const {
        st.x.assign(num_qubits_, 0);
        st.z.assign(num_qubits_, 0);
        st.record.assign(num_measurements_, 0);
        size_t m = 0;
        size_t ev = 0;
        for (size_t k = 0; k < circuit_.instructions.size(); k++) {
            const Instruction &inst = circuit_.instructions[k];
            const auto &qs = qubits_[k];
            Gate g = inst.gate;
            uint32_t site0 = site_begin_[k];
            auto events_at = [&](uint32_t site, auto &&fn) {
                while (ev < events.size() && events[ev].site < site) {
                    ev++;
                }
                while (ev < events.size() && events[ev].site == site) {
                    fn(events[ev]);
                    ev++;
                }
            };
            if (is_clifford1(g)) {
                const Clifford1 &c = clifford_of(g);
                Pauli ix = c.x_image.pauli, iz = c.z_image.pauli, iy = c.y_image().pauli;
                for (uint32_t q : qs) {
                    uint64_t x = st.x[q], z = st.z[q];
                    uint64_t mx = x & ~z, mz = z & ~x, my = x & z;
                    st.x[q] = (has_x(ix) ? mx : 0) | (has_x(iz) ? mz : 0) | (has_x(iy) ? my : 0);
                    st.z[q] = (has_z(ix) ? mx : 0) | (has_z(iz) ? mz : 0) | (has_z(iy) ? my : 0);
                }
            } else if (g == Gate::CX) {
                for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                    st.x[qs[j + 1]] ^= st.x[qs[j]];
                    st.z[qs[j]] ^= st.z[qs[j + 1]];
                }
            } else if (g == Gate::CZ) {
                for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                    st.z[qs[j]] ^= st.x[qs[j + 1]];
                    st.z[qs[j + 1]] ^= st.x[qs[j]];
                }
            } else if (is_reset(g)) {
                for (uint32_t q : qs) {
                    st.x[q] = 0;
                    st.z[q] = 0;
                }
            } else if (is_measurement(g)) {
                for (size_t j = 0; j < qs.size(); j++) {
                    uint32_t q = qs[j];
                    uint64_t v = g == Gate::M ? st.x[q] : st.z[q];
                    if (!inst.args.empty()) {
                        events_at(site0 + (uint32_t)j, [&](const FrameEvent &e) { v ^= uint64_t{1} << e.shot; });
                    }
                    st.record[m++] = v;
                }
            } else if (g == Gate::MPP) {
                for (const auto &prod : products_[k]) {
                    uint64_t v = 0;
                    for (auto [q, p] : prod.terms()) {
                        v ^= (has_x(p) ? st.z[q] : 0) ^ (has_z(p) ? st.x[q] : 0);
                    }
                    st.record[m++] = v;
                }
            } else if (is_noise(g)) {
                if (g == Gate::DEPOLARIZE2) {
                    for (size_t j = 0; j + 1 < qs.size(); j += 2) {
                        events_at(site0 + (uint32_t)(j / 2), [&](const FrameEvent &e) {
                            auto [a, b] = detail::dep2_term(e.term);
                            apply(st, qs[j], a, e.shot);
                            apply(st, qs[j + 1], b, e.shot);
                        });
                    }
                } else {
                    for (size_t j = 0; j < qs.size(); j++) {
                        events_at(site0 + (uint32_t)j, [&](const FrameEvent &e) {
                            Pauli p = g == Gate::X_ERROR   ? Pauli::X
                                      : g == Gate::Z_ERROR ? Pauli::Z
                                                           : detail::dep1_term(e.term);
                            apply(st, qs[j], p, e.shot);
                        });
                    }
                }
            }
        }
        st.detectors.assign(map_.detectors.size(), 0);
        for (size_t d = 0; d < map_.detectors.size(); d++) {
            for (size_t r : map_.detectors[d]) {
                st.detectors[d] ^= st.record[r];
            }
        }
        st.observables.assign(map_.observables.size(), 0);
        for (size_t o = 0; o < map_.observables.size(); o++) {
            for (size_t r : map_.observables[o]) {
                st.observables[o] ^= st.record[r];
            }
        }
    }

    /// Appends the events of one shot (placed at bit `slot` of the block) to `out`.
    void draw_events(uint64_t seed, uint64_t shot, uint8_t slot, std::vector<FrameEvent> &out) const {
        SplitMix64 rng = SplitMix64::for_shot(seed, shot);
        for (const auto &cls : classes_) {
            uint64_t n = cls.sites.size();
            uint64_t pos = rng.geometric(cls.p);
            while (pos < n) {
                uint32_t site = cls.sites[pos];
                uint8_t terms = site_terms_[site];
                out.push_back({site, slot, (uint8_t)(terms > 1 ? rng.below(terms) : 0)});
                uint64_t gap = rng.geometric(cls.p);
                if (gap >= n) {
                    break;
                }
                pos += 1 + gap;
            }
        }
    }

   private:
    struct NoiseClass {
        double p;
        std::vector<uint32_t> sites;
    };

    static void apply(BlockState &st, uint32_t q, Pauli p, uint8_t shot) {
        uint64_t bit = uint64_t{1} << shot;
        if (has_x(p)) {
            st.x[q] ^= bit;
        }
        if (has_z(p)) {
            st.z[q] ^= bit;
        }
    }

    static void store_rows(const std::vector<uint64_t> &words, BitMatrix &dst, size_t first, size_t count) {
        uint64_t block[64];
        for (size_t base = 0; base < words.size(); base += 64) {
            size_t n = std::min<size_t>(64, words.size() - base);
            std::fill(block, block + 64, 0);
            std::copy(words.begin() + (ptrdiff_t)base, words.begin() + (ptrdiff_t)(base + n), block);
            transpose64(block);
            for (size_t s = 0; s < count; s++) {
                dst.row(first + s)[base / 64] = block[s];
            }
        }
    }

    void store_block(const BlockState &st, ShotBatch &batch, size_t first, size_t count) const {
        store_rows(st.detectors, batch.detectors, first, count);
        store_rows(st.observables, batch.observables, first, count);
    }

    Circuit circuit_;
    size_t num_qubits_ = 0;
    size_t num_measurements_ = 0;
    Circuit::RecordMap map_;
    std::vector<std::vector<uint32_t>> qubits_;
    std::vector<std::vector<PauliString>> products_;
    std::vector<uint32_t> site_begin_;
    std::vector<uint8_t> site_terms_;
    std::vector<NoiseClass> classes_;
};

/// Samples detection events and observable flips for a circuit whose detectors are deterministic.
/// The reference frame is the noiseless record that the sampled flips are relative to.
inline ShotBatch frame_sample(const Circuit &circuit, const ReferenceFrame &frame, size_t num_shots, uint64_t seed,
                              unsigned workers = 1) {
    if (frame.measurements.size() != circuit.num_measurements()) {
        throw std::invalid_argument("reference frame does not match the circuit");
    }
    return FrameSampler(circuit).sample(num_shots, seed, workers);
}

}  // namespace hookinj

#endif
