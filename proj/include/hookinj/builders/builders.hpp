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

#ifndef HOOKINJ_BUILDERS_BUILDERS_HPP
#define HOOKINJ_BUILDERS_BUILDERS_HPP

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hookinj/analysis/census.hpp"
#include "hookinj/builders/layout.hpp"
#include "hookinj/circuit/circuit.hpp"

namespace hookinj {

enum class Protocol { Hook, HookPregrown, Li, Zz, ZzTweaked, Memory };

inline std::string protocol_name(Protocol p) {
    switch (p) {
        case Protocol::Hook:
            return "hook";
        case Protocol::HookPregrown:
            return "hook_pregrown";
        case Protocol::Li:
            return "li";
        case Protocol::Zz:
            return "zz";
        case Protocol::ZzTweaked:
            return "zz_tweaked";
        case Protocol::Memory:
            return "memory";
    }
    return "?";
}

inline Protocol parse_protocol(const std::string &s) {
    for (Protocol p : {Protocol::Hook, Protocol::HookPregrown, Protocol::Li, Protocol::Zz, Protocol::ZzTweaked,
                       Protocol::Memory}) {
        if (protocol_name(p) == s) {
            return p;
        }
    }
    throw std::invalid_argument("unknown protocol '" + s + "'");
}

enum class FinalCheck { NoiselessStabilizer, TransversalX };

struct InjectionSpec {
    Protocol protocol = Protocol::Hook;
    int d_inject = 5;
    int r_inject = 2;
    int d = 7;
    int r_hold = 7;
    InjectedState state = InjectedState::I;
    FinalCheck final_check = FinalCheck::NoiselessStabilizer;

    void validate() const {
        if (protocol == Protocol::Memory) {
            if (d < 2 || r_inject < 1) {
                throw std::invalid_argument("memory needs d >= 2 and at least one round");
            }
            return;
        }
        if (d_inject < 2) {
            throw std::invalid_argument("d_inject must be at least 2");
        }
        if (protocol == Protocol::HookPregrown) {
            if (d_inject > 2 * d - 1) {
                throw std::invalid_argument("postselection diameter d_inject exceeds 2*d-1");
            }
        } else if (d_inject > d) {
            throw std::invalid_argument("d_inject must not exceed d");
        }
        if (r_inject < 1) {
            throw std::invalid_argument("r_inject must be at least 1");
        }
        if (r_hold < 0) {
            throw std::invalid_argument("r_hold must be non-negative");
        }
        if (final_check == FinalCheck::TransversalX && state != InjectedState::Plus) {
            throw std::invalid_argument("transversal X readout only checks the |+> state");
        }
    }
};

/// A builder output: the noiseless circuit plus the postselection set and observable index.
///
/// The postselection set is also written into the circuit as a fourth detector coordinate equal to 1,
/// so it survives serialization; postselected_from_coords recovers it.
struct AnnotatedCircuit {
    Circuit circuit;
    std::vector<bool> postselected;
    uint32_t observable_index = 0;

    std::vector<size_t> postselected_detectors() const {
        std::vector<size_t> out;
        for (size_t d = 0; d < postselected.size(); d++) {
            if (postselected[d]) {
                out.push_back(d);
            }
        }
        return out;
    }
};

inline std::vector<bool> postselected_from_coords(const Circuit &circuit) {
    auto coords = circuit.detector_coords();
    std::vector<bool> out(coords.size(), false);
    for (size_t d = 0; d < coords.size(); d++) {
        out[d] = coords[d].size() >= 4 && coords[d][3] == 1;
    }
    return out;
}

/// Dropping a CX whose control is a fresh |0> or whose target is a fresh |+> leaves the state alone.
enum class NoopRule {
    Keep,
    /// Only in the first two-qubit layer of the round.
    FirstLayer,
    /// Anywhere, as long as the data qubit has not been touched since its reset.
    Untouched,
};

/// Construction knobs shared by the injection builders.
struct Schedule {
    /// Round-one corner orders, indexed by plaquette basis.
    CornerOrder first_x{NE, NW, SE, SW};
    CornerOrder first_z{NE, NW, SE, SW};
    /// Corner order of the injection plaquette during round one. Visiting both top corners first
    /// leaves the measure qubit halfway through with a hook that spans the top row.
    CornerOrder hook{NE, NW, SE, SW};
    /// Corner orders for every later round.
    CornerOrder later_x = STANDARD_X_ORDER;
    CornerOrder later_z = STANDARD_Z_ORDER;
    /// Per-plaquette round-one overrides keyed by center.
    std::map<Coord, CornerOrder> first_overrides;
    /// Which two-qubit gates acting trivially on freshly initialized data qubits are dropped.
    NoopRule omit_noops = NoopRule::FirstLayer;
    /// Data qubits at (x, y) start in X when x - y < split, in Z when x - y > split; on the line
    /// itself the top-row qubit starts in X and the others in Z.
    int split = 1;
    /// Whether the |i> observable must absorb the sign of the seed plaquette's first outcome. Depends
    /// on which corner pair the hook spans; the default hook order does not need it.
    bool observable_uses_seed_outcome = false;
};

namespace detail {

/// Accumulates layers of a stabilizer circuit over a coordinate lattice and tracks which
/// plaquette comparisons are deterministic.
class LatticeCircuit {
   public:
    struct Layer {
        std::vector<Instruction> ops;
        std::vector<std::pair<std::vector<size_t>, std::vector<double>>> detectors;
    };

    struct RoundPlan {
        /// Data qubits reset at the start of the round, with their basis.
        std::map<Coord, char> init;
        /// Data qubits reset this round whose state is then changed before the stabilizer cycle.
        std::set<Coord> prepared;
        /// Single-qubit gate layers applied after the resets (before any two-qubit gate).
        std::vector<std::vector<std::pair<Gate, Coord>>> prep_single;
        /// Pairs touched by a CZ prep layer that runs after prep_single.
        std::vector<std::pair<Coord, Coord>> prep_cz;
        CornerOrder order_x = STANDARD_X_ORDER;
        CornerOrder order_z = STANDARD_Z_ORDER;
        std::map<Coord, CornerOrder> overrides;
        NoopRule omit_noops = NoopRule::Keep;
        /// Mid-cycle single-qubit gate on one measure qubit, after the second two-qubit layer.
        std::optional<std::pair<Coord, Gate>> hook;
        std::function<bool(const Plaquette &)> postselect = [](const Plaquette &) { return false; };
    };

    explicit LatticeCircuit(const PatchLayout &full) {
        for (Coord c : full.data) {
            qubit(c);
        }
        for (const auto &p : full.plaquettes) {
            qubit(p.center);
        }
    }

    uint32_t qubit(Coord c) {
        auto it = index_.find(c);
        if (it != index_.end()) {
            return it->second;
        }
        uint32_t q = (uint32_t)coords_.size();
        index_.emplace(c, q);
        coords_.push_back(c);
        return q;
    }

    size_t round() const {
        return round_;
    }

    /// Runs one full stabilizer round on the given patch and records detectors.
    void run_round(const PatchLayout &patch, const RoundPlan &plan) {
        {
            Layer reset;
            std::vector<uint32_t> rz, rx;
            for (const auto &[c, b] : plan.init) {
                (b == 'X' ? rx : rz).push_back(qubit(c));
            }
            for (const auto &p : patch.plaquettes) {
                (p.basis == 'X' ? rx : rz).push_back(qubit(p.center));
            }
            std::sort(rx.begin(), rx.end());
            std::sort(rz.begin(), rz.end());
            if (!rx.empty()) {
                reset.ops.push_back(make(Gate::RX, rx));
            }
            if (!rz.empty()) {
                reset.ops.push_back(make(Gate::R, rz));
            }
            layers_.push_back(std::move(reset));
        }
        for (const auto &prep : plan.prep_single) {
            Layer l;
            std::map<Gate, std::vector<uint32_t>> by_gate;
            for (auto [g, c] : prep) {
                by_gate[g].push_back(qubit(c));
            }
            for (auto &[g, qs] : by_gate) {
                l.ops.push_back(make(g, qs));
            }
            layers_.push_back(std::move(l));
        }
        if (!plan.prep_cz.empty()) {
            std::vector<uint32_t> ts;
            for (auto [a, b] : plan.prep_cz) {
                ts.push_back(qubit(a));
                ts.push_back(qubit(b));
            }
            layers_.push_back(Layer{{make(Gate::CZ, ts)}, {}});
        }

        std::map<Coord, char> pristine;
        for (const auto &[c, b] : plan.init) {
            if (!plan.prepared.count(c)) {
                pristine[c] = b;
            }
        }
        for (int step = 0; step < 4; step++) {
            std::vector<uint32_t> targets;
            std::set<Coord> touched;
            for (const auto &p : patch.plaquettes) {
                CornerOrder order = p.basis == 'X' ? plan.order_x : plan.order_z;
                if (auto it = plan.overrides.find(p.center); it != plan.overrides.end()) {
                    order = it->second;
                }
                const auto &dq = p.corners[order[step]];
                if (!dq) {
                    continue;
                }
                auto pr = pristine.find(*dq);
                bool droppable = plan.omit_noops == NoopRule::Untouched || (plan.omit_noops == NoopRule::FirstLayer && step == 0);
                if (droppable && pr != pristine.end() && pr->second == p.basis) {
                    continue;
                }
                if (p.basis == 'X') {
                    targets.push_back(qubit(p.center));
                    targets.push_back(qubit(*dq));
                } else {
                    targets.push_back(qubit(*dq));
                    targets.push_back(qubit(p.center));
                }
                touched.insert(*dq);
            }
            std::set<uint32_t> seen;
            for (uint32_t q : targets) {
                if (!seen.insert(q).second) {
                    throw std::logic_error("schedule touches a qubit twice in one layer");
                }
            }
            for (Coord c : touched) {
                pristine.erase(c);
            }
            Layer l;
            if (!targets.empty()) {
                l.ops.push_back(make(Gate::CX, targets));
            }
            layers_.push_back(std::move(l));
            if (step == 1 && plan.hook) {
                layers_.push_back(Layer{{make(plan.hook->second, {qubit(plan.hook->first)})}, {}});
            }
        }

        Layer meas;
        std::vector<const Plaquette *> xs, zs;
        for (const auto &p : patch.plaquettes) {
            (p.basis == 'X' ? xs : zs).push_back(&p);
        }
        std::map<Coord, size_t> record;
        for (auto *group : {&xs, &zs}) {
            if (group->empty()) {
                continue;
            }
            std::vector<uint32_t> qs;
            for (const Plaquette *p : *group) {
                qs.push_back(qubit(p->center));
                record[p->center] = measurements_++;
            }
            meas.ops.push_back(make(group == &xs ? Gate::MX : Gate::M, qs));
        }
        for (const auto &p : patch.plaquettes) {
            size_t m = record.at(p.center);
            auto present = p.support();
            bool fresh_ok = true;
            std::set<Coord> carried;
            for (Coord c : present) {
                auto it = plan.init.find(c);
                if (it == plan.init.end() || plan.prepared.count(c)) {
                    carried.insert(c);
                } else if (it->second != p.basis) {
                    fresh_ok = false;
                }
            }
            std::vector<double> coords{p.center.x(), p.center.y(), (double)round_, plan.postselect(p) ? 1.0 : 0.0};
            auto prev = last_.find(p.center);
            if (fresh_ok) {
                if (prev != last_.end() && prev->second.second == carried) {
                    meas.detectors.push_back({{prev->second.first, m}, coords});
                } else if (carried.empty()) {
                    meas.detectors.push_back({{m}, coords});
                }
            }
            last_[p.center] = {m, std::set<Coord>(present.begin(), present.end())};
        }
        layers_.push_back(std::move(meas));
        round_++;
    }

    size_t last_measurement(Coord center) const {
        return last_.at(center).first;
    }

    /// Appends a layer of MPP products (noiseless readout); returns their record indices.
    std::vector<size_t> measure_products(const std::vector<PauliString> &products) {
        Layer l;
        l.ops.push_back(make_mpp(products));
        std::vector<size_t> out;
        for (size_t k = 0; k < products.size(); k++) {
            out.push_back(measurements_++);
        }
        layers_.push_back(std::move(l));
        return out;
    }

    /// Appends a transversal data measurement in the given basis; returns record index per qubit.
    std::map<Coord, size_t> measure_data(const std::vector<Coord> &data, char basis) {
        std::vector<uint32_t> qs;
        std::map<Coord, size_t> out;
        for (Coord c : data) {
            qs.push_back(qubit(c));
            out[c] = measurements_++;
        }
        layers_.push_back(Layer{{make(basis == 'X' ? Gate::MX : Gate::M, qs)}, {}});
        return out;
    }

    void add_detector(std::vector<size_t> recs, std::vector<double> coords) {
        layers_.back().detectors.push_back({std::move(recs), std::move(coords)});
    }

    /// Renders the accumulated layers into a TICK-delimited circuit with one observable.
    Circuit emit(const std::vector<size_t> &observable) const {
        Circuit c;
        for (uint32_t q = 0; q < coords_.size(); q++) {
            Instruction inst{Gate::QUBIT_COORDS, {coords_[q].x(), coords_[q].y()}, {Target::qubit(q)}};
            c.append(inst);
        }
        for (size_t k = 0; k < layers_.size(); k++) {
            const Layer &l = layers_[k];
            if (l.ops.empty()) {
                continue;
            }
            for (const auto &op : l.ops) {
                c.append(op);
            }
            for (const auto &[recs, co] : l.detectors) {
                c.append_detector(recs, co);
            }
            if (k + 1 == layers_.size()) {
                c.append_observable(observable, 0);
            } else {
                c.tick();
            }
        }
        return c;
    }

   private:
    static Instruction make(Gate g, const std::vector<uint32_t> &qs) {
        Instruction inst{g, {}, {}};
        for (uint32_t q : qs) {
            inst.targets.push_back(Target::qubit(q));
        }
        return inst;
    }

    std::map<Coord, uint32_t> index_;
    std::vector<Coord> coords_;
    std::vector<Layer> layers_;
    std::map<Coord, std::pair<size_t, std::set<Coord>>> last_;
    size_t measurements_ = 0;
    size_t round_ = 0;
};

/// Basis for a data qubit on either side of the diagonal split through the injection corner.
inline char diagonal_basis(int x, int y, int split) {
    int v = x - y;
    if (v != split) {
        return v < split ? 'X' : 'Z';
    }
    return y == 0 ? 'X' : 'Z';
}

/// Data qubits added when a patch of size k grows to size d: below the old patch they continue the X
/// boundary, to its right the Z boundary, and the far corner follows the diagonal split.
inline std::map<Coord, char> growth_init(int k, int d, int split) {
    std::map<Coord, char> out;
    for (int y = 0; y < d; y++) {
        for (int x = 0; x < d; x++) {
            if (x < k && y < k) {
                continue;
            }
            char b = x < k ? 'X' : y < k ? 'Z' : diagonal_basis(x, y, split);
            out[Coord::data(x, y)] = b;
        }
    }
    return out;
}

inline std::vector<PauliString> stabilizer_products(LatticeCircuit &lc, const PatchLayout &patch) {
    std::vector<PauliString> out;
    for (const auto &p : patch.plaquettes) {
        PauliString ps;
        for (Coord c : p.support()) {
            ps.mul(lc.qubit(c), p.basis == 'X' ? Pauli::X : Pauli::Z);
        }
        out.push_back(ps);
    }
    return out;
}

/// Logical operator checked at the end: X down the left column for |+>, and for |i> the product
/// Y on the corner, X on the rest of the left column and Z on the rest of the top row.
inline PauliString logical_product(LatticeCircuit &lc, int d, InjectedState state) {
    PauliString out;
    if (state == InjectedState::Plus) {
        for (int y = 0; y < d; y++) {
            out.mul(lc.qubit(Coord::data(0, y)), Pauli::X);
        }
        return out;
    }
    out.mul(lc.qubit(Coord::data(0, 0)), Pauli::Y);
    for (int y = 1; y < d; y++) {
        out.mul(lc.qubit(Coord::data(0, y)), Pauli::X);
    }
    for (int x = 1; x < d; x++) {
        out.mul(lc.qubit(Coord::data(x, 0)), Pauli::Z);
    }
    return out;
}

/// Closes the circuit with the final check and returns the observable's record indices.
inline std::vector<size_t> finish(LatticeCircuit &lc, const PatchLayout &patch, const InjectionSpec &spec) {
    std::vector<size_t> obs;
    double t = (double)lc.round();
    if (spec.final_check == FinalCheck::TransversalX) {
        auto rec = lc.measure_data(patch.data, 'X');
        for (const auto &p : patch.plaquettes) {
            if (p.basis != 'X') {
                continue;
            }
            std::vector<size_t> recs{lc.last_measurement(p.center)};
            for (Coord c : p.support()) {
                recs.push_back(rec.at(c));
            }
            lc.add_detector(recs, {p.center.x(), p.center.y(), t, 0});
        }
        for (int y = 0; y < patch.k; y++) {
            obs.push_back(rec.at(Coord::data(0, y)));
        }
        return obs;
    }
    auto stabs = stabilizer_products(lc, patch);
    auto products = stabs;
    products.push_back(logical_product(lc, patch.k, spec.state));
    auto rec = lc.measure_products(products);
    for (size_t k = 0; k < patch.plaquettes.size(); k++) {
        const auto &p = patch.plaquettes[k];
        lc.add_detector({lc.last_measurement(p.center), rec[k]}, {p.center.x(), p.center.y(), t, 0});
    }
    obs.push_back(rec.back());
    return obs;
}

inline AnnotatedCircuit annotate(Circuit c) {
    AnnotatedCircuit out;
    out.postselected = postselected_from_coords(c);
    out.circuit = std::move(c);
    return out;
}

inline std::function<bool(const Plaquette &)> postselect_all(bool on) {
    return [on](const Plaquette &) { return on; };
}

}  // namespace detail

/// Hook injection: a distance-2 seed whose weight-four Z plaquette is measured in a deliberately
/// wrong order, with the injected rotation applied to its measure qubit mid-cycle. The rest of the
/// distance-d_inject patch is initialized around the seed in the same round, postselected for
/// r_inject rounds, then grown to d and held for r_hold rounds.
inline AnnotatedCircuit build_hook(const InjectionSpec &spec, const Schedule &sched = {}) {
    spec.validate();
    if (spec.protocol != Protocol::Hook && spec.protocol != Protocol::HookPregrown) {
        throw std::invalid_argument("build_hook needs protocol hook or hook_pregrown");
    }
    bool pregrown = spec.protocol == Protocol::HookPregrown;
    int k = pregrown ? spec.d : spec.d_inject;
    PatchLayout small = PatchLayout::rotated(k);
    PatchLayout full = PatchLayout::rotated(spec.d);
    detail::LatticeCircuit lc(full);
    const Coord site{1, 1};

    std::function<bool(const Plaquette &)> in_window = detail::postselect_all(true);
    if (pregrown) {
        // Postselection region: plaquettes within a box of diameter d_inject around the site.
        int reach2 = spec.d_inject - 1;
        in_window = [site, reach2](const Plaquette &p) {
            return std::abs(p.center.x2 - site.x2) <= reach2 && std::abs(p.center.y2 - site.y2) <= reach2;
        };
    }

    detail::LatticeCircuit::RoundPlan first;
    for (Coord c : small.data) {
        first.init[c] = detail::diagonal_basis(c.x2 / 2, c.y2 / 2, sched.split);
    }
    first.order_x = sched.first_x;
    first.order_z = sched.first_z;
    first.overrides = sched.first_overrides;
    first.overrides[site] = sched.hook;
    first.omit_noops = sched.omit_noops;
    first.hook = {{site, spec.state == InjectedState::I ? Gate::S : Gate::I}};
    first.postselect = in_window;
    lc.run_round(small, first);
    size_t hook_record = lc.last_measurement(site);

    detail::LatticeCircuit::RoundPlan later;
    later.order_x = sched.later_x;
    later.order_z = sched.later_z;
    later.omit_noops = sched.omit_noops;
    later.postselect = in_window;
    for (int r = 1; r < spec.r_inject; r++) {
        lc.run_round(small, later);
    }
    later.postselect = detail::postselect_all(false);
    int hold = spec.r_hold;
    if (!pregrown) {
        detail::LatticeCircuit::RoundPlan grow = later;
        grow.init = detail::growth_init(k, spec.d, sched.split);
        lc.run_round(full, grow);
    } else {
        hold++;
    }
    for (int r = 0; r < hold; r++) {
        lc.run_round(full, later);
    }
    auto obs = detail::finish(lc, full, spec);
    if (sched.observable_uses_seed_outcome && spec.state == InjectedState::I &&
        spec.final_check == FinalCheck::NoiselessStabilizer) {
        obs.push_back(hook_record);
    }
    return detail::annotate(lc.emit(obs));
}

/// Li injection: one physical qubit prepared in the target state at the patch corner, grown straight
/// to d_inject with every detector before the final growth postselected.
inline AnnotatedCircuit build_li(const InjectionSpec &spec) {
    spec.validate();
    PatchLayout small = PatchLayout::rotated(spec.d_inject);
    PatchLayout full = PatchLayout::rotated(spec.d);
    detail::LatticeCircuit lc(full);
    const Coord seed = Coord::data(0, 0);

    detail::LatticeCircuit::RoundPlan first;
    for (Coord c : small.data) {
        first.init[c] = c == seed ? 'Z' : detail::diagonal_basis(c.x2 / 2, c.y2 / 2, 0);
    }
    first.prepared.insert(seed);
    std::vector<std::pair<Gate, Coord>> prep{{Gate::H, seed}};
    first.prep_single.push_back(prep);
    if (spec.state == InjectedState::I) {
        first.prep_single.push_back({{Gate::S, seed}});
    }
    first.postselect = detail::postselect_all(true);
    lc.run_round(small, first);

    detail::LatticeCircuit::RoundPlan later;
    later.postselect = detail::postselect_all(true);
    for (int r = 1; r < spec.r_inject; r++) {
        lc.run_round(small, later);
    }
    later.postselect = detail::postselect_all(false);
    detail::LatticeCircuit::RoundPlan grow = later;
    grow.init = detail::growth_init(spec.d_inject, spec.d, 0);
    lc.run_round(full, grow);
    for (int r = 0; r < spec.r_hold; r++) {
        lc.run_round(full, later);
    }
    return detail::annotate(lc.emit(detail::finish(lc, full, spec)));
}

/// ZZ injection: a distance-2 seed in |+>^4 rotated by a ZZ^(1/2) gate on its top-row pair (which
/// crosses the X logical), grown to d_inject in the first round and then to d.
///
/// The tweaked variant changes the initialization pattern to the diagonal split used by hook
/// injection and runs the first round in the hook construction's order with no-op gates dropped.
inline AnnotatedCircuit build_zz(const InjectionSpec &spec, bool tweaked) {
    spec.validate();
    PatchLayout small = PatchLayout::rotated(spec.d_inject);
    PatchLayout full = PatchLayout::rotated(spec.d);
    detail::LatticeCircuit lc(full);
    const Coord a = Coord::data(0, 0), b = Coord::data(1, 0);
    Schedule sched;
    int split = tweaked ? sched.split : 0;

    detail::LatticeCircuit::RoundPlan first;
    for (Coord c : small.data) {
        int x = c.x2 / 2, y = c.y2 / 2;
        first.init[c] = x < 2 && y < 2 ? 'X' : detail::diagonal_basis(x, y, split);
    }
    if (spec.state == InjectedState::I) {
        first.prepared = {a, b};
        first.prep_single.push_back({{Gate::S, a}, {Gate::S, b}});
        first.prep_cz.push_back({a, b});
    }
    if (tweaked) {
        first.order_x = sched.first_x;
        first.order_z = sched.first_z;
        first.omit_noops = sched.omit_noops;
    }
    first.postselect = detail::postselect_all(true);
    lc.run_round(small, first);

    detail::LatticeCircuit::RoundPlan later;
    later.omit_noops = tweaked ? sched.omit_noops : NoopRule::Keep;
    later.postselect = detail::postselect_all(true);
    for (int r = 1; r < spec.r_inject; r++) {
        lc.run_round(small, later);
    }
    later.postselect = detail::postselect_all(false);
    detail::LatticeCircuit::RoundPlan grow = later;
    grow.init = detail::growth_init(spec.d_inject, spec.d, split);
    lc.run_round(full, grow);
    for (int r = 0; r < spec.r_hold; r++) {
        lc.run_round(full, later);
    }
    return detail::annotate(lc.emit(detail::finish(lc, full, spec)));
}

/// Plain memory experiment in the given basis, read out transversally, without postselection.
inline AnnotatedCircuit build_memory(int d, int rounds, char basis) {
    if (d < 2 || rounds < 1 || (basis != 'X' && basis != 'Z')) {
        throw std::invalid_argument("memory needs d >= 2, rounds >= 1 and basis X or Z");
    }
    PatchLayout patch = PatchLayout::rotated(d);
    detail::LatticeCircuit lc(patch);
    detail::LatticeCircuit::RoundPlan first;
    for (Coord c : patch.data) {
        first.init[c] = basis;
    }
    lc.run_round(patch, first);
    detail::LatticeCircuit::RoundPlan later;
    for (int r = 1; r < rounds; r++) {
        lc.run_round(patch, later);
    }
    auto rec = lc.measure_data(patch.data, basis);
    double t = (double)lc.round();
    for (const auto &p : patch.plaquettes) {
        if (p.basis != basis) {
            continue;
        }
        std::vector<size_t> recs{lc.last_measurement(p.center)};
        for (Coord c : p.support()) {
            recs.push_back(rec.at(c));
        }
        lc.add_detector(recs, {p.center.x(), p.center.y(), t, 0});
    }
    std::vector<size_t> obs;
    for (int i = 0; i < d; i++) {
        obs.push_back(rec.at(basis == 'Z' ? Coord::data(i, 0) : Coord::data(0, i)));
    }
    return detail::annotate(lc.emit(obs));
}

/// Dispatches on spec.protocol. Memory uses d and r_inject as the round count, in the Z basis.
inline AnnotatedCircuit build(const InjectionSpec &spec) {
    switch (spec.protocol) {
        case Protocol::Hook:
        case Protocol::HookPregrown:
            return build_hook(spec);
        case Protocol::Li:
            return build_li(spec);
        case Protocol::Zz:
            return build_zz(spec, false);
        case Protocol::ZzTweaked:
            return build_zz(spec, true);
        case Protocol::Memory:
            return build_memory(spec.d, spec.r_inject, 'Z');
    }
    throw std::invalid_argument("unknown protocol");
}

}  // namespace hookinj

#endif
