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

#include <gtest/gtest.h>

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "hookinj/circuit/circuit.hpp"
#include "hookinj/circuit/gates.hpp"
#include "hookinj/circuit/noise.hpp"
#include "hookinj/circuit/pauli.hpp"
#include "hookinj/circuit/text_format.hpp"
#include "hookinj/circuit/transpile.hpp"
#include "hookinj/sim/rng.hpp"

using namespace hookinj;

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row major

Mat2 mul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}
Mat2 dagger(const Mat2 &a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}
const double kR = 1 / std::sqrt(2.0);
const Mat2 kI{1, 0, 0, 1};
const Mat2 kX{0, 1, 1, 0};
const Mat2 kY{0, cd(0, -1), cd(0, 1), 0};
const Mat2 kZ{1, 0, 0, -1};
const Mat2 kH{kR, kR, kR, -kR};
const Mat2 kS{1, 0, 0, cd(0, 1)};

Mat2 pauli_mat(Pauli p) {
    switch (p) {
        case Pauli::X:
            return kX;
        case Pauli::Y:
            return kY;
        case Pauli::Z:
            return kZ;
        default:
            return kI;
    }
}

bool close(const Mat2 &a, const Mat2 &b) {
    for (int k = 0; k < 4; k++) {
        if (std::abs(a[k] - b[k]) > 1e-9) {
            return false;
        }
    }
    return true;
}

/// Sign of `image` as seen by actually conjugating with U, or nullopt if U P U^dag is not +-image.
std::optional<bool> conj_sign(const Mat2 &u, Pauli p, Pauli image) {
    Mat2 got = mul(mul(u, pauli_mat(p)), dagger(u));
    Mat2 want = pauli_mat(image);
    if (close(got, want)) {
        return false;
    }
    Mat2 neg{-want[0], -want[1], -want[2], -want[3]};
    if (close(got, neg)) {
        return true;
    }
    return std::nullopt;
}

/// Matrix for each of the 24 Cliffords, found by searching words over H and S and matching the
/// conjugation action numerically. Independent of the library's composition rules.
std::map<Gate, Mat2> clifford_matrices() {
    std::vector<Mat2> words{kI};
    for (int len = 0; len < 7; len++) {
        std::vector<Mat2> next;
        for (const auto &w : words) {
            next.push_back(mul(kH, w));
            next.push_back(mul(kS, w));
        }
        words.insert(words.end(), next.begin(), next.end());
        if (words.size() > 4000) {
            break;
        }
    }
    std::map<Gate, Mat2> out;
    for (size_t k = 0; k < NUM_CLIFFORD1; k++) {
        const Clifford1 &c = CLIFFORD1_TABLE[k];
        for (const auto &w : words) {
            auto sx = conj_sign(w, Pauli::X, c.x_image.pauli);
            auto sz = conj_sign(w, Pauli::Z, c.z_image.pauli);
            if (sx && sz && *sx == c.x_image.negative && *sz == c.z_image.negative) {
                out[(Gate)k] = w;
                break;
            }
        }
    }
    return out;
}

/// Dense statevector for unitary circuits over few qubits.
struct StateVector {
    int n;
    std::vector<cd> amp;
    explicit StateVector(int n_) : n(n_), amp(size_t{1} << n_, 0) {
        amp[0] = 1;
    }
    void apply1(const Mat2 &u, uint32_t q) {
        size_t bit = size_t{1} << q;
        for (size_t i = 0; i < amp.size(); i++) {
            if (!(i & bit)) {
                cd a = amp[i], b = amp[i | bit];
                amp[i] = u[0] * a + u[1] * b;
                amp[i | bit] = u[2] * a + u[3] * b;
            }
        }
    }
    void cz(uint32_t a, uint32_t b) {
        for (size_t i = 0; i < amp.size(); i++) {
            if (((i >> a) & 1) && ((i >> b) & 1)) {
                amp[i] = -amp[i];
            }
        }
    }
    void cx(uint32_t c, uint32_t t) {
        apply1(kH, t);
        cz(c, t);
        apply1(kH, t);
    }
};

StateVector run_unitary(const Circuit &c, int n, const std::map<Gate, Mat2> &mats) {
    StateVector sv(n);
    for (const auto &inst : c.instructions) {
        if (is_clifford1(inst.gate)) {
            for (const auto &t : inst.targets) {
                sv.apply1(mats.at(inst.gate), t.value);
            }
        } else if (inst.gate == Gate::CZ || inst.gate == Gate::CX) {
            for (size_t k = 0; k + 1 < inst.targets.size(); k += 2) {
                if (inst.gate == Gate::CZ) {
                    sv.cz(inst.targets[k].value, inst.targets[k + 1].value);
                } else {
                    sv.cx(inst.targets[k].value, inst.targets[k + 1].value);
                }
            }
        }
    }
    return sv;
}

/// |<a|b>| == 1.
bool same_state_up_to_phase(const StateVector &a, const StateVector &b) {
    cd dot = 0;
    for (size_t i = 0; i < a.amp.size(); i++) {
        dot += std::conj(a.amp[i]) * b.amp[i];
    }
    return std::abs(std::abs(dot) - 1) < 1e-9;
}

}  // namespace

TEST(Pauli, ProductAndCommutation) {
    EXPECT_EQ(Pauli::X ^ Pauli::Z, Pauli::Y);
    EXPECT_TRUE(anticommutes(Pauli::X, Pauli::Z));
    EXPECT_FALSE(anticommutes(Pauli::Y, Pauli::Y));
    PauliString a = PauliString::from_text("X0*Z1");
    PauliString b = PauliString::from_text("Z0*Z1");
    PauliString c = PauliString::from_text("X0*X1");
    EXPECT_FALSE(a.commutes_with(b));
    EXPECT_TRUE(b.commutes_with(c));
    a.mul(0, Pauli::X);
    EXPECT_EQ(a.weight(), 1u);
    EXPECT_EQ(a.get(1), Pauli::Z);
}

TEST(Gates, EveryTableEntryIsARealClifford) {
    auto mats = clifford_matrices();
    EXPECT_EQ(mats.size(), NUM_CLIFFORD1);
}

TEST(Gates, NamedCliffordsMatchTheirMatrices) {
    auto mats = clifford_matrices();
    // Textbook definitions, up to global phase.
    auto eq_up_to_phase = [](const Mat2 &a, const Mat2 &b) {
        cd ratio = 0;
        for (int k = 0; k < 4; k++) {
            if (std::abs(b[k]) > 1e-9) {
                ratio = a[k] / b[k];
                break;
            }
        }
        Mat2 scaled{b[0] * ratio, b[1] * ratio, b[2] * ratio, b[3] * ratio};
        return std::abs(std::abs(ratio) - 1) < 1e-9 && close(a, scaled);
    };
    EXPECT_TRUE(eq_up_to_phase(mats.at(Gate::H), kH));
    EXPECT_TRUE(eq_up_to_phase(mats.at(Gate::S), kS));
    EXPECT_TRUE(eq_up_to_phase(mats.at(Gate::S_DAG), dagger(kS)));
    const Mat2 sqrt_x{cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5)};
    EXPECT_TRUE(eq_up_to_phase(mats.at(Gate::SQRT_X), sqrt_x));
    EXPECT_TRUE(eq_up_to_phase(mats.at(Gate::X), kX));
}

TEST(Gates, CompositionMatchesMatrixProduct) {
    auto mats = clifford_matrices();
    for (size_t a = 0; a < NUM_CLIFFORD1; a++) {
        for (size_t b = 0; b < NUM_CLIFFORD1; b++) {
            Clifford1 c = CLIFFORD1_TABLE[a].then(CLIFFORD1_TABLE[b]);
            Mat2 u = mul(mats.at((Gate)b), mats.at((Gate)a));
            auto sx = conj_sign(u, Pauli::X, c.x_image.pauli);
            auto sz = conj_sign(u, Pauli::Z, c.z_image.pauli);
            ASSERT_TRUE(sx && sz);
            EXPECT_EQ(*sx, c.x_image.negative);
            EXPECT_EQ(*sz, c.z_image.negative);
        }
    }
}

TEST(TextFormat, RoundTrip) {
    const std::string text =
        "QUBIT_COORDS(0,0) 0\n"
        "R 0 1\n"
        "RX 2\n"
        "TICK\n"
        "CX 2 0\n"
        "DEPOLARIZE2(0.001) 2 0\n"
        "TICK\n"
        "M(0.005) 0 1\n"
        "MX 2\n"
        "MPP X0*Z1 Y2\n"
        "DETECTOR(0.5,0.5,0,1) rec[-5] rec[-3]\n"
        "OBSERVABLE_INCLUDE(0) rec[-1]\n";
    Circuit c = parse(text);
    EXPECT_EQ(serialize(c), text);
    EXPECT_EQ(c.num_measurements(), 5u);
    EXPECT_EQ(c.num_detectors(), 1u);
    EXPECT_EQ(c.num_observables(), 1u);
}

TEST(TextFormat, RejectsMalformedInput) {
    EXPECT_ANY_THROW(parse("FOO 0\n"));
    EXPECT_ANY_THROW(parse("X_ERROR(abc) 0\n"));
}

TEST(Validate, FlagsBadRecordReferences) {
    Circuit c;
    c.append(Gate::M, {0});
    EXPECT_TRUE(validate(c).empty());
    c.append_detector({0});
    EXPECT_TRUE(validate(c).empty());
    EXPECT_FALSE(validate(parse("M 0\nDETECTOR rec[-2]\n")).empty());
}

TEST(Transpile, PreservesUnitaryActionOnRandomCircuits) {
    auto mats = clifford_matrices();
    SplitMix64 rng(17);
    const Gate pool[] = {Gate::H, Gate::S, Gate::S_DAG, Gate::SQRT_X, Gate::SQRT_X_DAG, Gate::X, Gate::Z,
                         Gate::SQRT_Y, Gate::H_YZ, Gate::C_XYZ};
    for (int trial = 0; trial < 200; trial++) {
        // Layered circuits: each qubit is touched at most once per layer.
        Circuit c;
        for (int layer = 0; layer < 6; layer++) {
            std::vector<uint32_t> free{0, 1, 2, 3};
            for (size_t k = free.size(); k > 1; k--) {
                std::swap(free[k - 1], free[rng.below((uint32_t)k)]);
            }
            while (!free.empty()) {
                if (free.size() >= 2 && rng.below(2)) {
                    uint32_t a = free.back();
                    free.pop_back();
                    uint32_t b = free.back();
                    free.pop_back();
                    c.append(rng.below(2) ? Gate::CX : Gate::CZ, {a, b});
                } else {
                    c.append(pool[rng.below(10)], {free.back()});
                    free.pop_back();
                }
            }
            c.tick();
        }
        Circuit t = transpile_to_cz(c);
        EXPECT_EQ(t.count_gates(Gate::CX), 0u);
        ASSERT_TRUE(same_state_up_to_phase(run_unitary(c, 4, mats), run_unitary(t, 4, mats))) << serialize(c);
    }
}

TEST(Transpile, CxBecomesConjugatedCz) {
    Circuit c = parse("R 0 1\nTICK\nCX 0 1\nTICK\nM 0 1\n");
    Circuit t = transpile_to_cz(c);
    EXPECT_EQ(t.count_gates(Gate::CZ), 1u);
    EXPECT_EQ(t.count_gates(Gate::H), 2u);
    EXPECT_EQ(t.num_measurements(), 2u);
}

TEST(Noise, Si1000ChannelStrengths) {
    NoiseParams n{0.001};
    EXPECT_DOUBLE_EQ(n.two_qubit(), 0.001);
    EXPECT_DOUBLE_EQ(n.single_qubit(), 0.0001);
    EXPECT_DOUBLE_EQ(n.reset_flip(), 0.002);
    EXPECT_DOUBLE_EQ(n.measure_flip(), 0.005);
    EXPECT_DOUBLE_EQ(n.wait(), 0.002);
}

TEST(Noise, InsertsExpectedChannels) {
    Circuit c = parse("R 0 1 2\nTICK\nCZ 0 1\nTICK\nM 0\nDETECTOR rec[-1]\n");
    Circuit noisy = apply_si1000(c, NoiseParams{0.01});
    std::string text = serialize(noisy);
    EXPECT_NE(text.find("X_ERROR(0.02) 0 1 2"), std::string::npos) << text;
    EXPECT_NE(text.find("DEPOLARIZE2(0.01) 0 1"), std::string::npos) << text;
    EXPECT_NE(text.find("DEPOLARIZE1(0.001) 2"), std::string::npos) << text;
    EXPECT_NE(text.find("M(0.05) 0"), std::string::npos) << text;
    // Qubits idling through the measurement layer get the 2p wait channel.
    EXPECT_NE(text.find("DEPOLARIZE1(0.02) 1 2"), std::string::npos) << text;
    EXPECT_EQ(serialize(strip_noise(noisy)), serialize(c));
}

TEST(Noise, RejectsCx) {
    Circuit c = parse("CX 0 1\n");
    EXPECT_THROW(apply_si1000(c, NoiseParams{0.001}), std::invalid_argument);
}
