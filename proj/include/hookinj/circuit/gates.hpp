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

#ifndef HOOKINJ_CIRCUIT_GATES_HPP
#define HOOKINJ_CIRCUIT_GATES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hookinj/circuit/pauli.hpp"

namespace hookinj {

enum class Gate : uint8_t {
    // The 24 single-qubit Cliffords. Order matches CLIFFORD1_TABLE.
    I,
    X,
    Y,
    Z,
    H,
    H_XY,
    H_YZ,
    H_NXY,
    H_NXZ,
    H_NYZ,
    S,
    S_DAG,
    SQRT_X,
    SQRT_X_DAG,
    SQRT_Y,
    SQRT_Y_DAG,
    C_XYZ,
    C_ZYX,
    C_NXYZ,
    C_XNYZ,
    C_XYNZ,
    C_NZYX,
    C_ZNYX,
    C_ZYNX,
    CX,
    CZ,
    R,
    RX,
    M,
    MX,
    MPP,
    DEPOLARIZE1,
    DEPOLARIZE2,
    X_ERROR,
    Z_ERROR,
    DETECTOR,
    OBSERVABLE_INCLUDE,
    QUBIT_COORDS,
    TICK,
};

inline constexpr size_t NUM_GATES = (size_t)Gate::TICK + 1;
inline constexpr size_t NUM_CLIFFORD1 = 24;

enum class GateCategory : uint8_t {
    Clifford1,
    Clifford2,
    Reset,
    Measurement,
    PauliProductMeasurement,
    Noise1,
    Noise2,
    Annotation,
    Tick,
};

struct GateInfo {
    std::string_view name;
    GateCategory category;
};

inline constexpr std::array<GateInfo, NUM_GATES> GATE_INFO{{
    {"I", GateCategory::Clifford1},
    {"X", GateCategory::Clifford1},
    {"Y", GateCategory::Clifford1},
    {"Z", GateCategory::Clifford1},
    {"H", GateCategory::Clifford1},
    {"H_XY", GateCategory::Clifford1},
    {"H_YZ", GateCategory::Clifford1},
    {"H_NXY", GateCategory::Clifford1},
    {"H_NXZ", GateCategory::Clifford1},
    {"H_NYZ", GateCategory::Clifford1},
    {"S", GateCategory::Clifford1},
    {"S_DAG", GateCategory::Clifford1},
    {"SQRT_X", GateCategory::Clifford1},
    {"SQRT_X_DAG", GateCategory::Clifford1},
    {"SQRT_Y", GateCategory::Clifford1},
    {"SQRT_Y_DAG", GateCategory::Clifford1},
    {"C_XYZ", GateCategory::Clifford1},
    {"C_ZYX", GateCategory::Clifford1},
    {"C_NXYZ", GateCategory::Clifford1},
    {"C_XNYZ", GateCategory::Clifford1},
    {"C_XYNZ", GateCategory::Clifford1},
    {"C_NZYX", GateCategory::Clifford1},
    {"C_ZNYX", GateCategory::Clifford1},
    {"C_ZYNX", GateCategory::Clifford1},
    {"CX", GateCategory::Clifford2},
    {"CZ", GateCategory::Clifford2},
    {"R", GateCategory::Reset},
    {"RX", GateCategory::Reset},
    {"M", GateCategory::Measurement},
    {"MX", GateCategory::Measurement},
    {"MPP", GateCategory::PauliProductMeasurement},
    {"DEPOLARIZE1", GateCategory::Noise1},
    {"DEPOLARIZE2", GateCategory::Noise2},
    {"X_ERROR", GateCategory::Noise1},
    {"Z_ERROR", GateCategory::Noise1},
    {"DETECTOR", GateCategory::Annotation},
    {"OBSERVABLE_INCLUDE", GateCategory::Annotation},
    {"QUBIT_COORDS", GateCategory::Annotation},
    {"TICK", GateCategory::Tick},
}};

inline constexpr std::string_view gate_name(Gate g) {
    return GATE_INFO[(size_t)g].name;
}
inline constexpr GateCategory gate_category(Gate g) {
    return GATE_INFO[(size_t)g].category;
}
inline constexpr bool is_clifford1(Gate g) {
    return gate_category(g) == GateCategory::Clifford1;
}
inline constexpr bool is_two_qubit_gate(Gate g) {
    return gate_category(g) == GateCategory::Clifford2;
}
inline constexpr bool is_noise(Gate g) {
    auto c = gate_category(g);
    return c == GateCategory::Noise1 || c == GateCategory::Noise2;
}
inline constexpr bool is_reset(Gate g) {
    return gate_category(g) == GateCategory::Reset;
}
/// Single-qubit-basis measurements (M, MX). MPP is separate.
inline constexpr bool is_measurement(Gate g) {
    return gate_category(g) == GateCategory::Measurement;
}
inline constexpr bool produces_measurements(Gate g) {
    return is_measurement(g) || g == Gate::MPP;
}
inline constexpr bool is_annotation(Gate g) {
    return gate_category(g) == GateCategory::Annotation;
}
/// Operations that occupy qubits within a layer.
inline constexpr bool is_operation(Gate g) {
    auto c = gate_category(g);
    return c == GateCategory::Clifford1 || c == GateCategory::Clifford2 || c == GateCategory::Reset ||
           c == GateCategory::Measurement || c == GateCategory::PauliProductMeasurement;
}

inline std::optional<Gate> gate_from_name(std::string_view name) {
    // Aliases accepted on input; output always uses the canonical names.
    if (name == "CNOT" || name == "ZCX") {
        return Gate::CX;
    }
    if (name == "RZ") {
        return Gate::R;
    }
    if (name == "MZ") {
        return Gate::M;
    }
    if (name == "SQRT_Z") {
        return Gate::S;
    }
    if (name == "SQRT_Z_DAG") {
        return Gate::S_DAG;
    }
    if (name == "H_XZ") {
        return Gate::H;
    }
    for (size_t k = 0; k < NUM_GATES; k++) {
        if (GATE_INFO[k].name == name) {
            return (Gate)k;
        }
    }
    return std::nullopt;
}

struct SignedPauli {
    Pauli pauli = Pauli::I;
    bool negative = false;
    bool operator==(const SignedPauli &) const = default;
};

/// A single-qubit Clifford described by its conjugation action on X and Z.
struct Clifford1 {
    SignedPauli x_image;
    SignedPauli z_image;

    SignedPauli y_image() const {
        // U Y U^dag = i (U X U^dag)(U Z U^dag)
        int k = pauli_product_phase(x_image.pauli, z_image.pauli);
        bool neg = x_image.negative ^ z_image.negative ^ (k == 1);
        return {x_image.pauli ^ z_image.pauli, neg};
    }

    SignedPauli image(Pauli p) const {
        switch (p) {
            case Pauli::I:
                return {Pauli::I, false};
            case Pauli::X:
                return x_image;
            case Pauli::Z:
                return z_image;
            case Pauli::Y:
                return y_image();
        }
        return {};
    }

    /// The Clifford that applies `*this` first and then `next`.
    Clifford1 then(const Clifford1 &next) const {
        auto map = [&](SignedPauli s) {
            SignedPauli r = next.image(s.pauli);
            r.negative ^= s.negative;
            return r;
        };
        return {map(x_image), map(z_image)};
    }

    bool operator==(const Clifford1 &) const = default;
};

namespace detail {
inline constexpr SignedPauli P(char c, bool neg = false) {
    return {c == 'X' ? Pauli::X : c == 'Y' ? Pauli::Y : Pauli::Z, neg};
}
}  // namespace detail

inline constexpr std::array<Clifford1, NUM_CLIFFORD1> CLIFFORD1_TABLE{{
    {detail::P('X'), detail::P('Z')},              // I
    {detail::P('X'), detail::P('Z', true)},        // X
    {detail::P('X', true), detail::P('Z', true)},  // Y
    {detail::P('X', true), detail::P('Z')},        // Z
    {detail::P('Z'), detail::P('X')},              // H
    {detail::P('Y'), detail::P('Z', true)},        // H_XY
    {detail::P('X', true), detail::P('Y')},        // H_YZ
    {detail::P('Y', true), detail::P('Z', true)},  // H_NXY
    {detail::P('Z', true), detail::P('X', true)},  // H_NXZ
    {detail::P('X', true), detail::P('Y', true)},  // H_NYZ
    {detail::P('Y'), detail::P('Z')},              // S
    {detail::P('Y', true), detail::P('Z')},        // S_DAG
    {detail::P('X'), detail::P('Y', true)},        // SQRT_X
    {detail::P('X'), detail::P('Y')},              // SQRT_X_DAG
    {detail::P('Z', true), detail::P('X')},        // SQRT_Y
    {detail::P('Z'), detail::P('X', true)},        // SQRT_Y_DAG
    {detail::P('Y'), detail::P('X')},              // C_XYZ
    {detail::P('Z'), detail::P('Y')},              // C_ZYX
    {detail::P('Y', true), detail::P('X', true)},  // C_NXYZ
    {detail::P('Y', true), detail::P('X')},        // C_XNYZ
    {detail::P('Y'), detail::P('X', true)},        // C_XYNZ
    {detail::P('Z', true), detail::P('Y', true)},  // C_NZYX
    {detail::P('Z'), detail::P('Y', true)},        // C_ZNYX
    {detail::P('Z', true), detail::P('Y')},        // C_ZYNX
}};

inline const Clifford1 &clifford_of(Gate g) {
    if (!is_clifford1(g)) {
        throw std::invalid_argument("not a single-qubit Clifford: " + std::string(gate_name(g)));
    }
    return CLIFFORD1_TABLE[(size_t)g];
}

inline Gate gate_of(const Clifford1 &c) {
    for (size_t k = 0; k < NUM_CLIFFORD1; k++) {
        if (CLIFFORD1_TABLE[k] == c) {
            return (Gate)k;
        }
    }
    throw std::logic_error("Clifford1 table is incomplete");
}

}  // namespace hookinj

#endif
