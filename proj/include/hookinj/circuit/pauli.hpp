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

#ifndef HOOKINJ_CIRCUIT_PAULI_HPP
#define HOOKINJ_CIRCUIT_PAULI_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hookinj {

/// Single-qubit Pauli, encoded as (x bit) | (z bit << 1).
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr bool has_x(Pauli p) {
    return (uint8_t)p & 1;
}
inline constexpr bool has_z(Pauli p) {
    return (uint8_t)p & 2;
}
inline constexpr Pauli pauli_from_bits(bool x, bool z) {
    return (Pauli)((uint8_t)x | ((uint8_t)z << 1));
}
inline constexpr Pauli operator^(Pauli a, Pauli b) {
    return (Pauli)((uint8_t)a ^ (uint8_t)b);
}
inline constexpr bool anticommutes(Pauli a, Pauli b) {
    return ((has_x(a) && has_z(b)) != (has_z(a) && has_x(b)));
}

inline constexpr char pauli_char(Pauli p) {
    return "IXZY"[(uint8_t)p];
}

inline Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

/// Exponent k such that a*b = i^k (a^b), for single-qubit Paulis.
inline constexpr int pauli_product_phase(Pauli a, Pauli b) {
    // XY = iZ, YZ = iX, ZX = iY.
    if (a == Pauli::I || b == Pauli::I || a == b) {
        return 0;
    }
    bool cyclic = (a == Pauli::X && b == Pauli::Y) || (a == Pauli::Y && b == Pauli::Z) || (a == Pauli::Z && b == Pauli::X);
    return cyclic ? 1 : 3;
}

/// Sparse Pauli product: sorted (qubit, letter) pairs with no identity entries.
class PauliString {
   public:
    PauliString() = default;
    PauliString(std::initializer_list<std::pair<uint32_t, Pauli>> terms) {
        for (auto [q, p] : terms) {
            mul(q, p);
        }
    }

    /// Parses "X0*Y3*Z7" (also accepts spaces instead of '*').
    static PauliString from_text(const std::string &text) {
        PauliString out;
        size_t k = 0;
        while (k < text.size()) {
            char c = text[k];
            if (c == '*' || c == ' ') {
                k++;
                continue;
            }
            Pauli p = pauli_from_char(c);
            k++;
            size_t start = k;
            while (k < text.size() && text[k] >= '0' && text[k] <= '9') {
                k++;
            }
            if (start == k) {
                throw std::invalid_argument("missing qubit index in Pauli string: " + text);
            }
            out.mul((uint32_t)std::stoul(text.substr(start, k - start)), p);
        }
        return out;
    }

    /// Multiplies in a single-qubit term, ignoring phase.
    void mul(uint32_t qubit, Pauli p) {
        if (p == Pauli::I) {
            return;
        }
        auto it = std::lower_bound(terms_.begin(), terms_.end(), qubit, [](const auto &e, uint32_t q) {
            return e.first < q;
        });
        if (it != terms_.end() && it->first == qubit) {
            it->second = it->second ^ p;
            if (it->second == Pauli::I) {
                terms_.erase(it);
            }
        } else {
            terms_.insert(it, {qubit, p});
        }
    }

    Pauli get(uint32_t qubit) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), qubit, [](const auto &e, uint32_t q) {
            return e.first < q;
        });
        return (it != terms_.end() && it->first == qubit) ? it->second : Pauli::I;
    }

    bool commutes_with(const PauliString &other) const {
        bool anti = false;
        size_t a = 0, b = 0;
        while (a < terms_.size() && b < other.terms_.size()) {
            if (terms_[a].first < other.terms_[b].first) {
                a++;
            } else if (terms_[a].first > other.terms_[b].first) {
                b++;
            } else {
                anti ^= anticommutes(terms_[a].second, other.terms_[b].second);
                a++;
                b++;
            }
        }
        return !anti;
    }

    const std::vector<std::pair<uint32_t, Pauli>> &terms() const {
        return terms_;
    }
    size_t weight() const {
        return terms_.size();
    }
    bool empty() const {
        return terms_.empty();
    }

    std::string str() const {
        std::string out;
        for (size_t k = 0; k < terms_.size(); k++) {
            if (k) {
                out += '*';
            }
            out += pauli_char(terms_[k].second);
            out += std::to_string(terms_[k].first);
        }
        return out;
    }

    bool operator==(const PauliString &other) const = default;

   private:
    std::vector<std::pair<uint32_t, Pauli>> terms_;
};

}  // namespace hookinj

#endif
