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

#ifndef HOOKINJ_BUILDERS_LAYOUT_HPP
#define HOOKINJ_BUILDERS_LAYOUT_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hookinj {

/// Lattice position in doubled coordinates: data qubits sit at even (x, y), measure qubits at odd.
struct Coord {
    int x2 = 0;
    int y2 = 0;

    static Coord data(int x, int y) {
        return {2 * x, 2 * y};
    }
    double x() const {
        return x2 / 2.0;
    }
    double y() const {
        return y2 / 2.0;
    }
    auto operator<=>(const Coord &) const = default;
};

/// Corner slots of a plaquette, in reading order.
enum Corner : uint8_t { NW = 0, NE = 1, SW = 2, SE = 3 };

/// Order in which a plaquette's measure qubit visits its corners over the four two-qubit layers.
using CornerOrder = std::array<uint8_t, 4>;

/// The usual orders: X plaquettes sweep in a Z shape, Z plaquettes in an N shape, so that hook errors
/// run perpendicular to the logical operator of the same type.
inline constexpr CornerOrder STANDARD_X_ORDER{NW, NE, SW, SE};
inline constexpr CornerOrder STANDARD_Z_ORDER{NW, SW, NE, SE};

struct Plaquette {
    char basis = 'Z';
    Coord center;
    std::array<std::optional<Coord>, 4> corners;

    std::vector<Coord> support() const {
        std::vector<Coord> out;
        for (const auto &c : corners) {
            if (c) {
                out.push_back(*c);
            }
        }
        return out;
    }
    size_t weight() const {
        return support().size();
    }
};

/// Rotated surface code patch with its top-left data qubit at (x0, y0).
///
/// Plaquette (i, j) sits at (x0 + i + 1/2, y0 + j + 1/2) and is Z type when i + j is even. Weight-two
/// X plaquettes line the top and bottom edges and weight-two Z plaquettes line the left and right
/// edges, so the Z logical runs along the top row and the X logical down the left column.
struct PatchLayout {
    int x0 = 0;
    int y0 = 0;
    int k = 0;
    std::vector<Coord> data;
    std::vector<Plaquette> plaquettes;

    static PatchLayout rotated(int k, int x0 = 0, int y0 = 0) {
        if (k < 1) {
            throw std::invalid_argument("patch size must be positive");
        }
        PatchLayout out;
        out.x0 = x0;
        out.y0 = y0;
        out.k = k;
        for (int y = 0; y < k; y++) {
            for (int x = 0; x < k; x++) {
                out.data.push_back(Coord::data(x0 + x, y0 + y));
            }
        }
        for (int j = -1; j < k; j++) {
            for (int i = -1; i < k; i++) {
                char basis = ((i + j) % 2 + 2) % 2 == 0 ? 'Z' : 'X';
                Plaquette p;
                p.basis = basis;
                p.center = {2 * (x0 + i) + 1, 2 * (y0 + j) + 1};
                int n = 0;
                const int dx[4] = {0, 1, 0, 1};
                const int dy[4] = {0, 0, 1, 1};
                for (int c = 0; c < 4; c++) {
                    int x = i + dx[c], y = j + dy[c];
                    if (x >= 0 && x < k && y >= 0 && y < k) {
                        p.corners[c] = Coord::data(x0 + x, y0 + y);
                        n++;
                    }
                }
                bool keep = n == 4;
                if (n == 2) {
                    keep = basis == 'X' ? (j == -1 || j == k - 1) : (i == -1 || i == k - 1);
                }
                if (keep) {
                    out.plaquettes.push_back(p);
                }
            }
        }
        return out;
    }

    bool contains_data(Coord c) const {
        int x = c.x2 / 2 - x0, y = c.y2 / 2 - y0;
        return c.x2 % 2 == 0 && c.y2 % 2 == 0 && x >= 0 && x < k && y >= 0 && y < k;
    }
    size_t num_qubits() const {
        return data.size() + plaquettes.size();
    }
};

}  // namespace hookinj

#endif
