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

#ifndef HOOKINJ_SIM_TABLEAU_HPP
#define HOOKINJ_SIM_TABLEAU_HPP

#include <bit>
#include <stdexcept>
#include <string>

#include "hookinj/circuit/circuit.hpp"
#include "hookinj/sim/bit_vector.hpp"
#include "hookinj/sim/rng.hpp"

namespace hookinj {

/// Stabilizer tableau over n qubits, starting in |0...0>.
///
/// Destabilizer and stabilizer generators are stored column-major: for every qubit there is one
/// bit per generator, so single- and two-qubit gates are a handful of word operations.
///
/// In symbolic mode, each random measurement outcome becomes a fresh variable and signs are affine
/// expressions over those variables (bit 0 is the constant term). That makes it possible to decide
/// exactly which parities of measurements are deterministic.
class Tableau {
   public:
    explicit Tableau(size_t num_qubits, size_t max_symbols = 0, bool symbolic = false)
        : n_(num_qubits),
          symbolic_(symbolic),
          expr_bits_(symbolic ? 1 + max_symbols : 1),
          dx_(n_, n_),
          dz_(n_, n_),
          sx_(n_, n_),
          sz_(n_, n_),
          dsign_(n_),
          ssign_(n_),
          dsym_(symbolic ? n_ : 0, expr_bits_),
          ssym_(symbolic ? n_ : 0, expr_bits_) {
        for (size_t q = 0; q < n_; q++) {
            dx_.set(q, q, true);
            sz_.set(q, q, true);
        }
    }

    size_t num_qubits() const {
        return n_;
    }
    bool symbolic() const {
        return symbolic_;
    }
    /// Width of the outcome expressions returned by measurements.
    size_t expression_bits() const {
        return expr_bits_;
    }
    size_t num_symbols() const {
        return next_symbol_;
    }

    void apply_clifford1(const Clifford1 &c, uint32_t q) {
        SignedPauli ix = c.x_image, iz = c.z_image, iy = c.y_image();
        auto update = [&](BitMatrix &xm, BitMatrix &zm, BitVector &sign) {
            auto xr = xm.row(q);
            auto zr = zm.row(q);
            auto sr = sign.words();
            for (size_t w = 0; w < xr.size(); w++) {
                uint64_t x = xr[w], z = zr[w];
                uint64_t mx = x & ~z, mz = z & ~x, my = x & z;
                uint64_t nx = (has_x(ix.pauli) ? mx : 0) | (has_x(iz.pauli) ? mz : 0) | (has_x(iy.pauli) ? my : 0);
                uint64_t nz = (has_z(ix.pauli) ? mx : 0) | (has_z(iz.pauli) ? mz : 0) | (has_z(iy.pauli) ? my : 0);
                sr[w] ^= (ix.negative ? mx : 0) | (iz.negative ? mz : 0) | (iy.negative ? my : 0);
                xr[w] = nx;
                zr[w] = nz;
            }
        };
        update(dx_, dz_, dsign_);
        update(sx_, sz_, ssign_);
    }

    void apply_cx(uint32_t c, uint32_t t) {
        auto update = [&](BitMatrix &xm, BitMatrix &zm, BitVector &sign) {
            auto xc = xm.row(c), xt = xm.row(t), zc = zm.row(c), zt = zm.row(t);
            auto sr = sign.words();
            for (size_t w = 0; w < sr.size(); w++) {
                sr[w] ^= xc[w] & zt[w] & ~(xt[w] ^ zc[w]);
                xt[w] ^= xc[w];
                zc[w] ^= zt[w];
            }
        };
        update(dx_, dz_, dsign_);
        update(sx_, sz_, ssign_);
    }

    void apply_cz(uint32_t a, uint32_t b) {
        auto update = [&](BitMatrix &xm, BitMatrix &zm, BitVector &sign) {
            auto xa = xm.row(a), xb = xm.row(b), za = zm.row(a), zb = zm.row(b);
            auto sr = sign.words();
            for (size_t w = 0; w < sr.size(); w++) {
                sr[w] ^= xa[w] & xb[w] & (za[w] ^ zb[w]);
                za[w] ^= xb[w];
                zb[w] ^= xa[w];
            }
        };
        update(dx_, dz_, dsign_);
        update(sx_, sz_, ssign_);
    }

    /// Applies the Pauli `p` to qubit `q`.
    void apply_pauli(Pauli p, uint32_t q) {
        auto update = [&](BitMatrix &xm, BitMatrix &zm, BitVector &sign) {
            auto xr = xm.row(q), zr = zm.row(q);
            auto sr = sign.words();
            for (size_t w = 0; w < sr.size(); w++) {
                sr[w] ^= (has_x(p) ? zr[w] : 0) ^ (has_z(p) ? xr[w] : 0);
            }
        };
        update(dx_, dz_, dsign_);
        update(sx_, sz_, ssign_);
    }

    /// Measures Z on `q`. Returns the outcome as an expression (bit 0 = constant term).
    /// Concrete-mode random outcomes are drawn from `rng`.
    BitVector measure_z(uint32_t q, SplitMix64 &rng) {
        BitVector out(expr_bits_);
        size_t p = first_bit(sx_.row(q));
        if (p < n_) {
            // Random outcome: fold generator p into every other generator that anticommutes with Z_q.
            BitVector dmask(n_), smask(n_);
            std::copy(dx_.row(q).begin(), dx_.row(q).end(), dmask.words().begin());
            std::copy(sx_.row(q).begin(), sx_.row(q).end(), smask.words().begin());
            smask.set(p, false);
            multiply_stabilizer_into(p, dx_, dz_, dsign_, dsym_, dmask);
            multiply_stabilizer_into(p, sx_, sz_, ssign_, ssym_, smask);
            for (size_t c = 0; c < n_; c++) {
                dx_.set(c, p, sx_.get(c, p));
                dz_.set(c, p, sz_.get(c, p));
                sx_.set(c, p, false);
                sz_.set(c, p, false);
            }
            dsign_.set(p, ssign_[p]);
            sz_.set(q, p, true);
            if (symbolic_) {
                copy_row(ssym_, p, dsym_, p);
                clear_row(ssym_, p);
                if (next_symbol_ + 1 >= expr_bits_) {
                    throw std::length_error("tableau ran out of symbols");
                }
                size_t s = 1 + next_symbol_++;
                ssym_.set(p, s, true);
                ssign_.set(p, false);
                out.set(s, true);
            } else {
                bool b = rng() & 1;
                ssign_.set(p, b);
                out.set(0, b);
            }
            return out;
        }
        // Deterministic: Z_q is the product of the stabilizers paired with destabilizers that
        // anticommute with it.
        auto t = dx_.row(q);
        int exponent = 0;
        for (size_t w = 0; w < t.size(); w++) {
            exponent += 2 * std::popcount(ssign_.words()[w] & t[w]);
        }
        int pair_parity = 0;
        for (size_t c = 0; c < n_; c++) {
            auto xr = sx_.row(c), zr = sz_.row(c);
            uint64_t carry = 0;
            for (size_t w = 0; w < t.size(); w++) {
                uint64_t x = xr[w] & t[w], z = zr[w] & t[w];
                exponent += std::popcount(x & z);
                uint64_t prefix = z;
                prefix ^= prefix << 1;
                prefix ^= prefix << 2;
                prefix ^= prefix << 4;
                prefix ^= prefix << 8;
                prefix ^= prefix << 16;
                prefix ^= prefix << 32;
                uint64_t exclusive = (prefix << 1) ^ (carry ? ~uint64_t{0} : 0);
                pair_parity ^= std::popcount(x & exclusive) & 1;
                carry ^= (uint64_t)(std::popcount(z) & 1);
            }
        }
        exponent += 2 * pair_parity;
        out.set(0, (exponent & 3) == 2);
        if (symbolic_) {
            for (size_t w = 0; w < t.size(); w++) {
                uint64_t bits = t[w];
                while (bits) {
                    size_t i = w * 64 + (size_t)std::countr_zero(bits);
                    bits &= bits - 1;
                    xor_row_into(ssym_, i, out);
                }
            }
        }
        return out;
    }

    /// Applies X to `q` when `expr` evaluates to 1.
    void apply_x_conditioned(uint32_t q, const BitVector &expr) {
        if (expr[0]) {
            apply_pauli(Pauli::X, q);
        }
        if (!symbolic_) {
            return;
        }
        auto update = [&](BitMatrix &zm, BitMatrix &sym) {
            auto zr = zm.row(q);
            for (size_t w = 0; w < zr.size(); w++) {
                uint64_t bits = zr[w];
                while (bits) {
                    size_t i = w * 64 + (size_t)std::countr_zero(bits);
                    bits &= bits - 1;
                    auto row = sym.row(i);
                    auto e = expr.words();
                    row[0] ^= e[0] & ~uint64_t{1};
                    for (size_t k = 1; k < row.size(); k++) {
                        row[k] ^= e[k];
                    }
                }
            }
        };
        update(dz_, dsym_);
        update(sz_, ssym_);
    }

    /// Resets `q` to |0>.
    void reset_z(uint32_t q, SplitMix64 &rng) {
        BitVector e = measure_z(q, rng);
        apply_x_conditioned(q, e);
    }

    /// Sign of a stabilizer generator (constant term only); exposed for tests.
    bool stabilizer_sign(size_t row) const {
        return ssign_[row];
    }

   private:
    static size_t first_bit(std::span<const uint64_t> words) {
        for (size_t w = 0; w < words.size(); w++) {
            if (words[w]) {
                return w * 64 + (size_t)std::countr_zero(words[w]);
            }
        }
        return ~size_t{0};
    }
    static void copy_row(const BitMatrix &src, size_t r, BitMatrix &dst, size_t d) {
        auto s = src.row(r);
        std::copy(s.begin(), s.end(), dst.row(d).begin());
    }
    static void clear_row(BitMatrix &m, size_t r) {
        for (auto &w : m.row(r)) {
            w = 0;
        }
    }
    static void xor_row_into(const BitMatrix &m, size_t r, BitVector &out) {
        auto s = m.row(r);
        auto o = out.words();
        for (size_t k = 0; k < s.size(); k++) {
            o[k] ^= s[k];
        }
    }

    /// For every generator h in `mask` (within the block xm/zm), replaces h by (stabilizer p) * h.
    void multiply_stabilizer_into(size_t p, BitMatrix &xm, BitMatrix &zm, BitVector &sign, BitMatrix &sym,
                                  const BitVector &mask) {
        if (!mask.any()) {
            return;
        }
        auto m = mask.words();
        size_t nw = m.size();
        std::vector<uint64_t> c0(nw, 0), c1(nw, 0);
        auto add = [&](size_t w, uint64_t plus, uint64_t minus) {
            // +1 on `plus`, -1 (= +3) on `minus`, counters mod 4.
            uint64_t carry = c0[w] & plus;
            c0[w] ^= plus;
            c1[w] ^= carry;
            c1[w] ^= minus;
            carry = c0[w] & minus;
            c0[w] ^= minus;
            c1[w] ^= carry;
        };
        for (size_t c = 0; c < n_; c++) {
            bool xp = sx_.get(c, p), zp = sz_.get(c, p);
            if (!xp && !zp) {
                continue;
            }
            auto xr = xm.row(c), zr = zm.row(c);
            for (size_t w = 0; w < nw; w++) {
                uint64_t x2 = xr[w] & m[w], z2 = zr[w] & m[w];
                if (xp && zp) {
                    add(w, z2 & ~x2, x2 & ~z2);
                } else if (xp) {
                    add(w, z2 & x2, z2 & ~x2);
                } else {
                    add(w, x2 & ~z2, x2 & z2);
                }
            }
        }
        bool sp = ssign_[p];
        auto sr = sign.words();
        for (size_t w = 0; w < nw; w++) {
            sr[w] ^= ((sp ? m[w] : 0) ^ c1[w]) & m[w];
        }
        // Apply the bit changes after computing phases (p's own row is never in the mask).
        for (size_t c = 0; c < n_; c++) {
            bool xp = sx_.get(c, p), zp = sz_.get(c, p);
            auto xr = xm.row(c), zr = zm.row(c);
            for (size_t w = 0; w < nw; w++) {
                if (xp) {
                    xr[w] ^= m[w];
                }
                if (zp) {
                    zr[w] ^= m[w];
                }
            }
        }
        if (symbolic_) {
            auto src = ssym_.row(p);
            mask.for_each_set_bit([&](size_t h) {
                auto dst = sym.row(h);
                for (size_t k = 0; k < dst.size(); k++) {
                    dst[k] ^= src[k];
                }
            });
        }
    }

    size_t n_;
    bool symbolic_;
    size_t expr_bits_;
    size_t next_symbol_ = 0;
    BitMatrix dx_, dz_, sx_, sz_;  // row = qubit, column = generator
    BitVector dsign_, ssign_;
    BitMatrix dsym_, ssym_;  // row = generator, column = expression bit (bit 0 unused here)
};

}  // namespace hookinj

#endif
