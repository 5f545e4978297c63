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

#ifndef HOOKINJ_SIM_BIT_VECTOR_HPP
#define HOOKINJ_SIM_BIT_VECTOR_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hookinj {

inline constexpr size_t words_for_bits(size_t num_bits) {
    return (num_bits + 63) / 64;
}

/// Fixed-length packed bit vector. Bits past `size()` in the last word are always zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_(words_for_bits(num_bits), 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

    bool operator[](size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t m = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= m;
        } else {
            words_[k >> 6] &= ~m;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    void clear() {
        std::fill(words_.begin(), words_.end(), 0);
    }

    BitVector &operator^=(const BitVector &other) {
        for (size_t k = 0; k < words_.size(); k++) {
            words_[k] ^= other.words_[k];
        }
        return *this;
    }
    BitVector &operator&=(const BitVector &other) {
        for (size_t k = 0; k < words_.size(); k++) {
            words_[k] &= other.words_[k];
        }
        return *this;
    }
    BitVector &operator|=(const BitVector &other) {
        for (size_t k = 0; k < words_.size(); k++) {
            words_[k] |= other.words_[k];
        }
        return *this;
    }

    bool any() const {
        for (uint64_t w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    size_t popcount() const {
        size_t n = 0;
        for (uint64_t w : words_) {
            n += (size_t)std::popcount(w);
        }
        return n;
    }
    /// Index of the lowest set bit, or size() when none.
    size_t first_set() const {
        for (size_t k = 0; k < words_.size(); k++) {
            if (words_[k]) {
                return k * 64 + (size_t)std::countr_zero(words_[k]);
            }
        }
        return num_bits_;
    }

    template <typename Fn>
    void for_each_set_bit(Fn &&fn) const {
        for (size_t k = 0; k < words_.size(); k++) {
            uint64_t w = words_[k];
            while (w) {
                fn(k * 64 + (size_t)std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    bool operator==(const BitVector &other) const = default;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Row-major packed bit matrix (rows are shots in a ShotBatch).
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t num_rows, size_t num_cols)
        : num_rows_(num_rows), num_cols_(num_cols), stride_(words_for_bits(num_cols)), data_(num_rows * stride_, 0) {
    }

    size_t num_rows() const {
        return num_rows_;
    }
    size_t num_cols() const {
        return num_cols_;
    }
    size_t stride() const {
        return stride_;
    }

    std::span<uint64_t> row(size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> row(size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    bool get(size_t r, size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool v) {
        uint64_t &w = data_[r * stride_ + (c >> 6)];
        uint64_t m = uint64_t{1} << (c & 63);
        w = v ? (w | m) : (w & ~m);
    }
    void flip(size_t r, size_t c) {
        data_[r * stride_ + (c >> 6)] ^= uint64_t{1} << (c & 63);
    }
    bool row_any(size_t r) const {
        for (uint64_t w : row(r)) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    size_t count_ones() const {
        size_t n = 0;
        for (uint64_t w : data_) {
            n += (size_t)std::popcount(w);
        }
        return n;
    }

    std::span<const uint64_t> raw() const {
        return data_;
    }
    std::span<uint64_t> raw() {
        return data_;
    }

    bool operator==(const BitMatrix &other) const = default;

   private:
    size_t num_rows_ = 0;
    size_t num_cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

}  // namespace hookinj

#endif
