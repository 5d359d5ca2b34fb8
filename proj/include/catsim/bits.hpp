/*
Copyright 2026 The catsim Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catsim {

/// Number of bits needed to write every value in [0, n). bits_for(1) == 0.
constexpr std::size_t bits_for(std::uint64_t n) {
    if (n <= 1) return 0;
    return static_cast<std::size_t>(std::bit_width(n - 1));
}

/// ceil(log2 n) for n >= 1.
constexpr std::size_t ceil_log2(std::uint64_t n) { return bits_for(n); }

/// Fixed-width bit string. Bit 0 is the first character of the textual form.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    static Bits from_string(std::string_view s) {
        Bits out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                out.set(i, true);
            } else if (s[i] != '0') {
                throw std::invalid_argument("bit string contains '" + std::string(1, s[i]) + "'");
            }
        }
        return out;
    }

    /// Bit i of the result is bit i of `value`.
    static Bits from_uint(std::size_t n, std::uint64_t value) {
        Bits out(n);
        out.set_field(0, n < 64 ? n : 64, value);
        return out;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    bool test(std::size_t i) const {
        if (i >= size_) throw std::out_of_range("Bits::test");
        return (*this)[i];
    }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    /// Reads `width` (<= 64) bits starting at `pos`; bit pos lands in bit 0 of the result.
    std::uint64_t get_field(std::size_t pos, std::size_t width) const {
        if (width == 0) return 0;
        const std::size_t w = pos >> 6, off = pos & 63;
        std::uint64_t v = words_[w] >> off;
        if (off != 0 && off + width > 64 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - off);
        return width == 64 ? v : v & ((std::uint64_t{1} << width) - 1);
    }

    void set_field(std::size_t pos, std::size_t width, std::uint64_t value) {
        for (std::size_t k = 0; k < width; ++k) set(pos + k, (value >> k) & 1u);
    }

    /// Copies `other` into this string starting at `pos`.
    void splice(std::size_t pos, const Bits& other) {
        for (std::size_t k = 0; k < other.size(); ++k) set(pos + k, other[k]);
    }

    Bits slice(std::size_t pos, std::size_t width) const {
        Bits out(width);
        for (std::size_t k = 0; k < width; ++k) out.set(k, (*this)[pos + k]);
        return out;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    /// Low 64 bits as an integer (bit i -> 2^i).
    std::uint64_t to_uint() const { return words_.empty() ? 0 : words_[0]; }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) s[i] = '1';
        return s;
    }

    Bits& operator^=(const Bits& o) {
        if (o.size_ != size_) throw std::invalid_argument("Bits width mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

    friend bool operator==(const Bits&, const Bits&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace catsim
