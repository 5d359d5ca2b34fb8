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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/gf/field.hpp"

namespace catsim::gf {

class CorruptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The subset S of GF(2^q) whose upper q/2 coefficients are zero, identified with {0,1}^(q/2) in
/// integer order. S is an additive subgroup, which makes the Lagrange weights over S uniform.
class PackSet {
public:
    explicit PackSet(const Field& f) : field_(&f), half_(f.degree() / 2) {
        // prod_{s' != s} (s + s') ranges over S \ {0} for every s.
        Element prod = Field::one();
        for (std::uint32_t u = 1; u < size(); ++u) prod = f.mul(prod, Element{u});
        weight_ = f.inv(prod);
    }

    const Field& field() const { return *field_; }
    /// Bits carried by one element of S.
    unsigned word_bits() const { return half_; }
    std::uint32_t size() const { return std::uint32_t{1} << half_; }

    bool contains(Element e) const { return e.bits < size(); }
    Element element(std::uint32_t word) const { return Element{word}; }
    std::uint32_t word(Element e) const {
        if (!contains(e)) throw CorruptionError("field element lies outside the pack set");
        return e.bits;
    }

    /// Number of S-elements needed for a b-bit value.
    std::size_t pack_len(std::size_t b) const { return (b + half_ - 1) / half_; }

    std::vector<Element> pack(const Bits& bits, std::size_t len) const {
        if (bits.size() > len * half_) throw std::invalid_argument("value does not fit in pack_len elements");
        std::vector<Element> out(len);
        for (std::size_t w = 0; w < len; ++w) {
            const std::size_t pos = w * half_;
            if (pos >= bits.size()) break;
            const std::size_t width = std::min<std::size_t>(half_, bits.size() - pos);
            out[w] = Element{static_cast<std::uint32_t>(bits.get_field(pos, width))};
        }
        return out;
    }

    Bits unpack(std::span<const Element> elems, std::size_t b) const {
        if (b > elems.size() * half_) throw std::invalid_argument("too few elements to unpack");
        Bits out(b);
        for (std::size_t w = 0; w < elems.size(); ++w) {
            const std::uint32_t v = word(elems[w]);
            const std::size_t pos = w * half_;
            for (unsigned k = 0; k < half_; ++k) {
                if (!((v >> k) & 1u)) continue;
                if (pos + k >= b) throw CorruptionError("nonzero padding bits in packed value");
                out.set(pos + k, true);
            }
        }
        return out;
    }

    /// prod_{s in S} (z - s).
    Element vanishing(Element z) const {
        Element r = Field::one();
        for (std::uint32_t s = 0; s < size(); ++s) r = field_->mul(r, Field::add(z, Element{s}));
        return r;
    }

    /// Lagrange basis polynomial of s over S, evaluated at z; `vanishing_z` must be vanishing(z).
    Element lagrange(Element s, Element z, Element vanishing_z) const {
        if (contains(z)) return s == z ? Field::one() : Field::zero();
        return field_->mul(field_->mul(vanishing_z, weight_), field_->inv(Field::add(z, s)));
    }

    Element lagrange(Element s, Element z) const { return lagrange(s, z, vanishing(z)); }

private:
    const Field* field_;
    unsigned half_;
    Element weight_;
};

}  // namespace catsim::gf
