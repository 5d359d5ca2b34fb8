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

#include "catsim/bits.hpp"
#include "catsim/gf/field.hpp"

namespace catsim::tree {

enum class ExtensionMode { Multilinear, Packed };

inline const char* to_string(ExtensionMode m) { return m == ExtensionMode::Multilinear ? "multilinear" : "packed"; }

inline ExtensionMode parse_mode(const std::string& s) {
    if (s == "multilinear") return ExtensionMode::Multilinear;
    if (s == "packed") return ExtensionMode::Packed;
    throw std::invalid_argument("unknown extension mode '" + s + "'");
}

/// Field and register geometry for one solve.
struct FieldChoice {
    unsigned q = 0;
    std::uint64_t m = 0;        // 2^q - 1, the number of interpolation rounds
    std::size_t pack_len = 0;   // field elements per register block
    std::size_t degree = 0;     // total degree of the extension polynomials
};

/// Multilinear: least even q with 2^q >= d*b^2 and d*b < 2^q - 1 (elements are single bits).
/// Packed: 2^q = (d'*b')^2 for d, b rounded up to powers of two; S carries q/2 bits per element.
inline FieldChoice choose_field(std::size_t d, std::size_t b, ExtensionMode mode) {
    if (d == 0 || b == 0) throw std::invalid_argument("fan-in and bit length must be positive");
    FieldChoice fc;
    if (mode == ExtensionMode::Multilinear) {
        unsigned q = 2;
        while (q <= gf::Field::kMaxDegree &&
               ((std::uint64_t{1} << q) < d * b * b || (std::uint64_t{1} << q) - 1 <= d * b))
            q += 2;
        fc.q = q;
        fc.pack_len = b;
        fc.degree = d * b;
    } else {
        const auto dp = std::bit_ceil(d), bp = std::bit_ceil(b);
        unsigned q = 2 * static_cast<unsigned>(std::countr_zero(dp * bp));
        if (q < 2) q = 2;
        const std::size_t half = q / 2;
        fc.q = q;
        fc.pack_len = (b + half - 1) / half;
        fc.degree = d * ((std::size_t{1} << half) - 1) * fc.pack_len;
    }
    if (fc.q > gf::Field::kMaxDegree)
        throw std::domain_error("fan-in " + std::to_string(d) + " and width " + std::to_string(b) +
                                " need a field beyond GF(2^32)");
    fc.m = (std::uint64_t{1} << fc.q) - 1;
    if (fc.degree >= fc.m) throw std::logic_error("extension degree does not fit below the group order");
    return fc;
}

/// Space used by one solve, in bits.
struct SpaceMeter {
    std::size_t catalytic_bits = 0;     // the d+1 register blocks
    std::size_t local_bits_peak = 0;    // recursion frames plus current node address
    std::size_t scratch_bits_peak = 0;  // extension-evaluation workspace
    std::size_t stack_depth_peak = 0;   // frames on the stack at the peak depth
    std::size_t address_bits_peak = 0;

    std::size_t total() const { return catalytic_bits + local_bits_peak + scratch_bits_peak; }
};

/// Program counter bits kept per frame (which of the two call passes is running).
inline constexpr std::size_t kPcBits = 2;

/// A frame of an inner node stores i in [m], r in [d] and the program counter.
inline std::size_t inner_frame_bits(std::uint64_t m, std::size_t d) { return ceil_log2(m) + ceil_log2(d) + kPcBits; }
inline std::size_t leaf_frame_bits() { return kPcBits; }
inline std::size_t address_bits(std::size_t depth, std::size_t d) { return depth * ceil_log2(d); }

/// Workspace of one extension evaluation over n = d * pack_len coordinates: the domain point being
/// visited, one partial product per coordinate, the vanishing-polynomial values (packed mode),
/// one accumulator per output coordinate and the b-bit output of the node function.
inline std::size_t extension_workspace_bits(std::size_t d, std::size_t b, const FieldChoice& fc, ExtensionMode mode) {
    const std::size_t n = d * fc.pack_len;
    const std::size_t digit_bits = mode == ExtensionMode::Multilinear ? 1 : fc.q / 2;
    const std::size_t per_coord = mode == ExtensionMode::Multilinear ? fc.q : 2 * fc.q;
    return n * digit_bits + n * per_coord + fc.pack_len * fc.q + b;
}

struct SpacePrediction {
    FieldChoice field;
    std::size_t catalytic_bits = 0;
    /// Peak local bits when the longest path has exactly h nodes.
    std::size_t local_bits_peak = 0;
    /// h * (ceil(log2 m) + ceil(log2 d) + 8) plus address bits.
    std::size_t local_bits_bound = 0;
    std::size_t address_bits = 0;
    std::size_t scratch_bits = 0;
};

inline SpacePrediction meter_closed_form(std::size_t d, std::size_t b, std::size_t h, ExtensionMode mode) {
    SpacePrediction p;
    p.field = choose_field(d, b, mode);
    p.catalytic_bits = (d + 1) * p.field.pack_len * p.field.q;
    const std::size_t inner_levels = h > 0 ? h - 1 : 0;
    p.address_bits = address_bits(inner_levels, d);
    p.local_bits_peak = inner_levels * inner_frame_bits(p.field.m, d) + leaf_frame_bits() + p.address_bits;
    p.local_bits_bound = h * (ceil_log2(p.field.m) + ceil_log2(d) + 8) + p.address_bits;
    p.scratch_bits = inner_levels > 0 ? extension_workspace_bits(d, b, p.field, mode) : 0;
    return p;
}

}  // namespace catsim::tree
