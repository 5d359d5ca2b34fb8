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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/errors.hpp"
#include "catsim/gf/field.hpp"
#include "catsim/gf/pack.hpp"
#include "catsim/tree/extension.hpp"
#include "catsim/tree/instance.hpp"
#include "catsim/tree/meter.hpp"

namespace catsim::tree {

/// Catalytic storage: blocks x_1..x_d followed by the result block y, each pack_len elements.
struct Registers {
    std::vector<std::vector<Element>> blocks;

    static Registers zero(std::size_t d, std::size_t pack_len) {
        return {std::vector<std::vector<Element>>(d + 1, std::vector<Element>(pack_len))};
    }

    template <class Rng>
    static Registers random(std::size_t d, std::size_t pack_len, const Field& F, Rng& rng) {
        Registers r = zero(d, pack_len);
        std::uniform_int_distribution<std::uint64_t> dist(0, F.group_order());
        for (auto& blk : r.blocks)
            for (auto& e : blk) e = Element{static_cast<std::uint32_t>(dist(rng))};
        return r;
    }

    const std::vector<Element>& y() const { return blocks.back(); }

    friend bool operator==(const Registers&, const Registers&) = default;
};

struct CookMertzOptions {
    ExtensionMode mode = ExtensionMode::Packed;
    std::uint64_t budget = kDefaultDomainBudget;
    /// Starting register contents; all-zero when absent.
    std::optional<Registers> initial;
};

struct CookMertzResult {
    Bits value;
    Registers registers;
    SpaceMeter meter;
    FieldChoice field;
    std::uint64_t add_calls = 0;
    std::uint64_t extension_evaluations = 0;
    std::uint64_t apply_calls = 0;
};

/// Encodes a b-bit value as one register block: bits as 0/1 elements (multilinear) or as
/// elements of S (packed).
inline std::vector<Element> encode_value(const Bits& v, const gf::PackSet& S, const FieldChoice& fc,
                                         ExtensionMode mode) {
    if (mode == ExtensionMode::Packed) return S.pack(v, fc.pack_len);
    std::vector<Element> out(fc.pack_len);
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = Element{v[j] ? 1u : 0u};
    return out;
}

inline Bits decode_value(std::span<const Element> blk, std::size_t b, const gf::PackSet& S, ExtensionMode mode) {
    if (mode == ExtensionMode::Packed) return S.unpack(blk, b);
    Bits out(b);
    for (std::size_t j = 0; j < b; ++j) {
        if (blk[j].bits > 1) throw gf::CorruptionError("multilinear result register is not Boolean");
        out.set(j, blk[j].bits == 1);
    }
    return out;
}

namespace detail {

template <TreeInstance I>
class CookMertzSolver {
public:
    CookMertzSolver(const I& inst, const CookMertzOptions& opt)
        : inst_(inst),
          mode_(opt.mode),
          d_(inst.fan_in()),
          b_(inst.bit_length()),
          fc_(choose_field(d_, b_, opt.mode)),
          F_(fc_.q),
          S_(F_),
          inner_frame_(inner_frame_bits(fc_.m, d_)) {
        if (!inst_.is_leaf(inst_.root())) ext_.emplace(inst_, S_, fc_, mode_, opt.budget);
        regs_ = opt.initial ? *opt.initial : Registers::zero(d_, fc_.pack_len);
        if (regs_.blocks.size() != d_ + 1) throw std::invalid_argument("initial registers need d + 1 blocks");
        for (const auto& blk : regs_.blocks) {
            if (blk.size() != fc_.pack_len) throw std::invalid_argument("initial register block has the wrong length");
            for (auto e : blk)
                if (!F_.contains(e)) throw std::invalid_argument("initial register element is outside the field");
        }
        initial_y_ = regs_.y();
        omega_pow_.resize(fc_.m + 1);
        for (std::uint64_t i = 0; i <= fc_.m; ++i) omega_pow_[i] = F_.pow(F_.omega(), i);
    }

    CookMertzResult run() {
        add(inst_.root(), 0);
        CookMertzResult r;
        std::vector<Element> delta(fc_.pack_len);
        for (std::size_t j = 0; j < fc_.pack_len; ++j) delta[j] = Field::add(regs_.y()[j], initial_y_[j]);
        r.value = decode_value(delta, b_, S_, mode_);
        r.registers = regs_;
        r.meter = meter_;
        r.meter.catalytic_bits = 0;
        for (const auto& blk : regs_.blocks) r.meter.catalytic_bits += blk.size() * fc_.q;
        r.field = fc_;
        r.add_calls = add_calls_;
        r.extension_evaluations = ext_evals_;
        r.apply_calls = ext_ ? ext_->apply_calls() : 0;
        return r;
    }

private:
    using Node = typename I::node_type;

    void push(std::size_t bits, std::size_t depth) {
        frames_ += bits;
        ++stack_;
        const std::size_t addr = address_bits(depth, d_);
        if (frames_ + addr > meter_.local_bits_peak) {
            meter_.local_bits_peak = frames_ + addr;
            meter_.address_bits_peak = addr;
        }
        meter_.stack_depth_peak = std::max(meter_.stack_depth_peak, stack_);
    }
    void pop(std::size_t bits) {
        frames_ -= bits;
        --stack_;
    }

    std::vector<Element>& y() { return regs_.blocks[d_]; }

    void scale_last(Element w) {
        for (auto& e : regs_.blocks[d_]) e = F_.mul(e, w);
    }

    // (x_r, ..., x_d, y, x'_1, ..., x'_{r-1}) -> (x_{r+1}, ..., x_d, y, x'_1, ..., x'_{r-1}, x_r)
    void rotate_left() { std::rotate(regs_.blocks.begin(), regs_.blocks.begin() + 1, regs_.blocks.end()); }
    void rotate_right() { std::rotate(regs_.blocks.rbegin(), regs_.blocks.rbegin() + 1, regs_.blocks.rend()); }

    Node child(const Node& u, std::size_t r) const { return inst_.children(u)[r]; }

    /// Adds v_u into the last register block and leaves every other block as it found it.
    void add(const Node& u, std::size_t depth) {
        ++add_calls_;
        if (inst_.is_leaf(u)) {
            push(leaf_frame_bits(), depth);
            const auto v = encode_value(inst_.leaf_value(u), S_, fc_, mode_);
            for (std::size_t j = 0; j < fc_.pack_len; ++j) y()[j] = Field::add(y()[j], v[j]);
            pop(leaf_frame_bits());
            return;
        }
        if (inst_.degree(u) != d_) throw std::invalid_argument("Cook-Mertz needs every inner node padded to d children");
        push(inner_frame_, depth);
        for (std::uint64_t i = 1; i <= fc_.m; ++i) {
            const Element wi = omega_pow_[i];
            for (std::size_t r = 0; r < d_; ++r) {
                rotate_left();
                scale_last(wi);
                add(child(u, r), depth + 1);
            }
            // Storage is now (y, w^i x_1 + v_1, ..., w^i x_d + v_d).
            const std::span<const std::vector<Element>> point(regs_.blocks.data() + 1, d_);
            const auto vals = ext_->evaluate_all(u, point);
            ++ext_evals_;
            meter_.scratch_bits_peak = std::max(meter_.scratch_bits_peak, ext_->last_workspace_bits());
            for (std::size_t j = 0; j < fc_.pack_len; ++j) regs_.blocks[0][j] = Field::add(regs_.blocks[0][j], vals[j]);
            for (std::size_t r = d_; r-- > 0;) {
                // Adding v_r a second time cancels it in characteristic two.
                add(child(u, r), depth + 1);
                scale_last(omega_pow_[fc_.m - i]);
                rotate_right();
            }
        }
        pop(inner_frame_);
    }

    const I& inst_;
    ExtensionMode mode_;
    std::size_t d_, b_;
    FieldChoice fc_;
    Field F_;
    gf::PackSet S_;
    std::size_t inner_frame_;
    std::optional<ExtensionEvaluator<I>> ext_;
    Registers regs_;
    std::vector<Element> initial_y_;
    std::vector<Element> omega_pow_;

    SpaceMeter meter_;
    std::size_t frames_ = 0, stack_ = 0;
    std::uint64_t add_calls_ = 0, ext_evals_ = 0;
};

}  // namespace detail

/// Runs ADD at the root and returns y - y_initial decoded to b bits. The instance must have
/// exactly d children at every inner node (see pad_instance).
template <TreeInstance I>
CookMertzResult solve_cook_mertz(const I& inst, const CookMertzOptions& opt = {}) {
    return detail::CookMertzSolver<I>(inst, opt).run();
}

/// Space profile of solve_cook_mertz without doing its arithmetic. Register widths and frame
/// sizes do not depend on data, so walking the tree once in ADD's call order and sizing the
/// extension workspace reproduces the solver's meter.
template <TreeInstance I>
SpaceMeter probe_cook_mertz_space(const I& inst, ExtensionMode mode) {
    const std::size_t d = inst.fan_in(), b = inst.bit_length();
    const FieldChoice fc = choose_field(d, b, mode);
    const std::size_t inner = inner_frame_bits(fc.m, d);
    SpaceMeter meter;
    meter.catalytic_bits = (d + 1) * fc.pack_len * fc.q;
    std::size_t frames = 0, stack = 0;
    bool saw_inner = false;
    auto push = [&](std::size_t bits, std::size_t depth) {
        frames += bits;
        ++stack;
        const std::size_t addr = address_bits(depth, d);
        if (frames + addr > meter.local_bits_peak) {
            meter.local_bits_peak = frames + addr;
            meter.address_bits_peak = addr;
        }
        meter.stack_depth_peak = std::max(meter.stack_depth_peak, stack);
    };
    auto walk = [&](auto&& self, const typename I::node_type& u, std::size_t depth) -> void {
        if (inst.is_leaf(u)) {
            push(leaf_frame_bits(), depth);
            frames -= leaf_frame_bits();
            --stack;
            return;
        }
        saw_inner = true;
        push(inner, depth);
        for (const auto& c : inst.children(u)) self(self, c, depth + 1);
        frames -= inner;
        --stack;
    };
    walk(walk, inst.root(), 0);
    if (saw_inner) meter.scratch_bits_peak = extension_workspace_bits(d, b, fc, mode);
    return meter;
}

}  // namespace catsim::tree
