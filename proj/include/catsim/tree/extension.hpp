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
#include <string>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/errors.hpp"
#include "catsim/gf/field.hpp"
#include "catsim/gf/pack.hpp"
#include "catsim/tree/instance.hpp"
#include "catsim/tree/meter.hpp"

namespace catsim::tree {

using gf::Element;
using gf::Field;

inline constexpr std::uint64_t kDefaultDomainBudget = std::uint64_t{1} << 24;

/// Indicator polynomial of the domain point `a`, evaluated at `point`.
///
/// Multilinear: a is Boolean and the factor per coordinate is x (a_k = 1) or 1 + x (a_k = 0).
/// Packed: a lies in S^n and the factor is the Lagrange basis polynomial of a_k over S.
inline Element chi_eval(std::span<const Element> point, std::span<const Element> a, const gf::PackSet& S,
                        ExtensionMode mode) {
    if (point.size() != a.size()) throw std::invalid_argument("chi_eval: point and domain point differ in length");
    const Field& F = S.field();
    Element r = Field::one();
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (mode == ExtensionMode::Multilinear) {
            if (a[k].bits > 1) throw std::domain_error("chi_eval: multilinear domain point is not Boolean");
            r = F.mul(r, a[k].bits ? point[k] : Field::add(Field::one(), point[k]));
        } else {
            if (!S.contains(a[k])) throw std::domain_error("chi_eval: packed domain point lies outside S");
            r = F.mul(r, S.lagrange(a[k], point[k]));
        }
    }
    return r;
}

/// Evaluates the low-degree extensions of a node function at a field point by summing over its
/// whole domain, one apply() per domain point with a nonzero indicator value.
///
/// The point is given as d register blocks of pack_len elements (child-major). In packed mode the
/// function is extended by zero to inputs whose padding bits are set, so those points are skipped.
template <TreeInstance I>
class ExtensionEvaluator {
public:
    ExtensionEvaluator(const I& inst, const gf::PackSet& S, const FieldChoice& fc, ExtensionMode mode,
                       std::uint64_t budget = kDefaultDomainBudget)
        : inst_(inst), S_(S), F_(S.field()), fc_(fc), mode_(mode), d_(inst.fan_in()), b_(inst.bit_length()) {
        const std::size_t domain_bits = d_ * b_;
        if (domain_bits >= 63 || (std::uint64_t{1} << domain_bits) > budget)
            throw BudgetError("extension domain of 2^" + std::to_string(domain_bits) +
                              " points exceeds the budget of " + std::to_string(budget));
        n_ = d_ * fc_.pack_len;
        inputs_.assign(d_, Bits(b_));
        weights_.assign(n_ + 1, Field::zero());
        acc_.assign(fc_.pack_len, Field::zero());
        if (mode_ == ExtensionMode::Packed) vanish_.assign(n_, Field::zero());
    }

    /// Values of all pack_len output coordinates at the point.
    std::vector<Element> evaluate_all(const typename I::node_type& u, std::span<const std::vector<Element>> blocks) {
        if (inst_.degree(u) != d_) throw std::invalid_argument("extension evaluation needs exactly d children");
        if (blocks.size() != d_) throw std::invalid_argument("point must have d register blocks");
        for (const auto& blk : blocks)
            if (blk.size() != fc_.pack_len) throw std::invalid_argument("register block has the wrong length");
        blocks_ = blocks;
        node_ = &u;
        for (auto& in : inputs_) in = Bits(b_);
        std::fill(acc_.begin(), acc_.end(), Field::zero());
        if (mode_ == ExtensionMode::Packed)
            for (std::size_t k = 0; k < n_; ++k) vanish_[k] = S_.vanishing(coord(k));
        weights_[0] = Field::one();
        fold(0);
        // weights_[0] is the constant 1 and is not stored state.
        last_workspace_bits_ = n_ * (mode_ == ExtensionMode::Multilinear ? 1 : S_.word_bits()) +
                               (weights_.size() - 1) * fc_.q + vanish_.size() * fc_.q + acc_.size() * fc_.q + b_;
        return acc_;
    }

    Element evaluate(const typename I::node_type& u, std::size_t j, std::span<const std::vector<Element>> blocks) {
        if (j >= fc_.pack_len) throw std::out_of_range("output coordinate out of range");
        return evaluate_all(u, blocks)[j];
    }

    std::uint64_t apply_calls() const { return apply_calls_; }
    /// Bits held by the most recent evaluation (counter, partial products, accumulators, output).
    std::size_t last_workspace_bits() const { return last_workspace_bits_; }

private:
    Element coord(std::size_t k) const { return blocks_[k / fc_.pack_len][k % fc_.pack_len]; }

    void fold(std::size_t k) {
        if (k == n_) {
            const Bits out = inst_.apply(*node_, inputs_);
            ++apply_calls_;
            const Element w = weights_[n_];
            if (mode_ == ExtensionMode::Multilinear) {
                for (std::size_t j = 0; j < b_; ++j)
                    if (out[j]) acc_[j] = Field::add(acc_[j], w);
            } else {
                const std::size_t half = S_.word_bits();
                for (std::size_t j = 0; j < fc_.pack_len; ++j) {
                    const std::size_t pos = j * half;
                    const auto word = static_cast<std::uint32_t>(out.get_field(pos, std::min(half, b_ - pos)));
                    if (word) acc_[j] = Field::add(acc_[j], F_.mul(w, Element{word}));
                }
            }
            return;
        }
        const std::size_t child = k / fc_.pack_len, slot = k % fc_.pack_len;
        const Element z = coord(k);
        Bits& in = inputs_[child];
        if (mode_ == ExtensionMode::Multilinear) {
            for (std::uint32_t bit = 0; bit < 2; ++bit) {
                const Element factor = bit ? z : Field::add(Field::one(), z);
                if (factor == Field::zero()) continue;
                weights_[k + 1] = F_.mul(weights_[k], factor);
                in.set(slot, bit);
                fold(k + 1);
            }
            in.set(slot, false);
        } else {
            const std::size_t half = S_.word_bits(), pos = slot * half;
            const std::size_t width = pos < b_ ? std::min(half, b_ - pos) : 0;
            for (std::uint32_t s = 0; s < (std::uint32_t{1} << width); ++s) {
                const Element factor = S_.lagrange(Element{s}, z, vanish_[k]);
                if (factor == Field::zero()) continue;
                weights_[k + 1] = F_.mul(weights_[k], factor);
                in.set_field(pos, width, s);
                fold(k + 1);
            }
            in.set_field(pos, width, 0);
        }
    }

    const I& inst_;
    const gf::PackSet& S_;
    const Field& F_;
    FieldChoice fc_;
    ExtensionMode mode_;
    std::size_t d_, b_, n_ = 0;

    std::span<const std::vector<Element>> blocks_;
    const typename I::node_type* node_ = nullptr;
    std::vector<Bits> inputs_;
    std::vector<Element> weights_;
    std::vector<Element> vanish_;
    std::vector<Element> acc_;
    std::uint64_t apply_calls_ = 0;
    std::size_t last_workspace_bits_ = 0;
};

}  // namespace catsim::tree
