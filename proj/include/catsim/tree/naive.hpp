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
#include <string>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/errors.hpp"
#include "catsim/tree/instance.hpp"
#include "catsim/tree/meter.hpp"

namespace catsim::tree {

struct NaiveResult {
    Bits value;
    /// Peak of child values held on the stack, child counters and the current node address.
    std::size_t space_bits_peak = 0;
    std::size_t depth_peak = 0;
    std::uint64_t apply_calls = 0;
};

namespace detail {

template <TreeInstance I>
class NaiveSolver {
public:
    explicit NaiveSolver(const I& inst) : inst_(inst), d_(inst.fan_in()), b_(inst.bit_length()) {}

    NaiveResult run() {
        NaiveResult r;
        r.value = eval(inst_.root(), 1);
        r.space_bits_peak = peak_;
        r.depth_peak = depth_peak_;
        r.apply_calls = apply_calls_;
        return r;
    }

private:
    void touch(std::size_t depth) {
        peak_ = std::max(peak_, held_ + address_bits(depth - 1, d_));
        depth_peak_ = std::max(depth_peak_, depth);
    }

    Bits eval(const typename I::node_type& u, std::size_t depth) {
        if (depth > inst_.height())
            throw MalformedInstance("path longer than the declared height " + std::to_string(inst_.height()) +
                                    " (cycle or bad height)");
        if (inst_.is_leaf(u)) {
            Bits v = inst_.leaf_value(u);
            if (v.size() != b_) throw MalformedInstance("leaf value has the wrong width");
            held_ += b_;
            touch(depth);
            held_ -= b_;
            return v;
        }
        const auto kids = inst_.children(u);
        if (kids.empty()) throw MalformedInstance("inner node without children");
        const std::size_t frame_counter = ceil_log2(d_);
        held_ += frame_counter;
        std::vector<Bits> vals;
        vals.reserve(kids.size());
        for (const auto& c : kids) {
            touch(depth);
            vals.push_back(eval(c, depth + 1));
            held_ += b_;
        }
        touch(depth);
        Bits out = inst_.apply(u, vals);
        ++apply_calls_;
        if (out.size() != b_) throw MalformedInstance("node function returned the wrong width");
        held_ -= kids.size() * b_ + frame_counter;
        return out;
    }

    const I& inst_;
    std::size_t d_, b_;
    std::size_t held_ = 0, peak_ = 0, depth_peak_ = 0;
    std::uint64_t apply_calls_ = 0;
};

}  // namespace detail

/// Postorder evaluation that keeps every child value of every open frame.
template <TreeInstance I>
NaiveResult solve_naive(const I& inst) {
    return detail::NaiveSolver<I>(inst).run();
}

}  // namespace catsim::tree
