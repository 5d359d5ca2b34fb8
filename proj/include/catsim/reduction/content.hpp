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
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/graph/encoding.hpp"
#include "catsim/tm/machine.hpp"

namespace catsim::reduction {

using graph::GraphEncoding;
using graph::GraphNode;

/// Decoded content string.
struct Content {
    bool fail = false;
    std::size_t tag_h = 1;  // 1-based tape
    std::size_t tag_i = 0;  // time block, 0 for sources
    tm::State state = 0;
    std::uint64_t pos = 0;
    std::array<bool, 2> present{};
    std::array<std::vector<tm::Symbol>, 2> slot;
};

/// Bit layout, low to high:
///   fail | tag_h | tag_i | state | pos | present0 | slot0 | present1 | slot1
/// FAIL is the fail bit followed by zeros.
class ContentLayout {
public:
    ContentLayout(std::size_t p, std::size_t B, std::size_t c, std::size_t symbols, std::size_t states)
        : p_(p), B_(B), c_(c), nsym_(symbols), nstate_(states) {
        tag_h_ = bits_for(p);
        tag_i_ = bits_for(B + 1);
        state_ = bits_for(states);
        // The head can sit on cell c * B after the last step.
        pos_ = bits_for(c * B + 1);
        sym_ = std::max<std::size_t>(1, bits_for(symbols));
        off_tag_h_ = 1;
        off_tag_i_ = off_tag_h_ + tag_h_;
        off_state_ = off_tag_i_ + tag_i_;
        off_pos_ = off_state_ + state_;
        off_slot_[0] = off_pos_ + pos_;
        off_slot_[1] = off_slot_[0] + 1 + c * sym_;
        width_ = off_slot_[1] + 1 + c * sym_;
    }

    std::size_t width() const { return width_; }
    std::size_t block_length() const { return c_; }
    std::size_t symbol_bits() const { return sym_; }
    std::size_t position_bits() const { return pos_; }

    Bits fail() const {
        Bits out(width_);
        out.set(0, true);
        return out;
    }
    static bool is_fail(const Bits& v) { return v.size() > 0 && v[0]; }

    Bits encode(const Content& ct) const {
        if (ct.fail) return fail();
        Bits out(width_);
        out.set_field(off_tag_h_, tag_h_, ct.tag_h - 1);
        out.set_field(off_tag_i_, tag_i_, ct.tag_i);
        out.set_field(off_state_, state_, ct.state);
        out.set_field(off_pos_, pos_, ct.pos);
        for (std::size_t s = 0; s < 2; ++s) {
            if (!ct.present[s]) continue;
            out.set(off_slot_[s], true);
            for (std::size_t k = 0; k < c_; ++k) out.set_field(off_slot_[s] + 1 + k * sym_, sym_, ct.slot[s][k]);
        }
        return out;
    }

    /// nullopt for strings that no content could have produced.
    std::optional<Content> decode(const Bits& v) const {
        if (v.size() != width_) return std::nullopt;
        Content ct;
        if (v[0]) {
            ct.fail = true;
            return ct;
        }
        ct.tag_h = v.get_field(off_tag_h_, tag_h_) + 1;
        ct.tag_i = v.get_field(off_tag_i_, tag_i_);
        ct.state = static_cast<tm::State>(v.get_field(off_state_, state_));
        ct.pos = v.get_field(off_pos_, pos_);
        if (ct.tag_h > p_ || ct.tag_i > B_ || ct.state >= nstate_) return std::nullopt;
        for (std::size_t s = 0; s < 2; ++s) {
            ct.present[s] = v[off_slot_[s]];
            ct.slot[s].assign(c_, tm::kBlank);
            for (std::size_t k = 0; k < c_; ++k) {
                const auto sym = v.get_field(off_slot_[s] + 1 + k * sym_, sym_);
                if (sym >= nsym_ || (!ct.present[s] && sym != 0)) return std::nullopt;
                ct.slot[s][k] = static_cast<tm::Symbol>(sym);
            }
        }
        return ct;
    }

private:
    std::size_t p_, B_, c_, nsym_, nstate_;
    std::size_t tag_h_, tag_i_, state_, pos_, sym_;
    std::size_t off_tag_h_, off_tag_i_, off_state_, off_pos_;
    std::array<std::size_t, 2> off_slot_{};
    std::size_t width_;
};

/// Everything a reduction instance needs besides the candidate encoding.
struct ReductionParams {
    const tm::Machine* machine = nullptr;
    std::vector<tm::Symbol> input;
    std::size_t c = 0;
    std::size_t B = 0;
    std::uint64_t t_guess = 0;
    ContentLayout layout;

    ReductionParams(const tm::Machine& m, std::string_view in, std::size_t c_, std::size_t B_, std::uint64_t t)
        : machine(&m),
          input(m.encode_input(in)),
          c(c_),
          B(B_),
          t_guess(t),
          layout(m.tapes(), B_, c_, m.num_symbols(), m.num_states()) {
        if (c_ < 1 || B_ < 1) throw std::invalid_argument("block length and block count must be positive");
    }

    std::size_t tapes() const { return machine->tapes(); }
};

/// Initial contents of block v of tape h: the matching input segment on tape 1, blanks
/// elsewhere. Block 1 also carries the start state.
inline Content leaf_fields(const ReductionParams& rp, std::size_t h, std::int64_t v) {
    if (v < 1) throw std::invalid_argument("tape blocks are numbered from 1");
    Content ct;
    ct.tag_h = h;
    ct.tag_i = 0;
    ct.state = v == 1 ? rp.machine->start() : 0;
    ct.pos = static_cast<std::uint64_t>(v - 1) * rp.c;
    ct.present = {true, false};
    ct.slot[0].assign(rp.c, tm::kBlank);
    ct.slot[1].assign(rp.c, tm::kBlank);
    if (h == 1) {
        for (std::size_t k = 0; k < rp.c; ++k) {
            const std::uint64_t cell = ct.pos + k;
            if (cell < rp.input.size()) ct.slot[0][k] = rp.input[cell];
        }
    }
    return ct;
}

inline Bits leaf_content(const ReductionParams& rp, std::size_t h, std::int64_t v) {
    return rp.layout.encode(leaf_fields(rp, h, v));
}

namespace detail {

struct TapeWindow {
    graph::ActiveSet act;
    std::array<std::vector<tm::Symbol>, 2> cells;
    std::int64_t head = 0;
    std::array<bool, 2> touched{};

    std::optional<std::size_t> slot_for_cell(std::int64_t cell, std::size_t c) const {
        return act.slot_of(cell / static_cast<std::int64_t>(c) + 1);
    }
};

}  // namespace detail

/// Simulates time block i from the provider contents and emits content(h, i), or FAIL if the
/// inputs or the labels of time block i are inconsistent with what the machine does.
/// Inputs follow the slot order of graph::predecessors; entries past the slot count are ignored.
inline Bits block_step(const ReductionParams& rp, const GraphEncoding& enc, std::size_t h, std::size_t i,
                       std::span<const Bits> inputs) {
    const ContentLayout& lay = rp.layout;
    const std::size_t p = rp.tapes(), c = rp.c;
    const auto ci = static_cast<std::int64_t>(c);
    const auto preds = graph::predecessors(enc, GraphNode::inner(h, i));
    if (inputs.size() < preds.size()) return lay.fail();

    std::vector<Content> in;
    in.reserve(preds.size());
    for (std::size_t s = 0; s < preds.size(); ++s) {
        auto ct = lay.decode(inputs[s]);
        if (!ct || ct->fail) return lay.fail();
        if (ct->tag_h != preds[s].h || ct->tag_i != preds[s].i) return lay.fail();
        in.push_back(std::move(*ct));
    }

    // Rebuild each tape's active blocks from the content providers.
    std::vector<detail::TapeWindow> tape(p);
    std::size_t s = 0;
    for (std::size_t hp = 1; hp <= p; ++hp) {
        auto& w = tape[hp - 1];
        try {
            w.act = graph::active_blocks(enc, hp, i);
        } catch (const graph::InvalidEncoding&) {
            return lay.fail();
        }
        for (std::size_t k = 0; k < w.act.size; ++k, ++s) {
            const GraphNode& src = preds[s];
            const Content& ct = in[s];
            std::size_t from = 0;
            if (!src.is_source()) {
                // Which slot of the provider held this block.
                const auto there = graph::active_blocks(enc, hp, src.i).slot_of(w.act[k]);
                if (!there) return lay.fail();
                from = *there;
            }
            if (!ct.present[from]) return lay.fail();
            w.cells[k] = ct.slot[from];
        }
    }

    // State and head positions from the state providers.
    const tm::State state0 = in[s].state;
    for (std::size_t hp = 1; hp <= p; ++hp, ++s) {
        const Content& ct = in[s];
        if (ct.state != state0) return lay.fail();
        auto& w = tape[hp - 1];
        w.head = static_cast<std::int64_t>(ct.pos);
        if (w.head / ci + 1 != w.act[0]) return lay.fail();
        w.touched[0] = true;
    }

    const tm::Machine& M = *rp.machine;
    tm::State q = state0;
    std::vector<tm::Symbol> read(p);
    for (std::size_t step = 0; step < c; ++step) {
        for (std::size_t k = 0; k < p; ++k) {
            const auto& w = tape[k];
            const auto sl = *w.slot_for_cell(w.head, c);
            read[k] = w.cells[sl][static_cast<std::size_t>(w.head % ci)];
        }
        const tm::Transition& tr = M.delta(q, read);
        for (std::size_t k = 0; k < p; ++k) {
            auto& w = tape[k];
            const auto sl = *w.slot_for_cell(w.head, c);
            w.cells[sl][static_cast<std::size_t>(w.head % ci)] = tr.write[k];
            w.head = std::max<std::int64_t>(0, w.head + static_cast<int>(tr.move[k]));
            const auto now = w.slot_for_cell(w.head, c);
            if (!now) return lay.fail();
            w.touched[*now] = true;
        }
        q = tr.next;
    }

    for (std::size_t hp = 1; hp <= p; ++hp) {
        const auto& w = tape[hp - 1];
        if (w.head / ci + 1 != w.act[0] + enc.move(hp, i)) return lay.fail();
        for (std::size_t k = 0; k < w.act.size; ++k)
            if (!w.touched[k]) return lay.fail();
    }

    const auto& w = tape[h - 1];
    Content out;
    out.tag_h = h;
    out.tag_i = i;
    out.state = q;
    out.pos = static_cast<std::uint64_t>(w.head);
    if (out.pos >= (std::uint64_t{1} << lay.position_bits())) return lay.fail();
    for (std::size_t k = 0; k < 2; ++k) {
        out.present[k] = k < w.act.size;
        out.slot[k] = out.present[k] ? w.cells[k] : std::vector<tm::Symbol>(c, tm::kBlank);
    }
    return lay.encode(out);
}

}  // namespace catsim::reduction
