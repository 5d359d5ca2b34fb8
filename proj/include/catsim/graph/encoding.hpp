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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <stdexcept>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/errors.hpp"
#include "catsim/tm/simulator.hpp"

namespace catsim::graph {

/// Raised by decoding operations on encodings whose derived block indices drop below 1.
class InvalidEncoding : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The five consistent (m, L) labels, numbered as serialized.
///   0: m = 0, L = {}     1: m = 0, L = {+1}    2: m = +1, L = {+1}
///   3: m = 0, L = {-1}   4: m = -1, L = {-1}
inline constexpr std::uint8_t kLabelCount = 5;

inline constexpr int label_move(std::uint8_t code) {
    constexpr int mv[kLabelCount] = {0, 0, 1, 0, -1};
    return mv[code];
}
inline constexpr int label_extra(std::uint8_t code) {
    constexpr int ex[kLabelCount] = {0, 1, 1, -1, -1};
    return ex[code];
}
inline std::uint8_t label_code(int move, int extra) {
    for (std::uint8_t k = 0; k < kLabelCount; ++k)
        if (label_move(k) == move && label_extra(k) == extra) return k;
    throw std::invalid_argument("inconsistent label: a head that changes block must list that block as active");
}

/// Movement labels m and extra-active offsets L for p tapes over B time blocks of length c.
/// Tapes and time blocks are 1-based.
struct GraphEncoding {
    std::size_t p = 0, B = 0, c = 0;
    std::vector<std::uint8_t> labels;  // labels[(h-1)*B + (i-1)]

    GraphEncoding() = default;
    GraphEncoding(std::size_t p_, std::size_t B_, std::size_t c_) : p(p_), B(B_), c(c_), labels(p_ * B_, 0) {}

    std::uint8_t code(std::size_t h, std::size_t i) const { return labels.at((h - 1) * B + (i - 1)); }
    void set_code(std::size_t h, std::size_t i, std::uint8_t k) {
        if (k >= kLabelCount) throw std::invalid_argument("label code out of range");
        labels.at((h - 1) * B + (i - 1)) = k;
    }
    int move(std::size_t h, std::size_t i) const { return label_move(code(h, i)); }
    int extra(std::size_t h, std::size_t i) const { return label_extra(code(h, i)); }

    friend bool operator==(const GraphEncoding&, const GraphEncoding&) = default;
};

/// Tape block under head h at the start of time block i; i = B + 1 gives the final block.
inline std::int64_t block_index(const GraphEncoding& enc, std::size_t h, std::size_t i) {
    std::int64_t v = 1;
    for (std::size_t j = 1; j < i; ++j) v += enc.move(h, j);
    return v;
}

/// Up to two blocks: the starting block, then the extra one if any.
struct ActiveSet {
    std::array<std::int64_t, 2> block{};
    std::size_t size = 0;

    bool contains(std::int64_t v) const { return (size > 0 && block[0] == v) || (size > 1 && block[1] == v); }
    std::int64_t operator[](std::size_t k) const { return block[k]; }
    std::optional<std::size_t> slot_of(std::int64_t v) const {
        for (std::size_t k = 0; k < size; ++k)
            if (block[k] == v) return k;
        return std::nullopt;
    }
};

inline ActiveSet active_from(std::int64_t start, int extra) {
    ActiveSet a;
    a.block[a.size++] = start;
    if (extra != 0) a.block[a.size++] = start + extra;
    return a;
}

inline ActiveSet active_blocks(const GraphEncoding& enc, std::size_t h, std::size_t i) {
    const auto a = active_from(block_index(enc, h, i), enc.extra(h, i));
    for (std::size_t k = 0; k < a.size; ++k)
        if (a[k] < 1) throw InvalidEncoding("active block index below 1");
    return a;
}

inline bool is_valid(const GraphEncoding& enc) {
    if (enc.labels.size() != enc.p * enc.B) return false;
    for (std::size_t h = 1; h <= enc.p; ++h) {
        std::int64_t v = 1;
        for (std::size_t i = 1; i <= enc.B; ++i) {
            // m != 0 implies L = {m}, so checking start + L also covers the next start.
            if (v + enc.extra(h, i) < 1) return false;
            v += enc.move(h, i);
        }
    }
    return true;
}

/// Inner node (h, i) with i >= 1, or source (h, 0, v) holding the initial contents of block v.
struct GraphNode {
    std::uint32_t h = 1;
    std::uint32_t i = 0;
    std::int64_t v = 0;

    static GraphNode inner(std::size_t h, std::size_t i) {
        return {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(i), 0};
    }
    static GraphNode source(std::size_t h, std::int64_t v) { return {static_cast<std::uint32_t>(h), 0, v}; }

    bool is_source() const { return i == 0; }

    friend auto operator<=>(const GraphNode&, const GraphNode&) = default;
};

/// Providers of (h, i) in slot order: for each tape h', one node per active block of h' (start
/// block first); then for each tape h' the node carrying state and head position. The list does
/// not depend on h. Repeated nodes keep their slots.
inline std::vector<GraphNode> predecessors(const GraphEncoding& enc, const GraphNode& v) {
    if (v.is_source()) return {};
    const std::size_t i = v.i;
    std::vector<GraphNode> out;
    out.reserve(3 * enc.p);
    for (std::size_t hp = 1; hp <= enc.p; ++hp) {
        // Walk forward once, remembering the last time block each candidate block was active.
        std::int64_t start = 1;
        std::vector<ActiveSet> hist;
        hist.reserve(i);
        for (std::size_t k = 1; k <= i; ++k) {
            hist.push_back(active_from(start, enc.extra(hp, k)));
            start += enc.move(hp, k);
        }
        const ActiveSet& now = hist.back();
        for (std::size_t s = 0; s < now.size; ++s) {
            const std::int64_t T = now[s];
            std::size_t last = 0;
            for (std::size_t k = i - 1; k >= 1; --k)
                if (hist[k - 1].contains(T)) {
                    last = k;
                    break;
                }
            out.push_back(last ? GraphNode::inner(hp, last) : GraphNode::source(hp, T));
        }
    }
    for (std::size_t hp = 1; hp <= enc.p; ++hp)
        out.push_back(i > 1 ? GraphNode::inner(hp, i - 1) : GraphNode::source(hp, 1));
    return out;
}

inline bool edge(const GraphEncoding& enc, const GraphNode& u, const GraphNode& v) {
    if (v.is_source()) return false;
    for (const auto& w : predecessors(enc, v))
        if (w == u) return true;
    return false;
}

/// Number of valid encodings for p tapes and B blocks; tapes are independent, so this is the
/// single-tape count raised to the p-th power. Saturates at UINT64_MAX.
inline std::uint64_t count_valid_encodings(std::size_t p, std::size_t B) {
    if (p == 0) return 0;
    // ways[v]: label prefixes leaving the head in block v + 1.
    std::vector<std::uint64_t> ways(B + 2, 0);
    ways[0] = 1;
    constexpr std::uint64_t kMax = UINT64_MAX;
    auto sat_add = [](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };
    for (std::size_t i = 1; i <= B; ++i) {
        std::vector<std::uint64_t> next(B + 2, 0);
        for (std::size_t v = 0; v <= B; ++v) {
            if (!ways[v]) continue;
            for (std::uint8_t k = 0; k < kLabelCount; ++k) {
                const std::int64_t blk = static_cast<std::int64_t>(v) + 1;
                if (blk + label_extra(k) < 1) continue;
                const auto to = static_cast<std::size_t>(blk + label_move(k) - 1);
                next[to] = sat_add(next[to], ways[v]);
            }
        }
        ways = std::move(next);
    }
    std::uint64_t one = 0;
    for (auto w : ways) one = sat_add(one, w);
    std::uint64_t total = 1;
    for (std::size_t h = 0; h < p; ++h) {
        if (one != 0 && total > kMax / one) return kMax;
        total *= one;
    }
    return total;
}

inline constexpr std::uint64_t kDefaultEncodingBudget = 1'000'000;

/// Valid encodings in lexicographic order of their label codes, (h = 1, i = 1) most
/// significant. Invalid prefixes are skipped without visiting their extensions.
class EncodingEnumerator {
public:
    EncodingEnumerator(std::size_t p, std::size_t B, std::size_t c, std::uint64_t budget = kDefaultEncodingBudget)
        : cur_(p, B, c) {
        if (B == 0) throw std::invalid_argument("at least one time block is required");
        total_ = count_valid_encodings(p, B);
        if (total_ > budget)
            throw BudgetError("encoding enumeration over " + std::to_string(p) + " tapes and " + std::to_string(B) +
                              " blocks exceeds the budget");
        reset();
    }

    std::uint64_t total() const { return total_; }

    void reset() {
        std::fill(cur_.labels.begin(), cur_.labels.end(), 0);
        started_ = false;
        done_ = cur_.p == 0;
    }

    /// Next valid encoding, or nullopt once the stream is exhausted.
    std::optional<GraphEncoding> next() {
        if (done_) return std::nullopt;
        if (!started_) {
            started_ = true;
            // All-zero labels are always valid and lexicographically first.
            return cur_;
        }
        if (!advance()) {
            done_ = true;
            return std::nullopt;
        }
        return cur_;
    }

private:
    // Increments the rightmost digit that can move, then fills the tail with zeros, which keeps
    // any valid prefix valid. A digit is accepted only if its own boundary check passes.
    bool advance() {
        const std::size_t n = cur_.labels.size();
        for (std::size_t pos = n; pos-- > 0;) {
            const std::size_t h = pos / cur_.B + 1, i = pos % cur_.B + 1;
            const std::int64_t start = block_index(cur_, h, i);
            for (std::uint8_t k = cur_.labels[pos] + 1; k < kLabelCount; ++k) {
                if (start + label_extra(k) < 1) continue;
                cur_.labels[pos] = k;
                std::fill(cur_.labels.begin() + static_cast<std::ptrdiff_t>(pos) + 1, cur_.labels.end(), 0);
                return true;
            }
        }
        return false;
    }

    GraphEncoding cur_;
    std::uint64_t total_ = 0;
    bool started_ = false, done_ = false;
};

/// The encoding of an annotated direct run.
inline GraphEncoding trace_to_encoding(const tm::RunTrace& trace, std::size_t c) {
    if (trace.block_length != c || trace.headlog.empty())
        throw std::logic_error("trace is not annotated for block length " + std::to_string(c));
    const std::size_t p = trace.headlog.size(), B = trace.blocks;
    GraphEncoding enc(p, B, c);
    for (std::size_t h = 1; h <= p; ++h) {
        for (std::size_t i = 1; i <= B; ++i) {
            const std::int64_t start = trace.headlog[h - 1][i - 1], end = trace.headlog[h - 1][i];
            const auto& act = trace.activelog[h - 1][i - 1];
            int extra = 0;
            for (auto blk : act) {
                if (blk == start) continue;
                if (extra != 0 || (blk != start - 1 && blk != start + 1))
                    throw std::logic_error("trace touches more than two adjacent blocks in one time block");
                extra = static_cast<int>(blk - start);
            }
            if (end - start < -1 || end - start > 1) throw std::logic_error("head moved more than one block");
            enc.set_code(h, i, label_code(static_cast<int>(end - start), extra));
        }
    }
    return enc;
}

inline constexpr std::size_t kBitsPerLabel = 3;

inline std::size_t encoding_bits(const GraphEncoding& enc) { return kBitsPerLabel * enc.labels.size(); }

/// Pair k = (h-1)*B + (i-1) occupies bits [3k, 3k+3), least significant bit first.
inline Bits serialize(const GraphEncoding& enc) {
    Bits out(encoding_bits(enc));
    for (std::size_t k = 0; k < enc.labels.size(); ++k) out.set_field(kBitsPerLabel * k, kBitsPerLabel, enc.labels[k]);
    return out;
}

inline GraphEncoding deserialize(const Bits& bits, std::size_t p, std::size_t B, std::size_t c) {
    GraphEncoding enc(p, B, c);
    if (bits.size() != encoding_bits(enc)) throw std::invalid_argument("serialized encoding has the wrong length");
    for (std::size_t k = 0; k < enc.labels.size(); ++k) {
        const auto v = bits.get_field(kBitsPerLabel * k, kBitsPerLabel);
        if (v >= kLabelCount) throw std::invalid_argument("serialized label code out of range");
        enc.labels[k] = static_cast<std::uint8_t>(v);
    }
    return enc;
}

}  // namespace catsim::graph
