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
#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "catsim/tm/machine.hpp"

namespace catsim::tm {

enum class Decision { Accept, Reject, Timeout };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Accept: return "accept";
        case Decision::Reject: return "reject";
        case Decision::Timeout: return "timeout";
    }
    return "?";
}

/// Machine configuration. Tapes are sparse: an absent cell holds the blank.
struct Configuration {
    State state = 0;
    std::vector<std::int64_t> head;
    std::vector<std::map<std::int64_t, Symbol>> tapes;
    std::uint64_t step = 0;

    Symbol read(std::size_t h, std::int64_t cell) const {
        auto it = tapes[h].find(cell);
        return it == tapes[h].end() ? kBlank : it->second;
    }

    void write(std::size_t h, std::int64_t cell, Symbol s) {
        if (s == kBlank) {
            tapes[h].erase(cell);
        } else {
            tapes[h][cell] = s;
        }
    }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Step-by-step reference simulator. Input is on tape 0 from cell 0, all heads start at cell 0,
/// and a left move at cell 0 leaves the head in place.
class DirectSimulator {
public:
    DirectSimulator(const Machine& m, std::string_view input) : m_(m) {
        cfg_.state = m.start();
        cfg_.head.assign(m.tapes(), 0);
        cfg_.tapes.resize(m.tapes());
        auto syms = m.encode_input(input);
        for (std::size_t k = 0; k < syms.size(); ++k) cfg_.write(0, static_cast<std::int64_t>(k), syms[k]);
        read_.resize(m.tapes());
    }

    const Configuration& config() const { return cfg_; }
    bool halted() const { return m_.is_halting(cfg_.state); }

    /// One transition. Halt states are absorbing, so stepping a halted machine only advances time.
    void step() {
        for (std::size_t h = 0; h < m_.tapes(); ++h) read_[h] = cfg_.read(h, cfg_.head[h]);
        const Transition& tr = m_.delta(cfg_.state, read_);
        for (std::size_t h = 0; h < m_.tapes(); ++h) {
            cfg_.write(h, cfg_.head[h], tr.write[h]);
            cfg_.head[h] = std::max<std::int64_t>(0, cfg_.head[h] + static_cast<int>(tr.move[h]));
        }
        cfg_.state = tr.next;
        ++cfg_.step;
    }

private:
    const Machine& m_;
    Configuration cfg_;
    std::vector<Symbol> read_;
};

/// Result of a direct run. Tape indices are 0-based; block indices are 1-based.
struct RunTrace {
    Decision decision = Decision::Timeout;
    std::uint64_t steps = 0;
    /// head_path[h][s]: head cell of tape h after s transitions, s = 0..steps.
    std::vector<std::vector<std::int64_t>> head_path;

    /// Block annotation; empty until annotate_blocks runs.
    std::size_t block_length = 0;
    std::size_t blocks = 0;
    /// headlog[h][i-1]: tape block of head h at the start of time block i, for i = 1..B+1
    /// (entry B+1 is the block at the end of the run).
    std::vector<std::vector<std::int64_t>> headlog;
    /// activelog[h][i-1]: sorted tape blocks touched by head h during time block i (start and end included).
    std::vector<std::vector<std::vector<std::int64_t>>> activelog;

    std::int64_t position(std::size_t h, std::uint64_t s) const {
        const auto& path = head_path[h];
        return s < path.size() ? path[s] : path.back();
    }
};

inline RunTrace run_direct(const Machine& m, std::string_view input, std::uint64_t max_steps) {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
    DirectSimulator sim(m, input);
    RunTrace trace;
    trace.head_path.resize(m.tapes());
    auto record = [&] {
        for (std::size_t h = 0; h < m.tapes(); ++h) trace.head_path[h].push_back(sim.config().head[h]);
    };
    record();
    while (!sim.halted() && sim.config().step < max_steps) {
        sim.step();
        record();
    }
    trace.steps = sim.config().step;
    if (sim.halted()) {
        trace.decision = sim.config().state == m.accept() ? Decision::Accept : Decision::Reject;
    } else {
        trace.decision = Decision::Timeout;
    }
    return trace;
}

inline std::int64_t cell_block(std::int64_t cell, std::size_t c) { return cell / static_cast<std::int64_t>(c) + 1; }

/// Partitions time into blocks of c steps and each tape into blocks of c cells. The run is
/// extended to B * c steps by idling in place, with B = max(1, ceil(steps / c), min_blocks).
inline RunTrace annotate_blocks(RunTrace trace, std::size_t c, std::size_t min_blocks = 0) {
    if (c < 1) throw std::invalid_argument("block length must be at least 1");
    const std::size_t B = std::max<std::size_t>({1, (trace.steps + c - 1) / c, min_blocks});
    const std::size_t p = trace.head_path.size();
    trace.block_length = c;
    trace.blocks = B;
    trace.headlog.assign(p, {});
    trace.activelog.assign(p, {});
    for (std::size_t h = 0; h < p; ++h) {
        for (std::size_t i = 1; i <= B + 1; ++i) trace.headlog[h].push_back(cell_block(trace.position(h, (i - 1) * c), c));
        for (std::size_t i = 1; i <= B; ++i) {
            std::vector<std::int64_t> active;
            for (std::uint64_t s = (i - 1) * c; s <= i * c; ++s) {
                const auto blk = cell_block(trace.position(h, s), c);
                if (std::find(active.begin(), active.end(), blk) == active.end()) active.push_back(blk);
            }
            std::sort(active.begin(), active.end());
            trace.activelog[h].push_back(std::move(active));
        }
    }
    return trace;
}

}  // namespace catsim::tm
