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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catsim/errors.hpp"
#include "catsim/graph/encoding.hpp"
#include "catsim/reduction/content.hpp"
#include "catsim/reduction/tree.hpp"
#include "catsim/tm/simulator.hpp"
#include "catsim/tree/cook_mertz.hpp"
#include "catsim/tree/naive.hpp"

namespace catsim::reduction {

enum class Enumeration { Oracle, Full };
enum class TreeSolver { Auto, CookMertz, DepthFirst };

inline const char* to_string(Enumeration e) { return e == Enumeration::Oracle ? "oracle" : "full"; }
inline const char* to_string(TreeSolver s) {
    switch (s) {
        case TreeSolver::Auto: return "auto";
        case TreeSolver::CookMertz: return "cm";
        case TreeSolver::DepthFirst: return "dfs";
    }
    return "?";
}
inline Enumeration parse_enumeration(std::string_view s) {
    if (s == "oracle") return Enumeration::Oracle;
    if (s == "full") return Enumeration::Full;
    throw std::invalid_argument("unknown enumeration mode '" + std::string(s) + "'");
}
inline TreeSolver parse_solver(std::string_view s) {
    if (s == "auto") return TreeSolver::Auto;
    if (s == "cm") return TreeSolver::CookMertz;
    if (s == "dfs" || s == "naive") return TreeSolver::DepthFirst;
    throw std::invalid_argument("unknown tree solver '" + std::string(s) + "'");
}

/// ceil(sqrt(t * log2 t)), at least 1.
inline std::size_t default_block_length(std::uint64_t t) {
    if (t <= 1) return 1;
    const double x = static_cast<double>(t) * std::log2(static_cast<double>(t));
    auto c = static_cast<std::size_t>(std::ceil(std::sqrt(x)));
    // Guard against the square root landing just below an exact integer.
    while (static_cast<double>(c - 1) * static_cast<double>(c - 1) >= x && c > 1) --c;
    while (static_cast<double>(c) * static_cast<double>(c) < x) ++c;
    return std::max<std::size_t>(1, c);
}

struct BlockPolicy {
    std::optional<std::size_t> fixed;

    std::size_t block_length(std::uint64_t t) const { return fixed ? *fixed : default_block_length(t); }
    std::string describe() const { return fixed ? "fixed:" + std::to_string(*fixed) : "sqrt-tlogt"; }
};

struct SimulateOptions {
    tree::ExtensionMode mode = tree::ExtensionMode::Packed;
    Enumeration enumeration = Enumeration::Oracle;
    TreeSolver solver = TreeSolver::Auto;
    BlockPolicy policy;
    bool doubling = false;
    /// First running-time guess; defaults to max(n, 1).
    std::optional<std::uint64_t> t_start;
    std::uint64_t max_t = 4096;
    std::uint64_t domain_budget = tree::kDefaultDomainBudget;
    std::uint64_t encoding_budget = graph::kDefaultEncodingBudget;
    /// In full mode, keep evaluating the deciding guess to the end of the stream.
    bool exhaustive = false;
    /// Measure both solvers' space on the deciding tree.
    bool measure_space = true;
};

struct GuessRecord {
    std::uint64_t t = 0;
    std::size_t c = 0, B = 0;
    std::uint64_t candidates = 0;
    std::uint64_t non_fail = 0;
};

struct SimulateResult {
    tm::Decision decision = tm::Decision::Timeout;
    std::uint64_t t_found = 0;
    std::size_t c = 0, B = 0;
    Enumeration enumeration = Enumeration::Oracle;
    tree::ExtensionMode mode = tree::ExtensionMode::Packed;
    TreeSolver solver_used = TreeSolver::DepthFirst;
    bool doubling = false;
    std::vector<GuessRecord> guesses;

    // Filled for the deciding tree when measure_space is set.
    std::size_t content_bits = 0;
    std::size_t fan_in = 0;
    std::size_t height = 0;
    std::optional<tree::FieldChoice> field;
    tree::SpaceMeter cm_space;
    /// True when cm_space comes from the space probe rather than from running the solver.
    bool cm_space_probed = false;
    std::size_t naive_space_bits = 0;
};

namespace detail {

inline bool cm_feasible(std::size_t d, std::size_t b, std::uint64_t budget) {
    const std::size_t n = d * b;
    return n < 63 && (std::uint64_t{1} << n) <= budget;
}

struct RootOutcome {
    Bits value;
    TreeSolver used;
    std::optional<tree::CookMertzResult> cm;
    std::optional<tree::NaiveResult> naive;
};

inline RootOutcome solve_root(const ReductionTree& t, const SimulateOptions& opt) {
    const bool use_cm = opt.solver == TreeSolver::CookMertz ||
                        (opt.solver == TreeSolver::Auto && cm_feasible(t.fan_in(), t.bit_length(), opt.domain_budget));
    RootOutcome out;
    if (use_cm) {
        tree::CookMertzOptions co;
        co.mode = opt.mode;
        co.budget = opt.domain_budget;
        const auto padded = tree::pad_instance(t);
        out.cm = tree::solve_cook_mertz(padded, co);
        out.value = out.cm->value;
        out.used = TreeSolver::CookMertz;
    } else {
        out.naive = tree::solve_naive(t);
        out.value = out.naive->value;
        out.used = TreeSolver::DepthFirst;
    }
    return out;
}

}  // namespace detail

/// Guesses t, builds the reduction tree of each candidate encoding and reads the decision off the first
/// root that is not FAIL. Oracle enumeration uses only the encoding of the true run.
inline SimulateResult simulate_space_efficient(const tm::Machine& M, std::string_view input,
                                               const SimulateOptions& opt = {}) {
    SimulateResult res;
    res.enumeration = opt.enumeration;
    res.mode = opt.mode;
    res.doubling = opt.doubling;
    const std::uint64_t n = input.size();
    std::uint64_t t = opt.t_start ? std::max<std::uint64_t>(1, *opt.t_start) : std::max<std::uint64_t>(1, n);

    for (; t <= opt.max_t; t = opt.doubling ? 2 * t : t + 1) {
        const std::size_t c = std::max<std::size_t>(1, opt.policy.block_length(t));
        const std::size_t B = static_cast<std::size_t>((t + c - 1) / c);
        const ReductionParams rp(M, input, c, B, t);
        GuessRecord g{t, c, B, 0, 0};

        std::optional<graph::EncodingEnumerator> stream;
        std::optional<graph::GraphEncoding> oracle;
        if (opt.enumeration == Enumeration::Full) {
            stream.emplace(M.tapes(), B, c, opt.encoding_budget);
        } else {
            auto trace = tm::annotate_blocks(tm::run_direct(M, input, static_cast<std::uint64_t>(B) * c), c, B);
            oracle = graph::trace_to_encoding(trace, c);
        }
        auto next = [&]() -> std::optional<graph::GraphEncoding> {
            if (stream) return stream->next();
            return std::exchange(oracle, std::nullopt);
        };

        std::optional<tm::Decision> decided;
        while (auto enc = next()) {
            ++g.candidates;
            const ReductionTree tr(rp, std::move(*enc));
            auto outcome = detail::solve_root(tr, opt);
            if (ContentLayout::is_fail(outcome.value)) continue;
            ++g.non_fail;
            if (g.non_fail > 1) continue;  // the first non-FAIL root already decided this guess
            const auto ct = rp.layout.decode(outcome.value);
            if (!ct) throw std::logic_error("root value is neither FAIL nor a content string");
            res.solver_used = outcome.used;
            if (M.is_halting(ct->state)) {
                decided = ct->state == M.accept() ? tm::Decision::Accept : tm::Decision::Reject;
                res.t_found = t;
                res.c = c;
                res.B = B;
                res.content_bits = tr.bit_length();
                res.fan_in = tr.fan_in();
                res.height = tr.height();
                if (opt.measure_space) {
                    res.field = tree::choose_field(tr.fan_in(), tr.bit_length(), opt.mode);
                    if (outcome.cm) {
                        res.cm_space = outcome.cm->meter;
                    } else {
                        res.cm_space = tree::probe_cook_mertz_space(tree::pad_instance(tr), opt.mode);
                        res.cm_space_probed = true;
                    }
                    res.naive_space_bits =
                        outcome.naive ? outcome.naive->space_bits_peak : tree::solve_naive(tr).space_bits_peak;
                }
            }
            if (!(stream && opt.exhaustive)) break;
        }
        res.guesses.push_back(g);
        if (decided) {
            res.decision = *decided;
            return res;
        }
    }
    res.decision = tm::Decision::Timeout;
    return res;
}

}  // namespace catsim::reduction
