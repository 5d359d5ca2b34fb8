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
#include <fstream>
#include <optional>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catsim::tm {

using State = std::uint32_t;
using Symbol = std::uint8_t;

inline constexpr Symbol kBlank = 0;
inline constexpr char kBlankChar = '_';

enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };

struct Transition {
    State next = 0;
    std::vector<Symbol> write;
    std::vector<Move> move;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, NonAbsorbingHalt, UndefinedTransition };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

/// Deterministic multitape machine with one-way infinite tapes. Symbol 0 is the blank.
class Machine {
public:
    Machine(std::size_t tapes, std::vector<char> alphabet, std::vector<std::string> states, State start,
            State accept, std::optional<State> reject, std::vector<std::optional<Transition>> table)
        : tapes_(tapes),
          alphabet_(std::move(alphabet)),
          states_(std::move(states)),
          start_(start),
          accept_(accept),
          reject_(reject),
          table_(std::move(table)) {}

    std::size_t tapes() const { return tapes_; }
    std::size_t num_symbols() const { return alphabet_.size(); }
    std::size_t num_states() const { return states_.size(); }
    const std::vector<char>& alphabet() const { return alphabet_; }
    const std::vector<std::string>& state_names() const { return states_; }
    State start() const { return start_; }
    State accept() const { return accept_; }
    std::optional<State> reject() const { return reject_; }

    bool is_halting(State q) const { return q == accept_ || (reject_ && q == *reject_); }

    std::optional<Symbol> symbol_of(char ch) const {
        auto it = std::find(alphabet_.begin(), alphabet_.end(), ch);
        if (it == alphabet_.end()) return std::nullopt;
        return static_cast<Symbol>(it - alphabet_.begin());
    }
    char char_of(Symbol s) const { return alphabet_.at(s); }

    std::size_t row_index(State q, std::span<const Symbol> read) const {
        std::size_t idx = 0;
        for (std::size_t k = tapes_; k-- > 0;) idx = idx * alphabet_.size() + read[k];
        return static_cast<std::size_t>(q) * rows_per_state() + idx;
    }

    std::size_t rows_per_state() const {
        std::size_t n = 1;
        for (std::size_t k = 0; k < tapes_; ++k) n *= alphabet_.size();
        return n;
    }

    /// Total transition map; halt states map to themselves with no writes or moves.
    const Transition& delta(State q, std::span<const Symbol> read) const { return *table_[row_index(q, read)]; }

    /// Converts an input string over the non-blank alphabet to symbols.
    std::vector<Symbol> encode_input(std::string_view input) const {
        std::vector<Symbol> out;
        out.reserve(input.size());
        for (char ch : input) {
            auto s = symbol_of(ch);
            if (!s || *s == kBlank)
                throw std::invalid_argument(std::string("input symbol '") + ch + "' is not in the machine alphabet");
            out.push_back(*s);
        }
        return out;
    }

private:
    std::size_t tapes_;
    std::vector<char> alphabet_;
    std::vector<std::string> states_;
    State start_;
    State accept_;
    std::optional<State> reject_;
    std::vector<std::optional<Transition>> table_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

struct PendingRow {
    std::size_t line;
    std::string from;
    std::vector<std::string> read, write, move;
    std::string to;
    bool wildcard;
};

}  // namespace detail

/// Parses the line-oriented machine format:
///
///     tapes 2
///     alphabet 0 1 _          (or "alphabet 01_"; '_' is the blank and is added if missing)
///     states q0 q1 acc rej
///     start q0
///     accept acc
///     reject rej              (optional)
///     q0 1 _ -> q0 1 1 R R    (state, p reads, '->', state', p writes, p moves in L/S/R)
///
/// '*' as a read symbol matches any symbol without an explicit row; '*' as a write keeps the
/// symbol that was read. '#' starts a comment.
inline Machine parse_machine(std::string_view text) {
    using detail::PendingRow;
    using K = ParseError::Kind;

    std::optional<std::size_t> tapes;
    std::vector<char> alphabet;
    std::vector<std::string> states;
    std::optional<std::string> start, accept, reject;
    std::vector<PendingRow> rows;

    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = detail::split_ws(raw);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        auto need = [&](std::size_t n) {
            if (tok.size() != n) throw ParseError(K::Syntax, lineno, "malformed '" + key + "' line");
        };
        if (key == "tapes") {
            need(2);
            try {
                tapes = std::stoul(tok[1]);
            } catch (const std::exception&) {
                throw ParseError(K::Syntax, lineno, "tape count is not a number");
            }
            if (*tapes == 0) throw ParseError(K::Syntax, lineno, "tape count must be positive");
        } else if (key == "alphabet") {
            if (tok.size() < 2) throw ParseError(K::Syntax, lineno, "empty alphabet");
            alphabet.assign(1, kBlankChar);
            for (std::size_t k = 1; k < tok.size(); ++k)
                for (char ch : tok[k]) {
                    if (ch == '*' || ch == '-' || ch == '>')
                        throw ParseError(K::Syntax, lineno, std::string("reserved symbol '") + ch + "'");
                    if (std::find(alphabet.begin(), alphabet.end(), ch) == alphabet.end()) alphabet.push_back(ch);
                }
        } else if (key == "states") {
            if (tok.size() < 2) throw ParseError(K::Syntax, lineno, "empty state list");
            for (std::size_t k = 1; k < tok.size(); ++k) {
                if (std::find(states.begin(), states.end(), tok[k]) != states.end())
                    throw ParseError(K::Syntax, lineno, "duplicate state '" + tok[k] + "'");
                states.push_back(tok[k]);
            }
        } else if (key == "start") {
            need(2);
            start = tok[1];
        } else if (key == "accept") {
            need(2);
            accept = tok[1];
        } else if (key == "reject") {
            need(2);
            reject = tok[1];
        } else {
            if (!tapes) throw ParseError(K::Syntax, lineno, "transition before 'tapes' header");
            const std::size_t p = *tapes;
            if (tok.size() != 3 + 3 * p || tok[1 + p] != "->")
                throw ParseError(K::Syntax, lineno, "expected 'state s1..sp -> state' w1..wp m1..mp'");
            PendingRow row{lineno, tok[0], {}, {}, {}, tok[2 + p], false};
            for (std::size_t k = 0; k < p; ++k) {
                row.read.push_back(tok[1 + k]);
                row.write.push_back(tok[3 + p + k]);
                row.move.push_back(tok[3 + 2 * p + k]);
                if (tok[1 + k] == "*") row.wildcard = true;
            }
            rows.push_back(std::move(row));
        }
    }

    if (!tapes) throw ParseError(K::Syntax, 0, "missing 'tapes' header");
    if (alphabet.empty()) throw ParseError(K::Syntax, 0, "missing 'alphabet' header");
    if (states.empty()) throw ParseError(K::Syntax, 0, "missing 'states' header");
    if (!start || !accept) throw ParseError(K::Syntax, 0, "missing 'start' or 'accept' declaration");

    auto state_id = [&](const std::string& name, std::size_t line) -> State {
        auto it = std::find(states.begin(), states.end(), name);
        if (it == states.end()) throw ParseError(K::Syntax, line, "unknown state '" + name + "'");
        return static_cast<State>(it - states.begin());
    };
    auto symbol_id = [&](const std::string& s, std::size_t line) -> Symbol {
        if (s.size() != 1) throw ParseError(K::Syntax, line, "symbols are single characters, got '" + s + "'");
        auto it = std::find(alphabet.begin(), alphabet.end(), s[0]);
        if (it == alphabet.end()) throw ParseError(K::Syntax, line, "unknown symbol '" + s + "'");
        return static_cast<Symbol>(it - alphabet.begin());
    };

    const State q0 = state_id(*start, 0);
    const State qa = state_id(*accept, 0);
    std::optional<State> qr;
    if (reject) {
        qr = state_id(*reject, 0);
        if (*qr == qa) throw ParseError(K::Syntax, 0, "accept and reject states coincide");
    }

    const std::size_t p = *tapes;
    const std::size_t gamma = alphabet.size();
    std::size_t per_state = 1;
    for (std::size_t k = 0; k < p; ++k) per_state *= gamma;
    std::vector<std::optional<Transition>> table(states.size() * per_state);
    std::vector<std::size_t> defined_at(table.size(), 0);
    std::vector<bool> explicit_row(table.size(), false);

    Machine shape(p, alphabet, states, q0, qa, qr, {});
    auto install = [&](const PendingRow& row, std::span<const Symbol> read) {
        const State from = state_id(row.from, row.line);
        Transition tr;
        tr.next = state_id(row.to, row.line);
        for (std::size_t k = 0; k < p; ++k) {
            tr.write.push_back(row.write[k] == "*" ? read[k] : symbol_id(row.write[k], row.line));
            const std::string& mv = row.move[k];
            if (mv == "L") {
                tr.move.push_back(Move::Left);
            } else if (mv == "S") {
                tr.move.push_back(Move::Stay);
            } else if (mv == "R") {
                tr.move.push_back(Move::Right);
            } else {
                throw ParseError(K::Syntax, row.line, "move must be L, S or R, got '" + mv + "'");
            }
        }
        const std::size_t idx = shape.row_index(from, read);
        if (!row.wildcard) {
            if (explicit_row[idx])
                throw ParseError(K::Syntax, row.line,
                                 "duplicate transition (first defined on line " + std::to_string(defined_at[idx]) + ")");
            explicit_row[idx] = true;
        } else if (table[idx]) {
            return;
        }
        table[idx] = std::move(tr);
        defined_at[idx] = row.line;
    };

    // Explicit rows first so that wildcard rows only fill the gaps.
    for (const auto& row : rows) {
        if (row.wildcard) continue;
        std::vector<Symbol> read;
        for (const auto& s : row.read) read.push_back(symbol_id(s, row.line));
        install(row, read);
    }
    for (const auto& row : rows) {
        if (!row.wildcard) continue;
        std::vector<std::size_t> wild;
        std::vector<Symbol> read(p, 0);
        for (std::size_t k = 0; k < p; ++k) {
            if (row.read[k] == "*") {
                wild.push_back(k);
            } else {
                read[k] = symbol_id(row.read[k], row.line);
            }
        }
        std::size_t combos = 1;
        for (std::size_t k = 0; k < wild.size(); ++k) combos *= gamma;
        for (std::size_t c = 0; c < combos; ++c) {
            std::size_t rest = c;
            for (auto k : wild) {
                read[k] = static_cast<Symbol>(rest % gamma);
                rest /= gamma;
            }
            install(row, read);
        }
    }

    std::vector<Symbol> read(p, 0);
    for (State q = 0; q < states.size(); ++q) {
        const bool halting = q == qa || (qr && q == *qr);
        for (std::size_t r = 0; r < per_state; ++r) {
            std::size_t rest = r;
            for (std::size_t k = 0; k < p; ++k) {
                read[k] = static_cast<Symbol>(rest % gamma);
                rest /= gamma;
            }
            const std::size_t idx = shape.row_index(q, read);
            auto& slot = table[idx];
            if (halting) {
                if (slot) {
                    bool absorbing = slot->next == q;
                    for (std::size_t k = 0; k < p; ++k)
                        absorbing = absorbing && slot->write[k] == read[k] && slot->move[k] == Move::Stay;
                    if (!absorbing)
                        throw ParseError(K::NonAbsorbingHalt, defined_at[idx],
                                         "halt state '" + states[q] + "' must loop in place without writing");
                } else {
                    slot = Transition{q, read, std::vector<Move>(p, Move::Stay)};
                }
            } else if (!slot) {
                std::string syms;
                for (auto s : read) syms += alphabet[s];
                throw ParseError(K::UndefinedTransition, 0,
                                 "no transition for state '" + states[q] + "' reading '" + syms + "'");
            }
        }
    }

    return Machine(p, std::move(alphabet), std::move(states), q0, qa, qr, std::move(table));
}

inline Machine load_machine(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open machine file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_machine(ss.str());
}

}  // namespace catsim::tm
