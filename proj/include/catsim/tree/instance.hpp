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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/errors.hpp"

namespace catsim::tree {

/// An implicitly defined Tree Evaluation instance: fan-in bound d, value width b, height bound h
/// (nodes on the longest root-to-leaf path), and node functions reachable only through apply().
template <class T>
concept TreeInstance = requires(const T& t, const typename T::node_type& u, std::span<const Bits> in) {
    typename T::node_type;
    { t.fan_in() } -> std::convertible_to<std::size_t>;
    { t.bit_length() } -> std::convertible_to<std::size_t>;
    { t.height() } -> std::convertible_to<std::size_t>;
    { t.root() } -> std::same_as<typename T::node_type>;
    { t.is_leaf(u) } -> std::convertible_to<bool>;
    { t.degree(u) } -> std::convertible_to<std::size_t>;
    { t.children(u) } -> std::same_as<std::vector<typename T::node_type>>;
    { t.leaf_value(u) } -> std::same_as<Bits>;
    { t.apply(u, in) } -> std::same_as<Bits>;
};

/// Tree with materialized node functions. Row r of a table holds f(x_1..x_deg) where the
/// concatenation x_1 x_2 ... (first bit of x_1 most significant) is the binary form of r.
class ExplicitInstance {
public:
    using node_type = std::size_t;

    struct Node {
        bool leaf = true;
        Bits value;                         // leaves
        std::vector<std::size_t> children;  // inner nodes
        std::vector<std::uint64_t> table;   // inner nodes; bit k of an entry is output bit k
    };

    ExplicitInstance(std::size_t d, std::size_t b, std::size_t h, std::vector<Node> nodes, std::size_t root = 0)
        : d_(d), b_(b), h_(h), root_(root), nodes_(std::move(nodes)) {
        validate();
    }

    std::size_t fan_in() const { return d_; }
    std::size_t bit_length() const { return b_; }
    std::size_t height() const { return h_; }
    /// Longest root-to-leaf path in nodes.
    std::size_t depth() const { return depth_; }
    node_type root() const { return root_; }
    bool is_leaf(node_type u) const { return nodes_[u].leaf; }
    std::size_t degree(node_type u) const { return nodes_[u].children.size(); }
    std::vector<node_type> children(node_type u) const { return nodes_[u].children; }
    Bits leaf_value(node_type u) const { return nodes_[u].value; }
    const std::vector<Node>& nodes() const { return nodes_; }

    static std::size_t row_index(std::span<const Bits> in, std::size_t deg, std::size_t b) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < deg; ++k)
            for (std::size_t j = 0; j < b; ++j) idx = (idx << 1) | static_cast<std::size_t>(in[k][j]);
        return idx;
    }

    Bits apply(node_type u, std::span<const Bits> in) const {
        const Node& n = nodes_[u];
        return Bits::from_uint(b_, n.table[row_index(in, n.children.size(), b_)]);
    }

private:
    void validate() {
        if (b_ == 0 || b_ > 64) throw MalformedInstance("value width b must be in [1, 64]");
        if (nodes_.empty() || root_ >= nodes_.size()) throw MalformedInstance("instance has no root node");
        for (std::size_t u = 0; u < nodes_.size(); ++u) {
            const Node& n = nodes_[u];
            if (n.leaf) {
                if (n.value.size() != b_)
                    throw MalformedInstance("leaf " + std::to_string(u) + " value is not " + std::to_string(b_) + " bits");
                continue;
            }
            if (n.children.size() < 2 || n.children.size() > d_)
                throw MalformedInstance("inner node " + std::to_string(u) + " must have between 2 and d children");
            for (auto c : n.children)
                if (c >= nodes_.size()) throw MalformedInstance("node " + std::to_string(u) + " has a missing child");
            const std::size_t arity = n.children.size() * b_;
            if (arity >= 32 || n.table.size() != (std::size_t{1} << arity))
                throw MalformedInstance("inner node " + std::to_string(u) + " has a table of the wrong size");
        }
        // Longest path with cycle detection (0 = unvisited, 1 = on stack, 2 = done).
        std::vector<int> mark(nodes_.size(), 0);
        std::vector<std::size_t> depth(nodes_.size(), 0);
        std::function<std::size_t(std::size_t)> visit = [&](std::size_t u) -> std::size_t {
            if (mark[u] == 1) throw MalformedInstance("cycle through node " + std::to_string(u));
            if (mark[u] == 2) return depth[u];
            mark[u] = 1;
            std::size_t best = 0;
            for (auto c : nodes_[u].children) best = std::max(best, visit(c));
            mark[u] = 2;
            return depth[u] = best + 1;
        };
        depth_ = visit(root_);
        if (depth_ > h_)
            throw MalformedInstance("tree depth " + std::to_string(depth_) + " exceeds declared height " +
                                    std::to_string(h_));
    }

    std::size_t d_, b_, h_, root_;
    std::vector<Node> nodes_;
    std::size_t depth_ = 0;
};

/// Text form:
///
///     d b h
///     node <addr> leaf <bits>
///     node <addr> inner <child addrs> table <2^(deg*b) rows of b bits>
///
/// The first node listed is the root. Tables are accepted only when deg * b <= 16.
inline ExplicitInstance parse_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tok;
    for (std::string line; std::getline(in, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        for (std::string t; ls >> t;) tok.push_back(t);
    }
    std::size_t pos = 0;
    auto next = [&](const char* what) -> const std::string& {
        if (pos >= tok.size()) throw MalformedInstance(std::string("unexpected end of instance, expected ") + what);
        return tok[pos++];
    };
    auto number = [&](const char* what) -> std::size_t {
        const std::string& t = next(what);
        try {
            std::size_t used = 0;
            auto v = std::stoul(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw MalformedInstance(std::string("expected ") + what + ", got '" + t + "'");
        }
    };
    const std::size_t d = number("fan-in d"), b = number("bit length b"), h = number("height h");
    if (b == 0 || b > 64) throw MalformedInstance("bit length must be in [1, 64]");

    struct Raw {
        std::string addr;
        bool leaf;
        std::string value;
        std::vector<std::string> children;
        std::vector<std::string> rows;
    };
    std::vector<Raw> raws;
    std::unordered_map<std::string, std::size_t> index;
    while (pos < tok.size()) {
        if (next("'node'") != "node") throw MalformedInstance("expected 'node', got '" + tok[pos - 1] + "'");
        Raw r;
        r.addr = next("node address");
        if (index.count(r.addr)) throw MalformedInstance("duplicate node address '" + r.addr + "'");
        const std::string kind = next("'leaf' or 'inner'");
        if (kind == "leaf") {
            r.leaf = true;
            r.value = next("leaf bits");
        } else if (kind == "inner") {
            r.leaf = false;
            while (pos < tok.size() && tok[pos] != "table") r.children.push_back(tok[pos++]);
            next("'table'");
            const std::size_t arity = r.children.size() * b;
            if (arity > 16) throw MalformedInstance("node '" + r.addr + "': tables allowed only when deg * b <= 16");
            for (std::size_t k = 0; k < (std::size_t{1} << arity); ++k) r.rows.push_back(next("table row"));
        } else {
            throw MalformedInstance("node '" + r.addr + "': unknown kind '" + kind + "'");
        }
        index[r.addr] = raws.size();
        raws.push_back(std::move(r));
    }
    if (raws.empty()) throw MalformedInstance("instance has no nodes");

    std::vector<ExplicitInstance::Node> nodes(raws.size());
    for (std::size_t u = 0; u < raws.size(); ++u) {
        const Raw& r = raws[u];
        auto& n = nodes[u];
        n.leaf = r.leaf;
        try {
            if (r.leaf) {
                n.value = Bits::from_string(r.value);
                continue;
            }
            for (const auto& c : r.children) {
                auto it = index.find(c);
                if (it == index.end()) throw MalformedInstance("node '" + r.addr + "' references missing node '" + c + "'");
                n.children.push_back(it->second);
            }
            for (const auto& row : r.rows) {
                if (row.size() != b) throw MalformedInstance("node '" + r.addr + "': table row '" + row + "' is not b bits");
                n.table.push_back(Bits::from_string(row).to_uint());
            }
        } catch (const std::invalid_argument& e) {
            throw MalformedInstance("node '" + r.addr + "': " + e.what());
        }
    }
    return ExplicitInstance(d, b, h, std::move(nodes), 0);
}

inline ExplicitInstance load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open instance file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_instance(ss.str());
}

inline std::string format_instance(const ExplicitInstance& inst) {
    std::ostringstream out;
    out << inst.fan_in() << ' ' << inst.bit_length() << ' ' << inst.height() << '\n';
    // Root first, then the rest in index order.
    std::vector<std::size_t> order{inst.root()};
    for (std::size_t u = 0; u < inst.nodes().size(); ++u)
        if (u != inst.root()) order.push_back(u);
    for (auto u : order) {
        const auto& n = inst.nodes()[u];
        out << "node n" << u;
        if (n.leaf) {
            out << " leaf " << n.value.to_string() << '\n';
            continue;
        }
        out << " inner";
        for (auto c : n.children) out << " n" << c;
        out << " table";
        for (auto row : n.table) out << ' ' << Bits::from_uint(inst.bit_length(), row).to_string();
        out << '\n';
    }
    return out.str();
}

/// View of an instance in which every inner node has exactly d children: missing children are
/// leaves holding 0^b and node functions ignore them. Holds a reference to `base`.
template <TreeInstance I>
class PaddedInstance {
public:
    struct node_type {
        typename I::node_type base{};
        bool pad = false;
    };

    explicit PaddedInstance(const I& base) : base_(&base) {}

    std::size_t fan_in() const { return base_->fan_in(); }
    std::size_t bit_length() const { return base_->bit_length(); }
    std::size_t height() const { return base_->height(); }
    node_type root() const { return {base_->root(), false}; }
    bool is_leaf(const node_type& u) const { return u.pad || base_->is_leaf(u.base); }
    std::size_t degree(const node_type& u) const { return is_leaf(u) ? 0 : fan_in(); }

    std::vector<node_type> children(const node_type& u) const {
        std::vector<node_type> out;
        if (is_leaf(u)) return out;
        for (auto& c : base_->children(u.base)) out.push_back({c, false});
        while (out.size() < fan_in()) out.push_back({base_->root(), true});
        return out;
    }

    Bits leaf_value(const node_type& u) const { return u.pad ? Bits(bit_length()) : base_->leaf_value(u.base); }

    Bits apply(const node_type& u, std::span<const Bits> in) const {
        return base_->apply(u.base, in.first(base_->degree(u.base)));
    }

    const I& base() const { return *base_; }

private:
    const I* base_;
};

template <TreeInstance I>
PaddedInstance<I> pad_instance(const I& inst) {
    return PaddedInstance<I>(inst);
}

}  // namespace catsim::tree
