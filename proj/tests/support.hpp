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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "catsim/bits.hpp"
#include "catsim/gf/field.hpp"
#include "catsim/tree/instance.hpp"
#include "catsim/tree/meter.hpp"

namespace catsim::testkit {

inline const std::string kMachineDir = CATSIM_MACHINE_DIR;
inline const std::string kInstanceDir = CATSIM_INSTANCE_DIR;

inline Bits random_bits(std::mt19937_64& rng, std::size_t n) {
    Bits out(n);
    for (std::size_t k = 0; k < n; ++k) out.set(k, rng() & 1u);
    return out;
}

struct TreeShape {
    std::size_t d = 2, b = 1, h = 1;
    /// Inner nodes get a random degree in [2, d] instead of exactly d.
    bool irregular = false;
    /// Chance that a node above the bottom level is a leaf.
    double leaf_chance = 0.25;
};

/// Random tree (no shared subtrees) whose longest path has at most shape.h nodes. The root is an
/// inner node whenever h >= 2.
inline tree::ExplicitInstance random_instance(std::mt19937_64& rng, const TreeShape& shape) {
    using Node = tree::ExplicitInstance::Node;
    std::vector<Node> nodes;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto build = [&](auto&& self, std::size_t level, bool force_inner) -> std::size_t {
        const std::size_t id = nodes.size();
        nodes.emplace_back();
        const bool leaf = level == shape.h || (!force_inner && coin(rng) < shape.leaf_chance);
        if (leaf) {
            nodes[id].leaf = true;
            nodes[id].value = random_bits(rng, shape.b);
            return id;
        }
        const std::size_t deg =
            shape.irregular ? std::uniform_int_distribution<std::size_t>(2, shape.d)(rng) : shape.d;
        std::vector<std::size_t> kids;
        for (std::size_t r = 0; r < deg; ++r) kids.push_back(self(self, level + 1, false));
        Node& n = nodes[id];
        n.leaf = false;
        n.children = kids;
        const std::size_t rows = std::size_t{1} << (deg * shape.b);
        const std::uint64_t mask = shape.b == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << shape.b) - 1;
        n.table.resize(rows);
        for (auto& row : n.table) row = rng() & mask;
        return id;
    };
    build(build, 1, shape.h >= 2);
    return tree::ExplicitInstance(shape.d, shape.b, shape.h, std::move(nodes));
}

/// Rough operation count of solve_cook_mertz on the padded instance, used to keep randomized
/// suites within their time limits.
inline double cm_cost_estimate(const tree::ExplicitInstance& inst, tree::ExtensionMode mode) {
    const auto fc = tree::choose_field(inst.fan_in(), inst.bit_length(), mode);
    const double ext = static_cast<double>(std::uint64_t{1} << (inst.fan_in() * inst.bit_length())) *
                       static_cast<double>(inst.fan_in() * fc.pack_len);
    auto cost = [&](auto&& self, std::size_t u) -> double {
        if (inst.is_leaf(u)) return 1.0;
        double kids = static_cast<double>(inst.fan_in() - inst.degree(u));
        for (auto c : inst.children(u)) kids += self(self, c);
        return static_cast<double>(fc.m) * (2.0 * kids + ext);
    };
    return cost(cost, inst.root());
}

/// Sparse multivariate polynomial over GF(2^q) with total degree below a given bound.
struct SparsePoly {
    struct Term {
        gf::Element coeff;
        std::vector<std::uint64_t> exps;
    };
    std::size_t vars = 0;
    std::vector<Term> terms;

    gf::Element eval(const gf::Field& F, std::span<const gf::Element> x) const {
        gf::Element acc = gf::Field::zero();
        for (const auto& t : terms) {
            gf::Element v = t.coeff;
            for (std::size_t k = 0; k < vars; ++k) v = F.mul(v, F.pow(x[k], t.exps[k]));
            acc = gf::Field::add(acc, v);
        }
        return acc;
    }
};

inline SparsePoly random_poly(std::mt19937_64& rng, const gf::Field& F, std::size_t vars, std::uint64_t degree_below,
                              std::size_t terms) {
    SparsePoly P;
    P.vars = vars;
    for (std::size_t t = 0; t < terms; ++t) {
        SparsePoly::Term term;
        term.coeff = gf::Element{static_cast<std::uint32_t>(rng() & F.group_order())};
        std::uint64_t budget = rng() % degree_below;  // total degree of this term
        term.exps.assign(vars, 0);
        for (std::size_t k = 0; k + 1 < vars; ++k) {
            const std::uint64_t e = budget ? rng() % (budget + 1) : 0;
            term.exps[k] = e;
            budget -= e;
        }
        term.exps[vars - 1] = budget;
        std::shuffle(term.exps.begin(), term.exps.end(), rng);
        P.terms.push_back(std::move(term));
    }
    return P;
}

}  // namespace catsim::testkit
