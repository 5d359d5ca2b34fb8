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
#include <gtest/gtest.h>

#include <random>
#include <string>

#include "catsim/tree/instance.hpp"
#include "catsim/tree/naive.hpp"
#include "support.hpp"

namespace {

using namespace catsim;
using tree::ExplicitInstance;

// Evaluates straight from the node tables, independent of solve_naive.
std::uint64_t eval_by_table(const ExplicitInstance& inst, std::size_t u) {
    const auto& n = inst.nodes()[u];
    if (n.leaf) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < inst.bit_length(); ++j) v |= std::uint64_t{n.value[j]} << j;
        return v;
    }
    std::size_t row = 0;
    for (auto c : n.children) {
        const std::uint64_t v = eval_by_table(inst, c);
        for (std::size_t j = 0; j < inst.bit_length(); ++j) row = (row << 1) | ((v >> j) & 1u);
    }
    return n.table[row];
}

TEST(ParseInstance, SingleLeaf) {
    const auto inst = tree::parse_instance("2 3 1\nnode r leaf 101\n");
    EXPECT_TRUE(inst.is_leaf(inst.root()));
    const auto r = tree::solve_naive(inst);
    EXPECT_EQ(r.value.to_string(), "101");
    EXPECT_EQ(r.apply_calls, 0u);
    EXPECT_EQ(r.depth_peak, 1u);
}

TEST(ParseInstance, XorOfTwoLeaves) {
    const auto inst = tree::parse_instance("2 1 2\nnode r inner a b table 0 1 1 0\nnode a leaf 1\nnode b leaf 0\n");
    EXPECT_EQ(tree::solve_naive(inst).value.to_string(), "1");
}

TEST(ParseInstance, BundledFilesLoad) {
    EXPECT_EQ(tree::solve_naive(tree::load_instance(testkit::kInstanceDir + "/single_leaf.tree")).value.to_string(), "101");
    EXPECT_EQ(tree::solve_naive(tree::load_instance(testkit::kInstanceDir + "/xor.tree")).value.to_string(), "1");
}

TEST(ParseInstance, RejectsMalformedInput) {
    // Cycle.
    EXPECT_THROW(tree::parse_instance("2 1 3\nnode a inner b c table 0 1 1 0\nnode b inner a c table 0 1 1 0\nnode c leaf 1\n"),
                 MalformedInstance);
    // Missing child.
    EXPECT_THROW(tree::parse_instance("2 1 2\nnode a inner b z table 0 1 1 0\nnode b leaf 1\n"), MalformedInstance);
    // Too few table rows.
    EXPECT_THROW(tree::parse_instance("2 1 2\nnode a inner b c table 0 1 1\nnode b leaf 1\nnode c leaf 0\n"),
                 MalformedInstance);
    // Deeper than declared.
    EXPECT_THROW(tree::parse_instance("2 1 1\nnode a inner b c table 0 1 1 0\nnode b leaf 1\nnode c leaf 0\n"),
                 MalformedInstance);
    // Leaf of the wrong width.
    EXPECT_THROW(tree::parse_instance("2 2 1\nnode a leaf 101\n"), MalformedInstance);
    // Fan-in above d.
    EXPECT_THROW(tree::parse_instance("2 1 2\nnode a inner b b b table 0 0 0 0 0 0 0 0\nnode b leaf 1\n"),
                 MalformedInstance);
    // Table too large to write out.
    EXPECT_THROW(tree::parse_instance("3 6 2\nnode a inner b b b table\nnode b leaf 000000\n"), MalformedInstance);
    EXPECT_THROW(tree::parse_instance(""), MalformedInstance);
    EXPECT_THROW(tree::parse_instance("x 1 1\nnode a leaf 1\n"), MalformedInstance);
}

TEST(ParseInstance, FormatRoundTrip) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 30; ++k) {
        const auto inst = testkit::random_instance(rng, {3, 2, 3, true});
        const auto again = tree::parse_instance(tree::format_instance(inst));
        EXPECT_EQ(tree::solve_naive(again).value, tree::solve_naive(inst).value);
        EXPECT_EQ(tree::format_instance(again), tree::format_instance(inst));
    }
}

TEST(SolveNaive, MatchesTableEvaluator) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const testkit::TreeShape shape{2 + rng() % 2, 1 + rng() % 4, 3, true};
        const auto inst = testkit::random_instance(rng, shape);
        const auto v = tree::solve_naive(inst).value;
        EXPECT_EQ(v.to_uint(), eval_by_table(inst, inst.root()));
    }
}

TEST(SolveNaive, SpaceGrowsWithHeight) {
    std::mt19937_64 rng(4);
    std::size_t prev = 0;
    for (std::size_t h = 1; h <= 5; ++h) {
        const auto inst = testkit::random_instance(rng, {2, 3, h, false, 0.0});
        const auto r = tree::solve_naive(inst);
        EXPECT_EQ(r.depth_peak, h);
        EXPECT_GT(r.space_bits_peak, prev);
        prev = r.space_bits_peak;
    }
}

TEST(PadInstance, AppendsZeroLeavesAndKeepsValue) {
    const auto inst = tree::parse_instance("3 1 2\nnode r inner a b table 0 1 1 0\nnode a leaf 1\nnode b leaf 0\n");
    const auto padded = tree::pad_instance(inst);
    const auto kids = padded.children(padded.root());
    ASSERT_EQ(kids.size(), 3u);
    EXPECT_FALSE(kids[0].pad);
    EXPECT_FALSE(kids[1].pad);
    EXPECT_TRUE(kids[2].pad);
    EXPECT_EQ(padded.leaf_value(kids[2]), Bits(1));
    EXPECT_EQ(tree::solve_naive(padded).value, tree::solve_naive(inst).value);
}

TEST(PadInstance, FullTreeUnchanged) {
    std::mt19937_64 rng(8);
    const auto inst = testkit::random_instance(rng, {2, 2, 3, false, 0.0});
    const auto padded = tree::pad_instance(inst);
    auto walk = [&](auto&& self, const auto& u) -> void {
        EXPECT_FALSE(u.pad);
        EXPECT_EQ(padded.degree(u), inst.degree(u.base));
        for (const auto& c : padded.children(u)) self(self, c);
    };
    walk(walk, padded.root());
}

TEST(PadInstance, PreservesNaiveValueOnIrregularTrees) {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 50; ++k) {
        const auto inst = testkit::random_instance(rng, {3, 1 + rng() % 4, 2 + rng() % 3, true});
        EXPECT_EQ(tree::solve_naive(tree::pad_instance(inst)).value, tree::solve_naive(inst).value);
    }
}

}  // namespace
