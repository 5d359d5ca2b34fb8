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

#include <cstdint>
#include <random>
#include <stdexcept>

#include "catsim/bits.hpp"
#include "catsim/gf/field.hpp"
#include "catsim/gf/pack.hpp"

namespace {

using namespace catsim;
using gf::Element;
using gf::Field;

// Trial division by every polynomial of degree 1..deg/2.
bool irreducible_by_trial_division(std::uint64_t f) {
    const int df = gf::poly2::degree(f);
    for (std::uint64_t g = 2; gf::poly2::degree(g) <= df / 2; ++g)
        if (gf::poly2::mod(f, g) == 0) return false;
    return df >= 1;
}

// Schoolbook multiply-then-reduce, written without the field's helpers.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint64_t modulus, unsigned q) {
    std::uint64_t acc = 0;
    for (unsigned k = 0; k < q; ++k)
        if ((b >> k) & 1u) acc ^= std::uint64_t{a} << k;
    for (int k = 2 * static_cast<int>(q) - 2; k >= static_cast<int>(q); --k)
        if ((acc >> k) & 1u) acc ^= modulus << (k - static_cast<int>(q));
    return static_cast<std::uint32_t>(acc);
}

Element rand_elem(std::mt19937_64& rng, const Field& F) { return Element{static_cast<std::uint32_t>(rng() & F.group_order())}; }

TEST(FieldNew, Gf16UsesXFourPlusXPlusOne) {
    const Field F(4);
    EXPECT_EQ(F.modulus(), 0b10011u);
    // The least irreducible quartic: every smaller monic quartic has a factor.
    for (std::uint64_t f = 0b10000; f < 0b10011; ++f) EXPECT_FALSE(irreducible_by_trial_division(f));
    EXPECT_TRUE(irreducible_by_trial_division(0b10011));
}

TEST(FieldNew, ModulusIsLeastIrreducibleForEveryDegree) {
    for (unsigned q = 2; q <= 16; q += 2) {
        const Field F(q);
        EXPECT_TRUE(irreducible_by_trial_division(F.modulus())) << q;
        for (std::uint64_t f = std::uint64_t{1} << q; f < F.modulus(); ++f)
            EXPECT_FALSE(irreducible_by_trial_division(f)) << q << ' ' << f;
    }
}

TEST(FieldNew, BenOrAgreesWithTrialDivision) {
    for (std::uint64_t f = 2; f < (1u << 13); ++f) EXPECT_EQ(gf::poly2::irreducible(f), irreducible_by_trial_division(f)) << f;
}

TEST(FieldNew, OmegaIsXWithOrder15InGf16) {
    const Field F(4);
    EXPECT_EQ(F.omega(), Element{0b0010});
    Element p = F.one();
    for (int k = 1; k <= 15; ++k) {
        p = F.mul(p, F.omega());
        if (k < 15) { EXPECT_NE(p, F.one()) << k; }
    }
    EXPECT_EQ(p, F.one());
}

TEST(FieldNew, OmegaIsLeastPrimitive) {
    for (unsigned q : {2u, 4u, 6u, 8u, 10u}) {
        const Field F(q);
        const std::uint64_t m = F.group_order();
        auto order = [&](Element g) {
            Element p = g;
            std::uint64_t k = 1;
            while (p != F.one()) {
                p = F.mul_reference(p, g);
                ++k;
            }
            return k;
        };
        EXPECT_EQ(order(F.omega()), m) << q;
        for (std::uint32_t g = 2; g < F.omega().bits; ++g) EXPECT_LT(order(Element{g}), m) << q << ' ' << g;
    }
}

TEST(FieldNew, RejectsOddOrOutOfRangeDegrees) {
    EXPECT_THROW(Field(3), std::invalid_argument);
    EXPECT_THROW(Field(0), std::invalid_argument);
    EXPECT_THROW(Field(34), std::invalid_argument);
    EXPECT_NO_THROW(Field(32));
}

TEST(FieldOps, HandExample) {
    const Field F(4);
    EXPECT_EQ(F.mul(Element{0b0010}, Element{0b1001}), Element{0b0001});
    EXPECT_EQ(slow_mul(0b0010, 0b1001, F.modulus(), 4), 0b0001u);
}

TEST(FieldOps, MulMatchesSchoolbookOracle) {
    std::mt19937_64 rng(11);
    for (unsigned q : {4u, 8u, 10u, 16u, 20u, 32u}) {
        const Field F(q);
        for (int k = 0; k < 2000; ++k) {
            const Element a = rand_elem(rng, F), b = rand_elem(rng, F);
            ASSERT_EQ(F.mul(a, b).bits, slow_mul(a.bits, b.bits, F.modulus(), q)) << q;
            ASSERT_EQ(F.mul_reference(a, b), F.mul(a, b)) << q;
        }
    }
}

TEST(FieldOps, AddIsSelfInverse) {
    std::mt19937_64 rng(12);
    const Field F(8);
    for (int k = 0; k < 1000; ++k) {
        const Element a = rand_elem(rng, F);
        EXPECT_EQ(Field::add(a, a), Field::zero());
    }
}

TEST(FieldOps, OmegaToTheGroupOrderIsOne) {
    for (unsigned q : {2u, 4u, 8u, 12u, 18u, 24u, 32u}) {
        const Field F(q);
        EXPECT_EQ(F.pow(F.omega(), F.group_order()), F.one()) << q;
    }
}

TEST(FieldOps, InverseOfZeroIsDomainError) {
    const Field F(8);
    EXPECT_THROW(F.inv(Field::zero()), std::domain_error);
}

class FieldAxioms : public ::testing::TestWithParam<unsigned> {};

TEST_P(FieldAxioms, HoldOnRandomTriples) {
    const Field F(GetParam());
    std::mt19937_64 rng(GetParam());
    for (int k = 0; k < 10000; ++k) {
        const Element a = rand_elem(rng, F), b = rand_elem(rng, F), c = rand_elem(rng, F);
        ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
        ASSERT_EQ(F.mul(a, b), F.mul(b, a));
        ASSERT_EQ(F.mul(a, Field::add(b, c)), Field::add(F.mul(a, b), F.mul(a, c)));
        ASSERT_EQ(Field::add(Field::add(a, b), c), Field::add(a, Field::add(b, c)));
        ASSERT_EQ(F.mul(a, F.one()), a);
        ASSERT_EQ(Field::add(a, Field::zero()), a);
        if (a != Field::zero()) { ASSERT_EQ(F.mul(a, F.inv(a)), F.one()); }
        const Element s = Field::add(a, b);
        ASSERT_EQ(F.mul(s, s), Field::add(F.mul(a, a), F.mul(b, b)));
    }
}

INSTANTIATE_TEST_SUITE_P(Degrees, FieldAxioms, ::testing::Values(4u, 8u, 10u, 22u));

TEST(FieldOps, RootOfUnitySums) {
    for (unsigned q : {4u, 6u, 8u}) {
        const Field F(q);
        const std::uint64_t m = F.group_order();
        for (std::uint64_t k = 0; k <= 2 * m; ++k) {
            Element s = Field::zero();
            for (std::uint64_t i = 1; i <= m; ++i) s = Field::add(s, F.pow(F.omega(), i * k));
            EXPECT_EQ(s, k % m == 0 ? F.one() : Field::zero()) << q << ' ' << k;
        }
    }
}

TEST(PackSet, SizesAndLengths) {
    const Field F4(4);
    const gf::PackSet S4(F4);
    EXPECT_EQ(S4.size(), 4u);
    EXPECT_EQ(S4.word_bits(), 2u);
    EXPECT_EQ(S4.pack_len(8), 4u);
    const Field F6(6);
    EXPECT_EQ(gf::PackSet(F6).pack_len(4), 2u);
}

TEST(PackSet, RoundTrip) {
    std::mt19937_64 rng(5);
    for (unsigned q : {2u, 4u, 6u, 10u}) {
        const Field F(q);
        const gf::PackSet S(F);
        for (int k = 0; k < 1000; ++k) {
            const std::size_t b = 1 + rng() % 40;
            Bits w(b);
            for (std::size_t j = 0; j < b; ++j) w.set(j, rng() & 1u);
            const auto packed = S.pack(w, S.pack_len(b));
            for (auto e : packed) ASSERT_TRUE(S.contains(e));
            ASSERT_EQ(S.unpack(packed, b), w);
        }
    }
}

TEST(PackSet, ZeroPacksToZeros) {
    const Field F(8);
    const gf::PackSet S(F);
    for (auto e : S.pack(Bits(13), S.pack_len(13))) EXPECT_EQ(e, Field::zero());
}

TEST(PackSet, UnpackRejectsElementsOutsideSAndSetPadding) {
    const Field F(8);
    const gf::PackSet S(F);
    const std::vector<Element> outside{Element{0x10}};
    EXPECT_THROW(S.unpack(outside, 4), gf::CorruptionError);
    const std::vector<Element> padded{Element{0x1}, Element{0x8}};
    EXPECT_THROW(S.unpack(padded, 6), gf::CorruptionError);
    EXPECT_NO_THROW(S.unpack(padded, 8));
}

TEST(PackSet, LagrangeBasisMatchesProductFormula) {
    std::mt19937_64 rng(9);
    const Field F(8);
    const gf::PackSet S(F);
    for (int k = 0; k < 200; ++k) {
        const Element z = rand_elem(rng, F);
        for (std::uint32_t s = 0; s < S.size(); ++s) {
            // prod_{s' != s} (z - s') / (s - s')
            Element num = F.one(), den = F.one();
            for (std::uint32_t t = 0; t < S.size(); ++t) {
                if (t == s) continue;
                num = F.mul(num, Field::add(z, Element{t}));
                den = F.mul(den, Field::add(Element{s}, Element{t}));
            }
            ASSERT_EQ(S.lagrange(Element{s}, z), F.div(num, den));
        }
    }
}

}  // namespace
