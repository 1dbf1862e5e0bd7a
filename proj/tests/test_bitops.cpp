// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "tnumlab/bitops.hpp"

using namespace tnumlab;

TEST(BitOps, Examples) {
    EXPECT_EQ(tnum_and(make(0b01, 0b10, 2), make(0b11, 0, 2)), make(0b01, 0b10, 2));
    EXPECT_EQ(tnum_or(make(0b00, 0b01, 2), make(0b10, 0, 2)), make(0b10, 0b01, 2));
    EXPECT_EQ(tnum_lshift(make(0b01, 0b10, 3), 1), make(0b010, 0b100, 3));
    EXPECT_EQ(tnum_rshift(make(0b010, 0b100, 3), 1), make(0b001, 0b010, 3));
    EXPECT_EQ(tnum_lshift(top(5), 5), constant(0, 5));
    EXPECT_EQ(tnum_rshift(top(5), 9), constant(0, 5));
    EXPECT_EQ(tnum_lshift(top(64), 64), constant(0, 64));
}

TEST(BitOps, Arsh) {
    EXPECT_EQ(tnum_arsh(constant(0b1000, 4), 1), constant(0b1100, 4));
    EXPECT_EQ(tnum_arsh(make(0b0000, 0b1000, 4), 1), make(0b0000, 0b1100, 4));
    EXPECT_EQ(tnum_arsh(constant(0b0100, 4), 1), constant(0b0010, 4));
    // Past the width: every trit becomes the sign trit.
    EXPECT_EQ(tnum_arsh(constant(0b1000, 4), 4), constant(0b1111, 4));
    EXPECT_EQ(tnum_arsh(constant(0b0111, 4), 7), constant(0, 4));
    EXPECT_EQ(tnum_arsh(make(0b0001, 0b1000, 4), 100), make(0, 0b1111, 4));
    EXPECT_EQ(tnum_arsh(make(0, 1ull << 63, 64), 63), top(64));
}

TEST(BitOps, XorWithZeroIsIdentity) {
    for (int w = 1; w <= 6; ++w)
        for (const Tnum& t : oracle::tnums(w)) ASSERT_EQ(tnum_xor(t, constant(0, w)), t);
}

TEST(BitOps, WidthMismatch) {
    EXPECT_THROW(tnum_and(top(3), top(4)), Error);
    EXPECT_THROW(tnum_or(top(3), top(4)), Error);
    EXPECT_THROW(tnum_xor(top(3), top(4)), Error);
}

// and/or/xor equal the brute-force best abstraction on every pair.
TEST(BitOps, LogicalOperatorsAreOptimalUpToWidth5) {
    for (int w = 1; w <= 5; ++w) {
        const auto ts = oracle::tnums(w);
        for (const Tnum& p : ts)
            for (const Tnum& q : ts) {
                ASSERT_EQ(tnum_and(p, q), oracle::best([](word x, word y) { return x & y; }, p, q));
                ASSERT_EQ(tnum_or(p, q), oracle::best([](word x, word y) { return x | y; }, p, q));
                ASSERT_EQ(tnum_xor(p, q), oracle::best([](word x, word y) { return x ^ y; }, p, q));
            }
    }
}

namespace {

// Two's complement arithmetic shift written with explicit sign bits.
word ref_arsh(word x, unsigned k, int w) {
    const word sign = (x >> (w - 1)) & 1;
    word out = x;
    for (unsigned i = 0; i < k && i < static_cast<unsigned>(w); ++i) out = (out >> 1) | (sign << (w - 1));
    return out & oracle::full(w);
}

} // namespace

TEST(BitOps, ShiftsSoundEveryAmountUpToWidth6) {
    std::uint64_t arsh_equal = 0, arsh_total = 0;
    for (int w = 1; w <= 6; ++w)
        for (const Tnum& t : oracle::tnums(w))
            for (unsigned k = 0; k <= static_cast<unsigned>(w) + 1; ++k) {
                const Tnum kq = Tnum::raw(0, 0, w);
                auto lsh = [&](word x, word) { return k >= static_cast<unsigned>(w) ? 0 : x << k; };
                auto rsh = [&](word x, word) { return k >= static_cast<unsigned>(w) ? 0 : x >> k; };
                auto ash = [&](word x, word) { return ref_arsh(x, k, w); };
                ASSERT_EQ(tnum_lshift(t, k), oracle::best(lsh, t, kq));
                ASSERT_EQ(tnum_rshift(t, k), oracle::best(rsh, t, kq));
                const Tnum a = tnum_arsh(t, k);
                ASSERT_TRUE(oracle::covers(ash, t, kq, a));
                ++arsh_total;
                arsh_equal += a == oracle::best(ash, t, kq);
            }
    RecordProperty("arsh_optimal_pairs", std::to_string(arsh_equal) + "/" + std::to_string(arsh_total));
}

TEST(BitOps, ClosureRandomWidth64) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200000; ++i) {
        const word pm = rng(), qm = rng();
        const Tnum p = make(rng() & ~pm, pm, 64);
        const Tnum q = make(rng() & ~qm, qm, 64);
        const unsigned k = static_cast<unsigned>(rng() % 70);
        ASSERT_TRUE(tnum_and(p, q).is_well_formed());
        ASSERT_TRUE(tnum_or(p, q).is_well_formed());
        ASSERT_TRUE(tnum_xor(p, q).is_well_formed());
        ASSERT_TRUE(tnum_lshift(p, k).is_well_formed());
        ASSERT_TRUE(tnum_rshift(p, k).is_well_formed());
        ASSERT_TRUE(tnum_arsh(p, k).is_well_formed());
    }
}
