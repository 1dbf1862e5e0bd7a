// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "oracle.hpp"
#include "tnumlab/verify.hpp"

using namespace tnumlab;

namespace {

Tnum add_without_operand_masks(const Tnum& p, const Tnum& q) {
    const word m = width_mask(p.width());
    const word sv = (p.value() + q.value()) & m;
    const word chi = ((sv + ((p.mask() + q.mask()) & m)) & m) ^ sv;
    return Tnum::raw(sv & ~chi, chi, p.width());
}

AbstractOp broken_add() {
    AbstractOp f = AbstractOp::of(OpId::add);
    f.binary = add_without_operand_masks;
    return f;
}

struct ThreadCap {
    explicit ThreadCap(const char* n) { setenv("TNUMLAB_THREADS", n, 1); }
    ~ThreadCap() { unsetenv("TNUMLAB_THREADS"); }
};

bool same(const SoundnessReport& a, const SoundnessReport& b) {
    if (a.pairs_checked != b.pairs_checked || a.memberships_checked != b.memberships_checked ||
        a.violation_count != b.violation_count || a.violations.size() != b.violations.size())
        return false;
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        const auto& x = a.violations[i];
        const auto& y = b.violations[i];
        if (!(x.p == y.p) || x.q != y.q || x.x != y.x || x.y != y.y || x.z != y.z || !(x.r == y.r)) return false;
    }
    return true;
}

} // namespace

TEST(Soundness, EveryOperatorExhaustiveWidth4) {
    for (OpId op : all_ops) {
        const SoundnessReport r = check_soundness(op, 4);
        EXPECT_TRUE(r.ok()) << to_string(op);
        EXPECT_EQ(r.violation_count, 0u);
        EXPECT_TRUE(r.violations.empty());
        EXPECT_EQ(r.pairs_checked, is_shift(op) ? 81u * 5 : 81u * 81);
        EXPECT_GT(r.cross_check_pairs, 0u);
        EXPECT_EQ(r.cross_check_mismatches, 0u);
    }
}

TEST(Soundness, MembershipCountIsFourToTheTwoN) {
    // Σ over pairs of |γ(P)|·|γ(Q)| = (Σ_P |γ(P)|)^2, and each trit contributes 1 + 1 + 2.
    EXPECT_EQ(check_soundness(OpId::add, 4).memberships_checked, 256u * 256u);
}

TEST(Soundness, SampledWidth64) {
    for (OpId op : all_ops) {
        const SoundnessReport r = check_soundness(op, 64, SweepMode::sampled(2000, 17));
        EXPECT_TRUE(r.ok()) << to_string(op);
        EXPECT_EQ(r.pairs_checked, 2000u);
    }
}

TEST(Soundness, ExhaustiveGuard) {
    try {
        check_soundness(OpId::add, 9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::WidthTooLargeForEnumeration);
    }
}

TEST(Soundness, BrokenOperatorIsCaught) {
    const SoundnessReport r = check_soundness(broken_add(), 4, SweepMode::exhaustive());
    EXPECT_FALSE(r.ok());
    EXPECT_GT(r.violation_count, 0u);
    EXPECT_EQ(r.violations.size(), std::min<std::uint64_t>(r.violation_count, witness_cap));
    EXPECT_EQ(r.cross_check_mismatches, 0u);
    for (const auto& v : r.violations) {
        ASSERT_TRUE(v.q.has_value());
        EXPECT_TRUE(is_member(v.x, v.p));
        EXPECT_TRUE(is_member(v.y, *v.q));
        EXPECT_EQ(v.z, (v.x + v.y) & 15);
        EXPECT_FALSE(is_member(v.z, v.r));
        EXPECT_EQ(v.r, add_without_operand_masks(v.p, *v.q));
    }
    const SoundnessReport s = check_soundness(broken_add(), 32, SweepMode::sampled(5000, 1));
    EXPECT_GT(s.violation_count, 0u);
}

TEST(Soundness, ReportIndependentOfWorkerCount) {
    auto run = [](const char* cap, SweepMode mode, int w) {
        ThreadCap c(cap);
        return check_soundness(broken_add(), w, mode);
    };
    EXPECT_TRUE(same(run("1", SweepMode::exhaustive(), 5), run("4", SweepMode::exhaustive(), 5)));
    EXPECT_TRUE(same(run("1", SweepMode::sampled(3000, 9), 40), run("4", SweepMode::sampled(3000, 9), 40)));
}

TEST(ParallelReduce, MergeOrderIndependentOfWorkers) {
    auto collect = [](unsigned workers) {
        return parallel_reduce(
            997, std::vector<std::size_t>{},
            [](std::size_t b, std::size_t e, std::vector<std::size_t>& acc) {
                for (std::size_t i = b; i < e; ++i)
                    if (i % 7 == 3) acc.push_back(i);
            },
            [](std::vector<std::size_t>& into, std::vector<std::size_t>&& part) {
                into.insert(into.end(), part.begin(), part.end());
            },
            workers);
    };
    const auto one = collect(1);
    EXPECT_EQ(one.size(), 142u);
    EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
    for (unsigned w : {2u, 3u, 8u}) EXPECT_EQ(collect(w), one);
}

TEST(ParallelReduce, ChunkedSumMatchesSerial) {
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
        const auto total = parallel_reduce(
            1000, std::uint64_t{0},
            [](std::size_t b, std::size_t e, std::uint64_t& acc) {
                for (std::size_t i = b; i < e; ++i) acc += i * i;
            },
            [](std::uint64_t& into, std::uint64_t&& part) { into += part; }, workers);
        EXPECT_EQ(total, 332833500u);
    }
}

TEST(Optimality, AddAndSubWidth4) {
    for (OpId op : {OpId::add, OpId::sub}) {
        const OptimalityReport r = check_optimality(op, 4);
        EXPECT_TRUE(r.optimal()) << to_string(op);
        EXPECT_EQ(r.total_pairs, 6561u);
        EXPECT_EQ(r.unsound_pairs, 0u);
    }
}

TEST(Optimality, LogicalOpsAndShifts) {
    for (OpId op : {OpId::and_, OpId::or_, OpId::xor_, OpId::lshift, OpId::rshift})
        EXPECT_TRUE(check_optimality(op, 4).optimal()) << to_string(op);
}

TEST(Optimality, MultipliersSoundButNotOptimal) {
    for (OpId op : {OpId::kern_mul, OpId::bitwise_mul, OpId::our_mul}) {
        const OptimalityReport r = check_optimality(op, 4);
        EXPECT_FALSE(r.optimal()) << to_string(op);
        EXPECT_EQ(r.unsound_pairs, 0u);
        EXPECT_FALSE(r.examples.empty());
        for (const auto& e : r.examples) {
            EXPECT_TRUE(refines(e.optimal, e.result));
            EXPECT_EQ(e.optimal, optimal_abstract(concrete::Mul, e.p, *e.q));
        }
    }
}

TEST(Optimality, OurMulCountsAgainstBruteForceWidth3) {
    const OptimalityReport r = check_optimality(OpId::our_mul, 3);
    std::uint64_t equal = 0, worse = 0;
    const auto ts = oracle::tnums(3);
    for (const Tnum& p : ts)
        for (const Tnum& q : ts) {
            const Tnum best = oracle::best([](word x, word y) { return x * y; }, p, q);
            const Tnum got = our_mul(p, q);
            if (got == best)
                ++equal;
            else if (oracle::finer_or_equal(best, got))
                ++worse;
        }
    EXPECT_EQ(r.equal_pairs, equal);
    EXPECT_EQ(r.strictly_worse_pairs, worse);
    EXPECT_EQ(r.equal_pairs + r.strictly_worse_pairs, 729u);
}

TEST(Optimality, Guard) { EXPECT_THROW(check_optimality(OpId::add, 7), Error); }

TEST(CarryBits, Examples) {
    EXPECT_EQ(carry_in_bits(1, 1, 2), 0b10u);
    for (word x = 0; x < 16; ++x) EXPECT_EQ(carry_in_bits(0, x, 4), 0u);
    EXPECT_EQ(borrow_in_bits(0, 1, 3), 6u);
}

TEST(CarryBits, MatchRippleAdderAndSubtractor) {
    for (int w = 1; w <= 5; ++w)
        for (word p = 0; p <= oracle::full(w); ++p)
            for (word q = 0; q <= oracle::full(w); ++q) {
                word carries = 0, borrows = 0;
                unsigned c = 0, b = 0;
                for (int k = 0; k < w; ++k) {
                    const unsigned pk = (p >> k) & 1, qk = (q >> k) & 1;
                    carries |= static_cast<word>(c) << k;
                    borrows |= static_cast<word>(b) << k;
                    c = (pk & qk) | (c & (pk ^ qk));
                    b = ((pk ^ 1) & qk) | (b & (pk ^ qk ^ 1));
                }
                ASSERT_EQ(carry_in_bits(p, q, w), carries);
                ASSERT_EQ(borrow_in_bits(p, q, w), borrows);
            }
}

TEST(Lemmas, AddAndSubHold) {
    for (int w = 1; w <= 4; ++w) {
        const LemmaReport a = check_add_lemmas(w);
        const LemmaReport s = check_sub_lemmas(w);
        EXPECT_TRUE(a.ok()) << w;
        EXPECT_TRUE(s.ok()) << w;
        EXPECT_EQ(a.lemmas.size(), 4u);
        for (const auto& l : a.lemmas) EXPECT_EQ(l.cases, a.pairs_checked);
    }
}

TEST(Lemmas, SwappedBoundsAreReported) {
    const LemmaReport a = check_add_lemmas(3, true);
    EXPECT_FALSE(a.ok());
    EXPECT_GT(a.find("min_bound")->violations, 0u);
    EXPECT_GT(a.find("max_bound")->violations, 0u);
    EXPECT_TRUE(a.find("min_bound")->witness.has_value());
    EXPECT_FALSE(check_sub_lemmas(3, true).ok());
}

TEST(Lemmas, Guard) { EXPECT_THROW(check_add_lemmas(7), Error); }

TEST(Lemmas, MultiplierSupport) {
    for (int w = 1; w <= 6; ++w) EXPECT_EQ(check_union_with_zero(w).violations, 0u);
    for (int w = 1; w <= 5; ++w) {
        const LemmaResult d = check_decomposed_summation(w, 300, 21);
        EXPECT_EQ(d.violations, 0u);
        EXPECT_GT(d.cases, 0u);
    }
    EXPECT_EQ(check_partial_products(64, 100000, 4).violations, 0u);
    EXPECT_EQ(check_partial_products(7, 10000, 4).violations, 0u);
}

TEST(Counterexamples, NonAssociativeAdd) {
    EXPECT_FALSE(find_nonassociative_add(1).has_value());
    std::optional<Counterexample> ce;
    for (int w = 1; w <= 4 && !ce; ++w) ce = find_nonassociative_add(w);
    ASSERT_TRUE(ce.has_value());
    const auto [lhs, rhs] = replay(*ce);
    EXPECT_EQ(lhs, ce->lhs);
    EXPECT_EQ(rhs, ce->rhs);
    EXPECT_NE(lhs, rhs);
}

TEST(Counterexamples, NonInverseAddSub) {
    std::optional<Counterexample> ce;
    for (int w = 1; w <= 3 && !ce; ++w) ce = find_noninverse_add_sub(w);
    ASSERT_TRUE(ce.has_value());
    const auto [lhs, rhs] = replay(*ce);
    EXPECT_EQ(lhs, ce->lhs);
    EXPECT_NE(lhs, rhs);
    EXPECT_TRUE(refines(ce->operands[0], lhs));
}

TEST(Counterexamples, KernMulNotCommutative) {
    auto ce = find_noncommutative(OpId::kern_mul, 6, 1000000, 1);
    ASSERT_TRUE(ce.has_value());
    const auto [lhs, rhs] = replay(*ce);
    EXPECT_EQ(lhs, ce->lhs);
    EXPECT_EQ(rhs, ce->rhs);
    EXPECT_NE(lhs, rhs);
}

TEST(Counterexamples, CommutativeOperatorsHaveNone) {
    EXPECT_FALSE(find_noncommutative(OpId::add, 4).has_value());
    EXPECT_FALSE(find_noncommutative(OpId::xor_, 4).has_value());
}

TEST(Counterexamples, SearchRecordsEveryMultiplier) {
    const CounterexampleSearch s = find_counterexamples(4, 20000, 3);
    EXPECT_EQ(s.found.size() + s.not_found.size(), 2u + 5u);
    for (const auto& ce : s.found) {
        const auto [lhs, rhs] = replay(ce);
        EXPECT_EQ(lhs, ce.lhs);
        EXPECT_EQ(rhs, ce.rhs);
        EXPECT_NE(lhs, rhs);
    }
    bool our_mul_recorded = false;
    for (const auto& ce : s.found) our_mul_recorded |= ce.op == OpId::our_mul && ce.property == Property::noncomm;
    for (const auto& n : s.not_found) our_mul_recorded |= n == "noncomm(our_mul)";
    EXPECT_TRUE(our_mul_recorded);
}
