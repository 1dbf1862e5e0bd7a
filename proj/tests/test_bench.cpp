// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <array>
#include <sstream>

#include "tnumlab/bench.hpp"

using namespace tnumlab;

TEST(Sampler, PerTritFrequencies) {
    Rng rng(1);
    std::array<std::uint64_t, 3> counts{};
    const int n = 300000;
    for (int i = 0; i < n; ++i) {
        const Tnum t = sample_tnum(1, rng);
        ++counts[t.mask() ? 2 : t.value()];
    }
    double chi2 = 0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - n / 3.0;
        chi2 += d * d / (n / 3.0);
        EXPECT_NEAR(static_cast<double>(c) / n, 1.0 / 3.0, 0.01);
    }
    // 2 degrees of freedom, p = 0.001.
    EXPECT_LT(chi2, 13.8);
}

TEST(Sampler, TritFrequenciesAtEveryPositionWidth64) {
    Rng rng(2);
    std::array<std::array<int, 3>, 64> counts{};
    const int n = 60000;
    for (int i = 0; i < n; ++i) {
        const Tnum t = sample_tnum(64, rng);
        for (int k = 0; k < 64; ++k) ++counts[k][static_cast<int>(t.trit_at(k))];
    }
    for (const auto& c : counts)
        for (int v : c) EXPECT_NEAR(static_cast<double>(v) / n, 1.0 / 3.0, 0.015);
}

TEST(Sampler, WellFormedAndDeterministic) {
    for (Sampler s : {Sampler::per_trit_uniform, Sampler::uniform_vm_normalized}) {
        Rng a(42), b(42);
        for (int i = 0; i < 100000; ++i) {
            const Tnum x = sample_tnum(64, a, s);
            ASSERT_TRUE(x.is_well_formed());
            if (i < 100) {
                ASSERT_EQ(x, sample_tnum(64, b, s));
            }
        }
        Rng c(5);
        for (int i = 0; i < 1000; ++i) {
            const Tnum x = sample_tnum(7, c, s);
            ASSERT_EQ(x.value() | x.mask(), (x.value() | x.mask()) & 127);
        }
    }
    EXPECT_EQ(parse_sampler("uniform_vm_normalized"), Sampler::uniform_vm_normalized);
    EXPECT_THROW(parse_sampler("gaussian"), Error);
}

TEST(Sampler, MembersBelongToTnum) {
    Rng rng(8);
    for (int i = 0; i < 10000; ++i) {
        const Tnum t = sample_tnum(64, rng);
        ASSERT_TRUE(t.contains(sample_member(t, rng)));
    }
}

TEST(Bench, SmallRunIsConsistent) {
    BenchConfig cfg;
    cfg.ops = {OpId::kern_mul, OpId::our_mul, OpId::add};
    cfg.n_pairs = 2000;
    cfg.trials = 3;
    cfg.seed = 77;
    const BenchReport r = run_bench(cfg);
    ASSERT_EQ(r.ops.size(), 3u);
    EXPECT_EQ(r.audited_pairs, 1000u);
    for (const auto& o : r.ops) {
        EXPECT_EQ(o.samples, 2000u);
        EXPECT_EQ(o.min_times.size(), 2000u);
        EXPECT_EQ(o.audit_mismatches, 0u);
        long double sum = 0;
        for (auto t : o.min_times) sum += t;
        EXPECT_NEAR(o.mean, static_cast<double>(sum / 2000), 1e-6);
        EXPECT_LE(o.p10, o.p50);
        EXPECT_LE(o.p50, o.p90);
        EXPECT_LE(o.p90, o.p99);
    }
    // Same seed, same inputs and outputs.
    const BenchReport again = run_bench(cfg);
    EXPECT_EQ(again.input_checksum, r.input_checksum);
    for (std::size_t i = 0; i < r.ops.size(); ++i) EXPECT_EQ(again.ops[i].output_checksum, r.ops[i].output_checksum);
    cfg.seed = 78;
    EXPECT_NE(run_bench(cfg).input_checksum, r.input_checksum);
}

TEST(Bench, ClockFallback) {
    BenchConfig cfg;
    cfg.ops = {OpId::our_mul};
    cfg.n_pairs = 100;
    cfg.trials = 2;
    cfg.allow_tsc = false;
    const BenchReport r = run_bench(cfg);
    EXPECT_EQ(r.timer.kind, TimerKind::steady_clock);
    EXPECT_EQ(r.timer.unit, "ns");
}

TEST(Bench, MoreTrialsNeverRaiseTheMinimumMuch) {
    BenchConfig one;
    one.ops = {OpId::kern_mul};
    one.n_pairs = 3000;
    one.trials = 1;
    BenchConfig ten = one;
    ten.trials = 10;
    const double m1 = run_bench(one).ops[0].mean;
    const double m10 = run_bench(ten).ops[0].mean;
    EXPECT_LE(m10, m1 * 1.10);
}

TEST(Bench, RejectsBadConfig) {
    BenchConfig cfg;
    cfg.n_pairs = 0;
    EXPECT_THROW(run_bench(cfg), Error);
    cfg.n_pairs = 1;
    cfg.trials = 0;
    EXPECT_THROW(run_bench(cfg), Error);
    cfg.trials = 1;
    cfg.ops = {OpId::lshift};
    EXPECT_THROW(run_bench(cfg), Error);
}

TEST(Bench, CsvLayout) {
    BenchConfig cfg;
    cfg.ops = {OpId::our_mul};
    cfg.n_pairs = 5;
    cfg.trials = 1;
    std::ostringstream out;
    write_bench_csv(out, run_bench(cfg));
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    EXPECT_TRUE(header == "op,pair_index,min_time_cycles" || header == "op,pair_index,min_time_ns");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("our_mul,0,", 0), 0u);
}
