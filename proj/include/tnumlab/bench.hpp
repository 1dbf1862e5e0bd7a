// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#define TNUMLAB_HAVE_TSC 1
#endif

#if defined(__linux__)
#include <sched.h>
#endif

#include "tnumlab/ops.hpp"
#include "tnumlab/sample.hpp"

namespace tnumlab {

enum class TimerKind { tsc, steady_clock };

constexpr std::string_view to_string(TimerKind k) noexcept { return k == TimerKind::tsc ? "tsc" : "steady_clock"; }

struct Timer {
    TimerKind kind;
    std::string unit;       // "cycles" or "ns"
    double resolution;      // smallest representable step in `unit`

    static Timer detect(bool allow_tsc = true) {
#ifdef TNUMLAB_HAVE_TSC
        if (allow_tsc) return {TimerKind::tsc, "cycles", 1.0};
#endif
        (void)allow_tsc;
        using clock = std::chrono::steady_clock;
        if (!clock::is_steady) throw Error(Errc::TimerUnavailable, "no monotonic clock");
        const double ns = 1e9 * static_cast<double>(clock::period::num) / static_cast<double>(clock::period::den);
        return {TimerKind::steady_clock, "ns", ns};
    }
};

namespace detail {

inline std::uint64_t tsc_begin() noexcept {
#ifdef TNUMLAB_HAVE_TSC
    _mm_lfence();
    const std::uint64_t t = __rdtsc();
    _mm_lfence();
    return t;
#else
    return 0;
#endif
}

inline std::uint64_t tsc_end() noexcept {
#ifdef TNUMLAB_HAVE_TSC
    unsigned aux;
    const std::uint64_t t = __rdtscp(&aux);
    _mm_lfence();
    return t;
#else
    return 0;
#endif
}

inline std::uint64_t clock_now() noexcept {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
            .count());
}

template <typename T>
inline void keep(const T& value) noexcept {
    asm volatile("" : : "g"(&value) : "memory");
}

} // namespace detail

struct BenchConfig {
    std::vector<OpId> ops{OpId::kern_mul, OpId::bitwise_mul_opt, OpId::our_mul};
    std::uint64_t n_pairs = 4'000'000;
    unsigned trials = 10;
    std::uint64_t seed = 0;
    Sampler sampler = Sampler::per_trit_uniform;
    std::optional<int> pin_hint;
    bool allow_tsc = true;
    std::size_t audit_pairs = 1000;
};

struct OpTiming {
    OpId op;
    std::uint64_t samples = 0;
    std::vector<std::uint64_t> min_times; // per pair, in input order
    double mean = 0;
    std::uint64_t p10 = 0, p50 = 0, p90 = 0, p99 = 0;
    std::uint64_t output_checksum = 0;
    std::uint64_t audit_mismatches = 0;
};

struct BenchReport {
    Timer timer;
    std::uint64_t seed;
    Sampler sampler;
    std::uint64_t n_pairs;
    unsigned trials;
    std::uint64_t input_checksum;
    std::optional<int> pinned_cpu; // set when the pin hint was honored
    std::size_t audited_pairs;
    std::vector<OpTiming> ops;

    [[nodiscard]] const OpTiming* find(OpId op) const {
        for (const auto& o : ops)
            if (o.op == op) return &o;
        return nullptr;
    }
};

/// Width-64 input pairs for a given seed and sampler.
inline std::vector<std::pair<Tnum, Tnum>> bench_inputs(std::uint64_t n, std::uint64_t seed, Sampler sampler) {
    Rng rng(seed);
    std::vector<std::pair<Tnum, Tnum>> pairs;
    pairs.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const Tnum p = sample_tnum(64, rng, sampler);
        const Tnum q = sample_tnum(64, rng, sampler);
        pairs.emplace_back(p, q);
    }
    return pairs;
}

inline std::uint64_t fold_checksum(std::uint64_t h, word x) noexcept {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

inline std::uint64_t input_checksum(const std::vector<std::pair<Tnum, Tnum>>& pairs) {
    std::uint64_t h = 0;
    for (const auto& [p, q] : pairs) {
        h = fold_checksum(h, p.value());
        h = fold_checksum(h, p.mask());
        h = fold_checksum(h, q.value());
        h = fold_checksum(h, q.mask());
    }
    return h;
}

namespace detail {

inline std::uint64_t percentile(const std::vector<std::uint64_t>& sorted, double pct) {
    if (sorted.empty()) return 0;
    // Nearest rank.
    auto rank = static_cast<std::size_t>(pct / 100.0 * static_cast<double>(sorted.size()) + 0.999999);
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

template <typename Fn>
OpTiming time_op(OpId op, Fn fn, const std::vector<std::pair<Tnum, Tnum>>& pairs, unsigned trials,
                 const Timer& timer, std::size_t audit) {
    OpTiming out{op, 0, {}, 0, 0, 0, 0, 0, 0, 0};
    out.samples = pairs.size();
    out.min_times.resize(pairs.size());
    std::vector<Tnum> audited;
    audited.reserve(std::min(audit, pairs.size()));
    const bool tsc = timer.kind == TimerKind::tsc;
    std::uint64_t sink = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Tnum& p = pairs[i].first;
        const Tnum& q = pairs[i].second;
        std::uint64_t best = ~std::uint64_t{0};
        Tnum r = Tnum::raw(0, 0, 64);
        for (unsigned t = 0; t < trials; ++t) {
            const std::uint64_t t0 = tsc ? tsc_begin() : clock_now();
            r = fn(p, q);
            keep(r);
            const std::uint64_t t1 = tsc ? tsc_end() : clock_now();
            best = std::min(best, t1 - t0);
        }
        out.min_times[i] = best;
        sink = fold_checksum(sink, r.value() ^ (r.mask() * 0x100000001b3ull));
        if (i < audit) audited.push_back(r);
    }
    out.output_checksum = sink;
    for (std::size_t i = 0; i < audited.size(); ++i)
        if (!(apply(op, pairs[i].first, pairs[i].second) == audited[i])) ++out.audit_mismatches;

    long double total = 0;
    for (auto v : out.min_times) total += v;
    out.mean = out.min_times.empty() ? 0.0 : static_cast<double>(total / out.min_times.size());
    std::vector<std::uint64_t> sorted = out.min_times;
    std::sort(sorted.begin(), sorted.end());
    out.p10 = percentile(sorted, 10);
    out.p50 = percentile(sorted, 50);
    out.p90 = percentile(sorted, 90);
    out.p99 = percentile(sorted, 99);
    return out;
}

inline std::optional<int> try_pin(std::optional<int> cpu) {
#if defined(__linux__)
    if (!cpu || *cpu < 0 || *cpu >= CPU_SETSIZE) return std::nullopt;
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(*cpu, &set);
    if (sched_setaffinity(0, sizeof set, &set) == 0) return cpu;
#else
    (void)cpu;
#endif
    return std::nullopt;
}

} // namespace detail

/// Times every configured operator on the same seeded width-64 inputs,
/// keeping the per-pair minimum over `trials` runs. Single-threaded.
inline BenchReport run_bench(const BenchConfig& cfg) {
    if (cfg.n_pairs == 0) throw Error(Errc::ParseError, "n_pairs must be >= 1");
    if (cfg.trials == 0) throw Error(Errc::ParseError, "trials must be >= 1");
    if (cfg.ops.empty()) throw Error(Errc::UnknownOp, "no operators to benchmark");
    for (OpId op : cfg.ops)
        if (is_shift(op)) throw Error(Errc::UnknownOp, "benchmarks take binary operators");

    const Timer timer = Timer::detect(cfg.allow_tsc);
    const auto pairs = bench_inputs(cfg.n_pairs, cfg.seed, cfg.sampler);
    BenchReport report{timer, cfg.seed, cfg.sampler, cfg.n_pairs, cfg.trials, input_checksum(pairs),
                       detail::try_pin(cfg.pin_hint), std::min<std::size_t>(cfg.audit_pairs, pairs.size()), {}};

    for (OpId op : cfg.ops) {
        auto run = [&](auto fn) { return detail::time_op(op, fn, pairs, cfg.trials, timer, cfg.audit_pairs); };
        switch (op) {
        case OpId::add: report.ops.push_back(run(tnum_add)); break;
        case OpId::sub: report.ops.push_back(run(tnum_sub)); break;
        case OpId::and_: report.ops.push_back(run(tnum_and)); break;
        case OpId::or_: report.ops.push_back(run(tnum_or)); break;
        case OpId::xor_: report.ops.push_back(run(tnum_xor)); break;
        case OpId::kern_mul: report.ops.push_back(run(kern_mul)); break;
        case OpId::bitwise_mul: report.ops.push_back(run(bitwise_mul)); break;
        case OpId::bitwise_mul_opt: report.ops.push_back(run(bitwise_mul_opt)); break;
        case OpId::our_mul: report.ops.push_back(run([](const Tnum& p, const Tnum& q) { return our_mul(p, q); })); break;
        case OpId::our_mul_simplified:
            report.ops.push_back(run([](const Tnum& p, const Tnum& q) { return our_mul_simplified(p, q); }));
            break;
        default: break;
        }
    }
    return report;
}

inline void write_bench_csv(std::ostream& out, const BenchReport& r) {
    out << "op,pair_index,min_time_" << r.timer.unit << '\n';
    for (const auto& o : r.ops)
        for (std::size_t i = 0; i < o.min_times.size(); ++i)
            out << to_string(o.op) << ',' << i << ',' << o.min_times[i] << '\n';
}

} // namespace tnumlab
