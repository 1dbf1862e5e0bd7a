// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tnumlab/ops.hpp"
#include "tnumlab/parallel.hpp"

namespace tnumlab {

constexpr int max_precision_width = 8;

struct PrecisionRecord {
    Tnum p;
    Tnum q;
    OpId op_a;
    OpId op_b;
    Tnum ra;
    Tnum rb;
    Order relation;
    /// log2(|γ(ra)| / |γ(rb)|); empty when incomparable.
    std::optional<int> log2_ratio;
};

struct PrecisionSummary {
    int width = 0;
    OpId op_a = OpId::our_mul;
    OpId op_b = OpId::kern_mul;
    std::uint64_t total_pairs = 0;
    std::uint64_t equal_count = 0;
    std::uint64_t a_more_precise = 0;
    std::uint64_t b_more_precise = 0;
    std::uint64_t incomparable = 0;
    /// log2_ratio -> count over differing comparable pairs.
    std::map<int, std::uint64_t> histogram;

    [[nodiscard]] std::uint64_t differing() const noexcept { return total_pairs - equal_count; }
    [[nodiscard]] std::uint64_t comparable_differing() const noexcept { return a_more_precise + b_more_precise; }

    [[nodiscard]] double pct_equal() const noexcept {
        return total_pairs == 0 ? 0.0 : 100.0 * static_cast<double>(equal_count) / static_cast<double>(total_pairs);
    }
    /// Share of differing pairs that are comparable.
    [[nodiscard]] double pct_differing_comparable() const noexcept {
        return differing() == 0 ? 100.0
                                : 100.0 * static_cast<double>(comparable_differing()) / static_cast<double>(differing());
    }
    /// Share of comparable differing pairs where op_a is strictly more precise.
    [[nodiscard]] double pct_a_more_precise() const noexcept {
        return comparable_differing() == 0
                   ? 0.0
                   : 100.0 * static_cast<double>(a_more_precise) / static_cast<double>(comparable_differing());
    }

    void merge(const PrecisionSummary& o) {
        total_pairs += o.total_pairs;
        equal_count += o.equal_count;
        a_more_precise += o.a_more_precise;
        b_more_precise += o.b_more_precise;
        incomparable += o.incomparable;
        for (const auto& [k, v] : o.histogram) histogram[k] += v;
    }
};

struct BitwidthRow {
    int width;
    std::uint64_t total_pairs;
    double pct_equal;
    double pct_differing_comparable;
    double pct_a_more_precise;
};

inline PrecisionRecord compare_pair(OpId op_a, OpId op_b, const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    const Tnum ra = apply(op_a, p, q);
    const Tnum rb = apply(op_b, p, q);
    const Order rel = compare(ra, rb);
    std::optional<int> ratio;
    if (rel != Order::Incomparable) ratio = std::popcount(ra.mask()) - std::popcount(rb.mask());
    return {p, q, op_a, op_b, ra, rb, rel, ratio};
}

/// Classifies every well-formed pair at `width`.
inline PrecisionSummary sweep_exhaustive(OpId op_a, OpId op_b, int width) {
    check_width(width);
    if (width > max_precision_width)
        throw Error(Errc::WidthTooLargeForEnumeration,
                    "exhaustive precision sweeps limited to width <= " + std::to_string(max_precision_width));
    if (is_shift(op_a) || is_shift(op_b))
        throw Error(Errc::UnknownOp, "precision sweeps compare binary operators only");
    const std::vector<Tnum> tnums = all_tnums(width);
    const std::size_t n = tnums.size();
    PrecisionSummary init;
    init.width = width;
    init.op_a = op_a;
    init.op_b = op_b;
    return parallel_reduce(
        n, init,
        [&](std::size_t begin, std::size_t end, PrecisionSummary& acc) {
            for (std::size_t i = begin; i < end; ++i)
                for (const Tnum& q : tnums) {
                    const Tnum ra = apply(op_a, tnums[i], q);
                    const Tnum rb = apply(op_b, tnums[i], q);
                    ++acc.total_pairs;
                    if (ra == rb) {
                        ++acc.equal_count;
                        continue;
                    }
                    if (refines(ra, rb))
                        ++acc.a_more_precise;
                    else if (refines(rb, ra))
                        ++acc.b_more_precise;
                    else {
                        ++acc.incomparable;
                        continue;
                    }
                    ++acc.histogram[std::popcount(ra.mask()) - std::popcount(rb.mask())];
                }
        },
        [](PrecisionSummary& into, PrecisionSummary&& part) { into.merge(part); });
}

inline BitwidthRow to_row(const PrecisionSummary& s) {
    return {s.width, s.total_pairs, s.pct_equal(), s.pct_differing_comparable(), s.pct_a_more_precise()};
}

/// One exhaustive sweep per width in [lo, hi].
inline std::vector<BitwidthRow> sweep_bitwidths(OpId op_a, OpId op_b, int lo, int hi,
                                                std::vector<PrecisionSummary>* summaries = nullptr) {
    if (lo < 1 || hi < lo) throw Error(Errc::WidthRange, "bad width range");
    std::vector<BitwidthRow> rows;
    for (int w = lo; w <= hi; ++w) {
        PrecisionSummary s = sweep_exhaustive(op_a, op_b, w);
        rows.push_back(to_row(s));
        if (summaries) summaries->push_back(std::move(s));
    }
    return rows;
}

// CSV: histogram buckets, summary rows, and bitwidth rows share one header;
// the `record` column says which fields are populated.

inline constexpr const char* precision_csv_header =
    "record,width,opA,opB,log2_ratio,count,total_pairs,equal_count,a_more_precise,b_more_precise,incomparable,"
    "pct_equal,pct_differing_comparable,pct_a_more_precise";

namespace detail {

inline std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace detail

inline void write_precision_csv(std::ostream& out, const PrecisionSummary& s) {
    const std::string a(to_string(s.op_a));
    const std::string b(to_string(s.op_b));
    for (const auto& [ratio, count] : s.histogram)
        out << "bucket," << s.width << ',' << a << ',' << b << ',' << ratio << ',' << count << ",,,,,,,,\n";
    out << "summary," << s.width << ',' << a << ',' << b << ",,," << s.total_pairs << ',' << s.equal_count << ','
        << s.a_more_precise << ',' << s.b_more_precise << ',' << s.incomparable << ',' << detail::pct(s.pct_equal())
        << ',' << detail::pct(s.pct_differing_comparable()) << ',' << detail::pct(s.pct_a_more_precise()) << '\n';
}

inline void write_bitwidth_csv(std::ostream& out, OpId op_a, OpId op_b, const std::vector<BitwidthRow>& rows) {
    const std::string a(to_string(op_a));
    const std::string b(to_string(op_b));
    for (const auto& r : rows)
        out << "bitwidth," << r.width << ',' << a << ',' << b << ",,," << r.total_pairs << ",,,,,"
            << detail::pct(r.pct_equal) << ',' << detail::pct(r.pct_differing_comparable) << ','
            << detail::pct(r.pct_a_more_precise) << '\n';
}

} // namespace tnumlab
