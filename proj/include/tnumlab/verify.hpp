// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Finite restatements of the soundness, optimality, and carry/borrow
// properties of the tnum operators: exhaustive sweeps at small widths and
// seeded sampling at any width. Reports are deterministic regardless of the
// number of workers.

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tnumlab/galois.hpp"
#include "tnumlab/ops.hpp"
#include "tnumlab/parallel.hpp"
#include "tnumlab/sample.hpp"

namespace tnumlab {

constexpr int max_exhaustive_soundness_width = 8;
constexpr int max_optimality_width = 6;
constexpr int max_lemma_width = 6;
constexpr std::size_t witness_cap = 100;

struct SweepMode {
    enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
    std::uint64_t count = 0; // sampled pairs
    std::uint64_t seed = 0;

    static SweepMode exhaustive() { return {}; }
    static SweepMode sampled(std::uint64_t count, std::uint64_t seed) { return {Kind::sampled, count, seed}; }
};

/// One failed membership: z = f(x, y) is not in γ(R) where R = f̂(P, Q).
/// For shift operators `q` is empty and y is the shift amount.
struct Violation {
    Tnum p;
    std::optional<Tnum> q;
    word x;
    word y;
    word z;
    Tnum r;
};

struct SoundnessReport {
    OpId op;
    int width;
    SweepMode mode;
    std::uint64_t pairs_checked = 0;
    std::uint64_t memberships_checked = 0;
    std::uint64_t violation_count = 0;
    std::uint64_t ill_formed_results = 0;
    /// Pairs where whole-image refinement and per-member checks disagree.
    std::uint64_t cross_check_pairs = 0;
    std::uint64_t cross_check_mismatches = 0;
    std::vector<Violation> violations; // first `witness_cap`, in sweep order

    [[nodiscard]] bool ok() const noexcept {
        return violation_count == 0 && ill_formed_results == 0 && cross_check_mismatches == 0;
    }
};

/// An abstract operator under test, binary or shift-by-constant.
struct AbstractOp {
    OpId semantics; // chooses the concrete operation and arity
    std::function<Tnum(const Tnum&, const Tnum&)> binary;
    std::function<Tnum(const Tnum&, unsigned)> shift;

    static AbstractOp of(OpId op) {
        AbstractOp a{op, {}, {}};
        if (is_shift(op))
            a.shift = [op](const Tnum& t, unsigned k) { return apply_shift(op, t, k); };
        else
            a.binary = [op](const Tnum& p, const Tnum& q) { return apply(op, p, q); };
        return a;
    }
};

namespace detail {

struct SoundnessAcc {
    std::uint64_t pairs = 0, memberships = 0, violations = 0, ill_formed = 0, cross = 0, cross_bad = 0;
    std::vector<Violation> witnesses;

    void record(const Violation& v) {
        ++violations;
        if (witnesses.size() < witness_cap) witnesses.push_back(v);
    }
    void merge(SoundnessAcc&& o) {
        pairs += o.pairs;
        memberships += o.memberships;
        violations += o.violations;
        ill_formed += o.ill_formed;
        cross += o.cross;
        cross_bad += o.cross_bad;
        for (auto& w : o.witnesses)
            if (witnesses.size() < witness_cap) witnesses.push_back(w);
    }
};

// Checks every member pair (or a random subset when the product is large)
// of one abstract input. Returns whether all checked memberships held.
template <typename Members>
bool check_members(SoundnessAcc& acc, const Tnum& p, const std::optional<Tnum>& q, const Tnum& r, word y_fixed,
                   const ConcreteOp& f, Members&& members) {
    bool all = true;
    const int w = p.width();
    members([&](word x, word y) {
        const word z = f.fn(x, q ? y : y_fixed, w) & width_mask(w);
        ++acc.memberships;
        if (!r.contains_unchecked(z)) {
            all = false;
            acc.record(Violation{p, q, x, q ? y : y_fixed, z, r});
        }
    });
    return all;
}

inline std::uint64_t pow3(int n) {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

} // namespace detail

/// Soundness of an arbitrary abstract operator against the concrete
/// semantics of `f.semantics`.
inline SoundnessReport check_soundness(const AbstractOp& f, int width, SweepMode mode) {
    check_width(width);
    const ConcreteOp conc = concrete_op(f.semantics);
    const bool shift = is_shift(f.semantics);
    SoundnessReport report{f.semantics, width, mode, 0, 0, 0, 0, 0, 0, {}};
    detail::SoundnessAcc total;

    // Whole-image refinement cross-check on 1% of pairs (when enumerable).
    auto cross_check = [&](detail::SoundnessAcc& acc, std::uint64_t index, const Tnum& p,
                           const std::optional<Tnum>& q, unsigned k, const Tnum& r, bool members_ok) {
        if (index % 100 != 0 || width > max_image_width) return;
        const Tnum best = q ? optimal_abstract(conc, p, *q)
                            : optimal_abstract(conc, p, Tnum::raw(k, 0, width)); // amount as a constant
        ++acc.cross;
        if (refines(best, r) != members_ok) ++acc.cross_bad;
    };

    if (mode.kind == SweepMode::Kind::exhaustive) {
        if (width > max_exhaustive_soundness_width)
            throw Error(Errc::WidthTooLargeForEnumeration,
                        "exhaustive soundness limited to width <= " + std::to_string(max_exhaustive_soundness_width));
        const std::vector<Tnum> tnums = all_tnums(width);
        const std::size_t n = tnums.size();
        const std::size_t inner = shift ? static_cast<std::size_t>(width) + 1 : n;
        total = parallel_reduce(
            n * inner, detail::SoundnessAcc{},
            [&](std::size_t begin, std::size_t end, detail::SoundnessAcc& acc) {
                for (std::size_t idx = begin; idx < end; ++idx) {
                    const Tnum& p = tnums[idx / inner];
                    ++acc.pairs;
                    std::optional<Tnum> q;
                    unsigned k = 0;
                    Tnum r = Tnum::raw(0, 0, width);
                    if (shift) {
                        k = static_cast<unsigned>(idx % inner);
                        r = f.shift(p, k);
                    } else {
                        q = tnums[idx % inner];
                        r = f.binary(p, *q);
                    }
                    if (!r.is_well_formed()) ++acc.ill_formed;
                    const bool ok = detail::check_members(acc, p, q, r, k, conc, [&](auto&& visit) {
                        if (q)
                            detail::for_each_member_pair(p, *q, visit);
                        else
                            for_each_member(p, [&](word x) { visit(x, k); });
                    });
                    cross_check(acc, idx, p, q, k, r, ok);
                }
            },
            [](detail::SoundnessAcc& into, detail::SoundnessAcc&& part) { into.merge(std::move(part)); });
    } else {
        // Seeded sampling: each pair draws its own generator from (seed, index)
        // so the report does not depend on chunking.
        total = parallel_reduce(
            mode.count, detail::SoundnessAcc{},
            [&](std::size_t begin, std::size_t end, detail::SoundnessAcc& acc) {
                for (std::size_t idx = begin; idx < end; ++idx) {
                    std::seed_seq seq{mode.seed, static_cast<std::uint64_t>(idx)};
                    Rng rng(seq);
                    const Tnum p = sample_tnum(width, rng);
                    ++acc.pairs;
                    std::optional<Tnum> q;
                    unsigned k = 0;
                    Tnum r = Tnum::raw(0, 0, width);
                    if (shift) {
                        k = static_cast<unsigned>(rng() % (static_cast<word>(width) + 1));
                        r = f.shift(p, k);
                    } else {
                        q = sample_tnum(width, rng);
                        r = f.binary(p, *q);
                    }
                    if (!r.is_well_formed()) ++acc.ill_formed;
                    const int unknowns = p.unknown_count() + (q ? q->unknown_count() : 0);
                    const bool ok = detail::check_members(acc, p, q, r, k, conc, [&](auto&& visit) {
                        if (unknowns <= 8) {
                            if (q)
                                detail::for_each_member_pair(p, *q, visit);
                            else
                                for_each_member(p, [&](word x) { visit(x, k); });
                            return;
                        }
                        // Extremes plus random members.
                        const word qv = q ? q->value() : k;
                        const word qm = q ? q->mask() : 0;
                        visit(p.value(), qv);
                        visit(p.value() | p.mask(), qv | qm);
                        visit(p.value(), qv | qm);
                        visit(p.value() | p.mask(), qv);
                        for (int i = 0; i < 60; ++i) visit(sample_member(p, rng), qv | (rng() & qm));
                    });
                    cross_check(acc, idx, p, q, k, r, ok);
                }
            },
            [](detail::SoundnessAcc& into, detail::SoundnessAcc&& part) { into.merge(std::move(part)); });
    }

    report.pairs_checked = total.pairs;
    report.memberships_checked = total.memberships;
    report.violation_count = total.violations;
    report.ill_formed_results = total.ill_formed;
    report.cross_check_pairs = total.cross;
    report.cross_check_mismatches = total.cross_bad;
    report.violations = std::move(total.witnesses);
    return report;
}

inline SoundnessReport check_soundness(OpId op, int width, SweepMode mode = SweepMode::exhaustive()) {
    return check_soundness(AbstractOp::of(op), width, mode);
}

// ---------------------------------------------------------------------------
// Optimality

struct OptimalityExample {
    Tnum p;
    std::optional<Tnum> q;
    unsigned shift;
    Tnum result;
    Tnum optimal;
};

struct OptimalityReport {
    OpId op;
    int width;
    std::uint64_t total_pairs = 0;
    std::uint64_t equal_pairs = 0;
    std::uint64_t strictly_worse_pairs = 0; // sound but less precise than α∘f∘γ
    std::uint64_t unsound_pairs = 0;        // result does not cover the oracle
    std::vector<OptimalityExample> examples;

    [[nodiscard]] bool optimal() const noexcept { return equal_pairs == total_pairs; }
    [[nodiscard]] double equal_fraction() const noexcept {
        return total_pairs == 0 ? 0.0 : static_cast<double>(equal_pairs) / static_cast<double>(total_pairs);
    }
};

inline OptimalityReport check_optimality(const AbstractOp& f, int width) {
    check_width(width);
    if (width > max_optimality_width)
        throw Error(Errc::WidthTooLargeForEnumeration,
                    "optimality sweeps limited to width <= " + std::to_string(max_optimality_width));
    const ConcreteOp conc = concrete_op(f.semantics);
    const bool shift = is_shift(f.semantics);
    const std::vector<Tnum> tnums = all_tnums(width);
    const std::size_t n = tnums.size();
    const std::size_t inner = shift ? static_cast<std::size_t>(width) + 1 : n;

    OptimalityReport init{f.semantics, width, 0, 0, 0, 0, {}};
    auto out = parallel_reduce(
        n * inner, init,
        [&](std::size_t begin, std::size_t end, OptimalityReport& acc) {
            for (std::size_t idx = begin; idx < end; ++idx) {
                const Tnum& p = tnums[idx / inner];
                std::optional<Tnum> q;
                unsigned k = 0;
                Tnum r = Tnum::raw(0, 0, width);
                Tnum best = r;
                if (shift) {
                    k = static_cast<unsigned>(idx % inner);
                    r = f.shift(p, k);
                    best = optimal_abstract(conc, p, Tnum::raw(k, 0, width));
                } else {
                    q = tnums[idx % inner];
                    r = f.binary(p, *q);
                    best = optimal_abstract(conc, p, *q);
                }
                ++acc.total_pairs;
                if (r == best) {
                    ++acc.equal_pairs;
                    continue;
                }
                if (refines(best, r))
                    ++acc.strictly_worse_pairs;
                else
                    ++acc.unsound_pairs;
                if (acc.examples.size() < 10) acc.examples.push_back({p, q, k, r, best});
            }
        },
        [](OptimalityReport& into, OptimalityReport&& part) {
            into.total_pairs += part.total_pairs;
            into.equal_pairs += part.equal_pairs;
            into.strictly_worse_pairs += part.strictly_worse_pairs;
            into.unsound_pairs += part.unsound_pairs;
            for (auto& e : part.examples)
                if (into.examples.size() < 10) into.examples.push_back(e);
        });
    return out;
}

inline OptimalityReport check_optimality(OpId op, int width) { return check_optimality(AbstractOp::of(op), width); }

// ---------------------------------------------------------------------------
// Carry and borrow lemmas

/// Bit k is the carry into position k of p + q (mod 2^width).
constexpr word carry_in_bits(word p, word q, int width) noexcept {
    return (p ^ q ^ (p + q)) & width_mask(width);
}

/// Bit k is the borrow into position k of p - q (mod 2^width).
constexpr word borrow_in_bits(word p, word q, int width) noexcept {
    return (p ^ q ^ (p - q)) & width_mask(width);
}

struct LemmaResult {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
    /// First failing input pair, if any.
    std::optional<std::pair<Tnum, Tnum>> witness;
};

struct LemmaReport {
    int width;
    std::uint64_t pairs_checked = 0;
    std::vector<LemmaResult> lemmas;

    [[nodiscard]] bool ok() const noexcept {
        for (const auto& l : lemmas)
            if (l.violations != 0) return false;
        return !lemmas.empty();
    }
    [[nodiscard]] const LemmaResult* find(std::string_view name) const {
        for (const auto& l : lemmas)
            if (l.name == name) return &l;
        return nullptr;
    }
};

namespace detail {

// For one tnum pair: the bound words the lemmas claim, plus the word the
// operator itself xors (sv ^ Σ or α ^ β).
struct CarryBounds {
    word fewest; // carries/borrows present in every concrete operation
    word most;   // carries/borrows possible in some concrete operation
    word op_chi;
};

enum class LemmaKind { add, sub };

inline LemmaReport check_carry_lemmas(LemmaKind kind, int width, bool swap_bounds) {
    check_width(width);
    if (width > max_lemma_width)
        throw Error(Errc::WidthTooLargeForEnumeration,
                    "lemma sweeps limited to width <= " + std::to_string(max_lemma_width));
    const word full = width_mask(width);
    const std::vector<Tnum> tnums = all_tnums(width);
    const std::size_t n = tnums.size();
    const char* names[4] = {"min_bound", "max_bound", "capture_uncertainty", "mask_equivalence"};

    LemmaReport init{width, 0, {}};
    for (const char* nm : names) init.lemmas.push_back({nm, 0, 0, std::nullopt});

    return parallel_reduce(
        n * n, init,
        [&](std::size_t begin, std::size_t end, LemmaReport& acc) {
            for (std::size_t idx = begin; idx < end; ++idx) {
                const Tnum& P = tnums[idx / n];
                const Tnum& Q = tnums[idx % n];
                ++acc.pairs_checked;
                CarryBounds b{};
                if (kind == LemmaKind::add) {
                    const word sv = (P.value() + Q.value()) & full;
                    const word sigma = (sv + P.mask() + Q.mask()) & full;
                    b.fewest = carry_in_bits(P.value(), Q.value(), width);
                    b.most = carry_in_bits(P.value() + P.mask(), Q.value() + Q.mask(), width);
                    b.op_chi = sv ^ sigma;
                } else {
                    const word a = (P.value() + P.mask() - Q.value()) & full;
                    const word bt = (P.value() - Q.value() - Q.mask()) & full;
                    b.fewest = borrow_in_bits(P.value() + P.mask(), Q.value(), width);
                    b.most = borrow_in_bits(P.value(), Q.value() + Q.mask(), width);
                    b.op_chi = a ^ bt;
                }
                if (swap_bounds) std::swap(b.fewest, b.most);

                word seen_and = full;
                word seen_or = 0;
                bool min_ok = true;
                bool max_ok = true;
                for_each_member_pair(P, Q, [&](word p, word q) {
                    const word c = kind == LemmaKind::add ? carry_in_bits(p, q, width) : borrow_in_bits(p, q, width);
                    seen_and &= c;
                    seen_or |= c;
                    min_ok = min_ok && (b.fewest & ~c) == 0;
                    max_ok = max_ok && (c & ~b.most) == 0;
                });
                const bool capture_ok = (seen_and ^ seen_or) == (b.fewest ^ b.most);
                const word um = P.mask() | Q.mask();
                const bool equiv_ok = ((b.op_chi | um) == ((b.fewest ^ b.most) | um));
                const bool verdicts[4] = {min_ok, max_ok, capture_ok, equiv_ok};
                for (int i = 0; i < 4; ++i) {
                    auto& l = acc.lemmas[static_cast<std::size_t>(i)];
                    ++l.cases;
                    if (!verdicts[i]) {
                        ++l.violations;
                        if (!l.witness) l.witness = std::make_pair(P, Q);
                    }
                }
            }
        },
        [](LemmaReport& into, LemmaReport&& part) {
            into.pairs_checked += part.pairs_checked;
            for (std::size_t i = 0; i < into.lemmas.size(); ++i) {
                into.lemmas[i].cases += part.lemmas[i].cases;
                into.lemmas[i].violations += part.lemmas[i].violations;
                if (!into.lemmas[i].witness) into.lemmas[i].witness = part.lemmas[i].witness;
            }
        });
}

} // namespace detail

/// Minimum/maximum carries, capture of uncertainty, and the mask-expression
/// equivalence for tnum_add, over every pair and every concrete member.
/// `swap_bounds` exchanges the two bounds (harness self-test).
inline LemmaReport check_add_lemmas(int width, bool swap_bounds = false) {
    return detail::check_carry_lemmas(detail::LemmaKind::add, width, swap_bounds);
}

/// Borrow analogues for tnum_sub.
inline LemmaReport check_sub_lemmas(int width, bool swap_bounds = false) {
    return detail::check_carry_lemmas(detail::LemmaKind::sub, width, swap_bounds);
}

// ---------------------------------------------------------------------------
// Lemmas supporting the decomposed multiplier

/// Union with zero: Q = (0, P.v | P.m) covers γ(P) and contains 0.
inline LemmaResult check_union_with_zero(int width) {
    LemmaResult res{"union_with_zero", 0, 0, std::nullopt};
    for_each_tnum(width, [&](const Tnum& p) {
        const Tnum q = Tnum::raw(0, p.value() | p.mask(), width);
        ++res.cases;
        bool ok = q.contains_unchecked(0);
        for_each_member(p, [&](word x) { ok = ok && q.contains_unchecked(x); });
        if (!ok) {
            ++res.violations;
            if (!res.witness) res.witness = std::make_pair(p, q);
        }
    });
    return res;
}

/// Value/mask decomposed summation: for `samples` random tuples of `width`
/// tnums, summing the value parts and the mask parts separately and adding
/// the two totals covers every concrete sum of members.
inline LemmaResult check_decomposed_summation(int width, std::uint64_t samples, std::uint64_t seed) {
    LemmaResult res{"decomposed_summation", 0, 0, std::nullopt};
    Rng rng(seed);
    const word full = width_mask(width);
    std::vector<Tnum> terms(static_cast<std::size_t>(width), Tnum::raw(0, 0, width));
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& t : terms) t = sample_tnum(width, rng);
        Tnum vsum = Tnum::raw(0, 0, width);
        Tnum msum = Tnum::raw(0, 0, width);
        for (const auto& t : terms) {
            vsum = tnum_add(vsum, Tnum::raw(t.value(), 0, width));
            msum = tnum_add(msum, Tnum::raw(0, t.mask(), width));
        }
        const Tnum total = tnum_add(vsum, msum);
        for (int draw = 0; draw < 64; ++draw) {
            word z = 0;
            for (const auto& t : terms) z = (z + sample_member(t, rng)) & full;
            ++res.cases;
            if (!total.contains_unchecked(z)) {
                ++res.violations;
                if (!res.witness) res.witness = std::make_pair(terms.front(), total);
            }
        }
    }
    return res;
}

/// y * x == Σ x[k] * (y << k) mod 2^width on random concrete pairs.
inline LemmaResult check_partial_products(int width, std::uint64_t samples, std::uint64_t seed) {
    LemmaResult res{"partial_products", 0, 0, std::nullopt};
    Rng rng(seed);
    const word full = width_mask(width);
    for (std::uint64_t s = 0; s < samples; ++s) {
        const word x = rng() & full;
        const word y = rng() & full;
        word sum = 0;
        for (int k = 0; k < width; ++k)
            if ((x >> k) & 1) sum = (sum + (y << k)) & full;
        ++res.cases;
        if (sum != ((x * y) & full)) {
            ++res.violations;
            if (!res.witness) res.witness = std::make_pair(Tnum::raw(x, 0, width), Tnum::raw(y, 0, width));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Galois connection laws

struct GaloisLaw {
    std::string name;
    int width;
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
};

namespace detail {

// Concrete sets at width <= 6 packed into one 64-bit membership word.
inline ConcreteSet set_from_bits(word bits, int width) {
    ConcreteSet s(width);
    for (word b = bits; b != 0; b &= b - 1) s.insert(static_cast<word>(std::countr_zero(b)));
    return s;
}

} // namespace detail

/// G1: C1 ⊆ C2 implies α(C1) ⊑ α(C2). Exhaustive over all nested nonempty
/// pairs when width <= 3, otherwise `samples` random nested pairs.
inline GaloisLaw check_alpha_monotone(int width, std::uint64_t samples = 0, std::uint64_t seed = 1) {
    if (width > 6) throw Error(Errc::WidthTooLargeForEnumeration, "alpha monotonicity limited to width <= 6");
    GaloisLaw law{"alpha_monotone", width};
    const std::size_t universe = std::size_t{1} << width;
    const word all = universe == 64 ? ~word{0} : (word{1} << universe) - 1;
    auto check = [&](word c1, word c2) {
        ++law.cases;
        if (!refines(alpha(detail::set_from_bits(c1, width)), alpha(detail::set_from_bits(c2, width))))
            ++law.violations;
    };
    if (width <= 3) {
        for (word c2 = 1; c2 <= all; ++c2)
            for (word c1 = c2; c1 != 0; c1 = (c1 - 1) & c2) check(c1, c2);
    } else {
        Rng rng(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            word c2 = rng() & all;
            if (c2 == 0) c2 = 1;
            word c1 = rng() & c2;
            if (c1 == 0) c1 = word{1} << std::countr_zero(c2);
            check(c1, c2);
        }
    }
    return law;
}

/// G2: P ⊑ Q implies γ(P) ⊆ γ(Q), over every ordered pair at `width`.
inline GaloisLaw check_gamma_monotone(int width) {
    GaloisLaw law{"gamma_monotone", width};
    const std::vector<Tnum> tnums = all_tnums(width);
    const std::size_t n = tnums.size();
    auto out = parallel_reduce(
        n, law,
        [&](std::size_t begin, std::size_t end, GaloisLaw& acc) {
            for (std::size_t i = begin; i < end; ++i) {
                const ConcreteSet gp = gamma(tnums[i]);
                for (const Tnum& q : tnums) {
                    if (!refines(tnums[i], q)) continue;
                    ++acc.cases;
                    if (!gp.is_subset_of(gamma(q))) ++acc.violations;
                }
            }
        },
        [](GaloisLaw& into, GaloisLaw&& part) {
            into.cases += part.cases;
            into.violations += part.violations;
        });
    return out;
}

/// G3: C ⊆ γ(α(C)) for every nonempty C at `width` (<= 4).
inline GaloisLaw check_extensive(int width) {
    if (width > 4) throw Error(Errc::WidthTooLargeForEnumeration, "extensivity sweep limited to width <= 4");
    GaloisLaw law{"gamma_alpha_extensive", width};
    const std::size_t universe = std::size_t{1} << width;
    const word all = (word{1} << universe) - 1;
    for (word bits = 1; bits <= all; ++bits) {
        const ConcreteSet c = detail::set_from_bits(bits, width);
        ++law.cases;
        if (!c.is_subset_of(gamma(alpha(c)))) ++law.violations;
    }
    return law;
}

/// G4 with equality: α(γ(t)) == t for every well-formed t.
inline GaloisLaw check_reductive(int width) {
    GaloisLaw law{"alpha_gamma_identity", width};
    for_each_tnum(width, [&](const Tnum& t) {
        ++law.cases;
        if (!(alpha(gamma(t)) == t)) ++law.violations;
    });
    return law;
}

/// Trit k of α(C) is unknown iff two members of C differ at bit k; otherwise
/// it equals that shared bit. Checked by scanning members bit by bit.
inline GaloisLaw check_bitwise_exact(int width) {
    if (width > 4) throw Error(Errc::WidthTooLargeForEnumeration, "bitwise exactness sweep limited to width <= 4");
    GaloisLaw law{"alpha_bitwise_exact", width};
    const std::size_t universe = std::size_t{1} << width;
    const word all = (word{1} << universe) - 1;
    for (word bits = 1; bits <= all; ++bits) {
        const ConcreteSet c = detail::set_from_bits(bits, width);
        const Tnum a = alpha(c);
        const std::vector<word> members = c.members();
        ++law.cases;
        for (int k = 0; k < width; ++k) {
            bool saw0 = false;
            bool saw1 = false;
            for (word m : members) ((m >> k) & 1 ? saw1 : saw0) = true;
            const Trit expect = saw0 && saw1 ? Trit::Unknown : (saw1 ? Trit::One : Trit::Zero);
            if (a.trit_at(k) != expect) {
                ++law.violations;
                break;
            }
        }
    }
    return law;
}

/// min(γ(t)) == t.value for every well-formed t.
inline GaloisLaw check_smallest_member(int width) {
    GaloisLaw law{"value_is_smallest_member", width};
    for_each_tnum(width, [&](const Tnum& t) {
        ++law.cases;
        if (gamma(t).members().front() != t.value()) ++law.violations;
    });
    return law;
}

// ---------------------------------------------------------------------------
// Counterexamples to algebraic laws

enum class Property { nonassoc_add, noninverse_add_sub, noncomm };

constexpr std::string_view to_string(Property p) noexcept {
    switch (p) {
    case Property::nonassoc_add: return "nonassoc_add";
    case Property::noninverse_add_sub: return "noninverse_add_sub";
    case Property::noncomm: return "noncomm";
    }
    return "?";
}

struct Counterexample {
    Property property;
    OpId op; // operator whose law fails (add for the first two properties)
    std::vector<Tnum> operands;
    Tnum lhs;
    Tnum rhs;
    bool exhaustive; // found by exhaustive search (else randomized width-64)
};

/// Recomputes both sides from the operands.
inline std::pair<Tnum, Tnum> replay(const Counterexample& ce) {
    const auto& o = ce.operands;
    switch (ce.property) {
    case Property::nonassoc_add: return {tnum_add(tnum_add(o[0], o[1]), o[2]), tnum_add(o[0], tnum_add(o[1], o[2]))};
    case Property::noninverse_add_sub: return {tnum_sub(tnum_add(o[0], o[1]), o[1]), o[0]};
    case Property::noncomm: return {apply(ce.op, o[0], o[1]), apply(ce.op, o[1], o[0])};
    }
    return {o[0], o[0]};
}

/// (P + Q) + R != P + (Q + R); first hit in enumeration order.
inline std::optional<Counterexample> find_nonassociative_add(int width) {
    const std::vector<Tnum> t = all_tnums(width);
    for (const auto& p : t)
        for (const auto& q : t) {
            const Tnum pq = tnum_add(p, q);
            for (const auto& r : t) {
                const Tnum lhs = tnum_add(pq, r);
                const Tnum rhs = tnum_add(p, tnum_add(q, r));
                if (!(lhs == rhs)) return Counterexample{Property::nonassoc_add, OpId::add, {p, q, r}, lhs, rhs, true};
            }
        }
    return std::nullopt;
}

/// (P + Q) - Q != P; first hit in enumeration order.
inline std::optional<Counterexample> find_noninverse_add_sub(int width) {
    const std::vector<Tnum> t = all_tnums(width);
    for (const auto& p : t)
        for (const auto& q : t) {
            const Tnum lhs = tnum_sub(tnum_add(p, q), q);
            if (!(lhs == p)) return Counterexample{Property::noninverse_add_sub, OpId::add, {p, q}, lhs, p, true};
        }
    return std::nullopt;
}

/// op(P, Q) != op(Q, P): exhaustive at `width`, then up to `budget` seeded
/// width-64 samples if the exhaustive search comes up empty.
inline std::optional<Counterexample> find_noncommutative(OpId op, int width, std::uint64_t budget = 0,
                                                         std::uint64_t seed = 0) {
    const std::vector<Tnum> t = all_tnums(width);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            const Tnum lhs = apply(op, t[i], t[j]);
            const Tnum rhs = apply(op, t[j], t[i]);
            if (!(lhs == rhs)) return Counterexample{Property::noncomm, op, {t[i], t[j]}, lhs, rhs, true};
        }
    Rng rng(seed);
    for (std::uint64_t s = 0; s < budget; ++s) {
        const Tnum p = sample_tnum(64, rng);
        const Tnum q = sample_tnum(64, rng);
        const Tnum lhs = apply(op, p, q);
        const Tnum rhs = apply(op, q, p);
        if (!(lhs == rhs)) return Counterexample{Property::noncomm, op, {p, q}, lhs, rhs, false};
    }
    return std::nullopt;
}

struct CounterexampleSearch {
    int width;
    std::vector<Counterexample> found;
    /// Properties searched without a hit, e.g. "noncomm(our_mul)".
    std::vector<std::string> not_found;
};

/// Runs every finder at `width`: non-associativity and non-invertibility of
/// add/sub, and non-commutativity of each multiplication operator.
inline CounterexampleSearch find_counterexamples(int width, std::uint64_t budget, std::uint64_t seed) {
    if (width > max_optimality_width)
        throw Error(Errc::WidthTooLargeForEnumeration, "exhaustive counterexample search limited to width <= 6");
    CounterexampleSearch out{width, {}, {}};
    auto keep = [&](std::optional<Counterexample> ce, std::string label) {
        if (ce)
            out.found.push_back(std::move(*ce));
        else
            out.not_found.push_back(std::move(label));
    };
    keep(width <= 4 ? find_nonassociative_add(width) : find_nonassociative_add(4), "nonassoc_add");
    keep(find_noninverse_add_sub(width), "noninverse_add_sub");
    for (OpId op : all_ops)
        if (is_mul(op)) keep(find_noncommutative(op, width, budget, seed), "noncomm(" + std::string(to_string(op)) + ")");
    return out;
}

} // namespace tnumlab
