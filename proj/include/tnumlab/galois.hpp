// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Concretization (γ), abstraction (α), and the enumerative best-transformer
// α∘f∘γ used as the precision oracle. Everything here enumerates, so widths
// are capped and the caps are hard errors.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tnumlab/tnum.hpp"

namespace tnumlab {

constexpr int max_gamma_width = 16;
constexpr int max_image_width = 12;

/// Nonempty set of width-bit words, stored as a bitset over 0..2^width-1.
class ConcreteSet {
  public:
    explicit ConcreteSet(int width) : width_(width) {
        if (width < 1 || width > max_gamma_width)
            throw Error(Errc::WidthTooLargeForEnumeration,
                        "concrete sets limited to width <= 16, got " + std::to_string(width));
        bits_.assign(((std::size_t{1} << width) + 63) / 64, 0);
    }

    ConcreteSet(int width, std::initializer_list<word> members) : ConcreteSet(width) {
        for (word m : members) insert(m);
    }

    void insert(word x) {
        if (x > width_mask(width_)) throw Error(Errc::BitsAboveWidth, "member exceeds width");
        bits_[x >> 6] |= word{1} << (x & 63);
    }

    [[nodiscard]] bool contains(word x) const {
        return x <= width_mask(width_) && ((bits_[x >> 6] >> (x & 63)) & 1);
    }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] bool empty() const noexcept {
        return std::all_of(bits_.begin(), bits_.end(), [](word b) { return b == 0; });
    }
    [[nodiscard]] std::size_t size() const noexcept {
        std::size_t n = 0;
        for (word b : bits_) n += static_cast<std::size_t>(std::popcount(b));
        return n;
    }

    /// Members in increasing order.
    [[nodiscard]] std::vector<word> members() const {
        std::vector<word> out;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            for (word b = bits_[i]; b != 0; b &= b - 1)
                out.push_back((i << 6) | static_cast<word>(std::countr_zero(b)));
        return out;
    }

    [[nodiscard]] bool is_subset_of(const ConcreteSet& other) const {
        if (width_ != other.width_) throw Error(Errc::WidthMismatch, "concrete sets of different width");
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if ((bits_[i] & ~other.bits_[i]) != 0) return false;
        return true;
    }

    friend bool operator==(const ConcreteSet&, const ConcreteSet&) = default;

  private:
    int width_;
    std::vector<word> bits_;
};

inline bool subset(const ConcreteSet& a, const ConcreteSet& b) { return a.is_subset_of(b); }

/// A concrete binary operation on width-bit words; the result is reduced
/// modulo 2^width by the callers.
struct ConcreteOp {
    const char* name;
    word (*fn)(word x, word y, int width);
};

namespace concrete {

inline word add(word x, word y, int w) { return (x + y) & width_mask(w); }
inline word sub(word x, word y, int w) { return (x - y) & width_mask(w); }
inline word mul(word x, word y, int w) { return (x * y) & width_mask(w); }
inline word bit_and(word x, word y, int) { return x & y; }
inline word bit_or(word x, word y, int) { return x | y; }
inline word bit_xor(word x, word y, int) { return x ^ y; }
inline word lshift(word x, word k, int w) { return k >= static_cast<word>(w) ? 0 : (x << k) & width_mask(w); }
inline word rshift(word x, word k, int w) { return k >= static_cast<word>(w) ? 0 : x >> k; }

/// Arithmetic shift of a width-bit two's complement value; amounts past the
/// width saturate to the sign fill.
inline word arsh(word x, word k, int w) {
    const int shift = k >= static_cast<word>(w) ? w - 1 : static_cast<int>(k);
    const auto sx = static_cast<std::int64_t>(x << (64 - w)) >> (64 - w);
    return static_cast<word>(sx >> shift) & width_mask(w);
}

inline constexpr ConcreteOp Add{"add", add};
inline constexpr ConcreteOp Sub{"sub", sub};
inline constexpr ConcreteOp Mul{"mul", mul};
inline constexpr ConcreteOp And{"and", bit_and};
inline constexpr ConcreteOp Or{"or", bit_or};
inline constexpr ConcreteOp Xor{"xor", bit_xor};

} // namespace concrete

inline ConcreteSet gamma(const Tnum& t) {
    if (t.width() > max_gamma_width)
        throw Error(Errc::WidthTooLargeForEnumeration, "gamma limited to width <= 16");
    ConcreteSet out(t.width());
    // Submasks of the mask, each OR'd onto the known bits.
    word sub = 0;
    do {
        out.insert(t.value() | sub);
        sub = (sub - t.mask()) & t.mask();
    } while (sub != 0);
    return out;
}

/// (AND of members, AND ^ OR): the most precise tnum covering the set.
inline Tnum alpha(const ConcreteSet& s) {
    word all_and = width_mask(s.width());
    word any_or = 0;
    bool seen = false;
    for (word m : s.members()) {
        all_and &= m;
        any_or |= m;
        seen = true;
    }
    if (!seen) throw Error(Errc::EmptySet, "alpha of the empty set");
    return Tnum::raw(all_and, all_and ^ any_or, s.width());
}

namespace detail {

inline void check_image_args(const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    if (p.width() > max_image_width)
        throw Error(Errc::WidthTooLargeForEnumeration, "pairwise images limited to width <= 12");
}

// Calls fn(x, y) for every x ∈ γ(p), y ∈ γ(q).
template <typename Fn>
void for_each_member_pair(const Tnum& p, const Tnum& q, Fn&& fn) {
    word sp = 0;
    do {
        const word x = p.value() | sp;
        word sq = 0;
        do {
            fn(x, q.value() | sq);
            sq = (sq - q.mask()) & q.mask();
        } while (sq != 0);
        sp = (sp - p.mask()) & p.mask();
    } while (sp != 0);
}

} // namespace detail

/// Visits every concrete member of t in increasing order.
template <typename Fn>
void for_each_member(const Tnum& t, Fn&& fn) {
    word sub = 0;
    do {
        fn(t.value() | sub);
        sub = (sub - t.mask()) & t.mask();
    } while (sub != 0);
}

inline ConcreteSet concrete_image(const ConcreteOp& f, const Tnum& p, const Tnum& q) {
    detail::check_image_args(p, q);
    const int w = p.width();
    ConcreteSet out(w);
    detail::for_each_member_pair(p, q, [&](word x, word y) { out.insert(f.fn(x, y, w) & width_mask(w)); });
    return out;
}

/// α(f(γ(P), γ(Q))). Folds AND/OR over the image directly instead of
/// materializing it; the result is identical to alpha(concrete_image(...)).
inline Tnum optimal_abstract(const ConcreteOp& f, const Tnum& p, const Tnum& q) {
    detail::check_image_args(p, q);
    const int w = p.width();
    word all_and = width_mask(w);
    word any_or = 0;
    detail::for_each_member_pair(p, q, [&](word x, word y) {
        const word z = f.fn(x, y, w) & width_mask(w);
        all_and &= z;
        any_or |= z;
    });
    return Tnum::raw(all_and, all_and ^ any_or, w);
}

} // namespace tnumlab
