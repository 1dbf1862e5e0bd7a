// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Tristate numbers: each of `width` trits is a known 0, a known 1, or unknown.
// A tnum is stored as two words. A set mask bit marks an unknown trit; the
// value word holds the known bits. value & mask == 0 for every well-formed
// tnum, and neither word has bits at or above `width`.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "tnumlab/error.hpp"

namespace tnumlab {

using word = std::uint64_t;
using u128 = unsigned __int128;

constexpr int max_width = 64;

constexpr word width_mask(int width) noexcept {
    return width >= 64 ? ~word{0} : (word{1} << width) - 1;
}

inline void check_width(int width) {
    if (width < 1 || width > max_width)
        throw Error(Errc::WidthRange, "width " + std::to_string(width) + " outside 1..64");
}

enum class Trit { Zero, One, Unknown };

enum class Order { Equal, LeftMorePrecise, RightMorePrecise, Incomparable };

constexpr const char* to_string(Order o) noexcept {
    switch (o) {
    case Order::Equal: return "equal";
    case Order::LeftMorePrecise: return "left_more_precise";
    case Order::RightMorePrecise: return "right_more_precise";
    case Order::Incomparable: return "incomparable";
    }
    return "?";
}

class Tnum {
  public:
    /// Validating constructor. Rejects ⊥ (value & mask != 0) rather than
    /// normalizing it.
    static Tnum make(word value, word mask, int width) {
        check_width(width);
        const word outside = ~width_mask(width);
        if ((value & outside) != 0 || (mask & outside) != 0)
            throw Error(Errc::BitsAboveWidth, "value/mask has bits above width " + std::to_string(width));
        if ((value & mask) != 0) throw Error(Errc::IllFormed, "value & mask != 0");
        return Tnum(value, mask, width);
    }

    /// Unchecked construction for operator internals. Callers guarantee the
    /// width is in range and both words are already truncated; well-formedness
    /// of operator outputs is a tested property, not an assumption.
    static constexpr Tnum raw(word value, word mask, int width) noexcept { return Tnum(value, mask, width); }

    static Tnum top(int width) {
        check_width(width);
        return Tnum(0, width_mask(width), width);
    }

    static Tnum constant(word x, int width) { return make(x, 0, width); }

    [[nodiscard]] constexpr word value() const noexcept { return value_; }
    [[nodiscard]] constexpr word mask() const noexcept { return mask_; }
    [[nodiscard]] constexpr int width() const noexcept { return width_; }

    [[nodiscard]] constexpr bool is_well_formed() const noexcept {
        return (value_ & mask_) == 0 && ((value_ | mask_) & ~width_mask(width_)) == 0;
    }
    [[nodiscard]] constexpr bool is_constant() const noexcept { return mask_ == 0; }
    [[nodiscard]] constexpr int unknown_count() const noexcept { return std::popcount(mask_); }

    /// |γ(t)| = 2^popcount(mask).
    [[nodiscard]] constexpr u128 cardinality() const noexcept { return u128{1} << unknown_count(); }

    [[nodiscard]] Trit trit_at(int k) const {
        if (k < 0 || k >= width_)
            throw Error(Errc::IndexRange, "trit index " + std::to_string(k) + " outside width");
        if ((mask_ >> k) & 1) return Trit::Unknown;
        return ((value_ >> k) & 1) ? Trit::One : Trit::Zero;
    }

    /// x ∈ γ(t) iff x & ~mask == value.
    [[nodiscard]] bool contains(word x) const {
        if ((x & ~width_mask(width_)) != 0)
            throw Error(Errc::BitsAboveWidth, "concrete value exceeds width " + std::to_string(width_));
        return (x & ~mask_) == value_;
    }

    /// Hot-path membership without the range check.
    [[nodiscard]] constexpr bool contains_unchecked(word x) const noexcept { return (x & ~mask_) == value_; }

    friend constexpr bool operator==(const Tnum&, const Tnum&) = default;

  private:
    constexpr Tnum(word value, word mask, int width) noexcept : value_(value), mask_(mask), width_(width) {}

    word value_;
    word mask_;
    int width_;
};

inline Tnum make(word value, word mask, int width) { return Tnum::make(value, mask, width); }
inline Tnum top(int width) { return Tnum::top(width); }
inline Tnum constant(word x, int width) { return Tnum::constant(x, width); }
inline Trit trit_at(const Tnum& t, int k) { return t.trit_at(k); }
inline bool is_member(word x, const Tnum& t) { return t.contains(x); }
inline u128 cardinality(const Tnum& t) { return t.cardinality(); }

inline void check_same_width(const Tnum& a, const Tnum& b) {
    if (a.width() != b.width())
        throw Error(Errc::WidthMismatch,
                    "widths " + std::to_string(a.width()) + " and " + std::to_string(b.width()));
}

/// a ⊑ b: every unknown trit of a is unknown in b, and every known trit of b
/// has the same value in a.
constexpr bool refines(const Tnum& a, const Tnum& b) noexcept {
    return (a.mask() & ~b.mask()) == 0 && (a.value() & ~b.mask()) == b.value();
}

inline Order compare(const Tnum& a, const Tnum& b) {
    check_same_width(a, b);
    if (a == b) return Order::Equal;
    if (refines(a, b)) return Order::LeftMorePrecise;
    if (refines(b, a)) return Order::RightMorePrecise;
    return Order::Incomparable;
}

/// Visits all 3^width well-formed tnums, ordered by mask then value.
template <typename Fn>
void for_each_tnum(int width, Fn&& fn) {
    check_width(width);
    const word full = width_mask(width);
    word mask = 0;
    do {
        const word free = full & ~mask;
        // Walk the submasks of `free` in increasing order.
        word value = 0;
        do {
            fn(Tnum::raw(value, mask, width));
            value = (value - free) & free;
        } while (value != 0);
        mask = (mask + 1) & full;
    } while (mask != 0);
}

inline std::vector<Tnum> all_tnums(int width) {
    if (width > 16) throw Error(Errc::WidthTooLargeForEnumeration, "refusing to list 3^" + std::to_string(width));
    std::vector<Tnum> out;
    std::size_t n = 1;
    for (int i = 0; i < width; ++i) n *= 3;
    out.reserve(n);
    for_each_tnum(width, [&](const Tnum& t) { out.push_back(t); });
    return out;
}

} // namespace tnumlab
