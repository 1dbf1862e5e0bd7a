// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Abstract arithmetic over tnums: the kernel's O(1) addition and subtraction,
// three long-multiplication style multipliers (kernel, bitwise domain, and the
// value/mask decomposed multiplier), all modulo 2^width.

#include "tnumlab/bitops.hpp"
#include "tnumlab/tnum.hpp"

namespace tnumlab {

inline Tnum tnum_add(const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    const word m = width_mask(p.width());
    const word sv = (p.value() + q.value()) & m;
    const word sm = (p.mask() + q.mask()) & m;
    const word sigma = (sv + sm) & m;
    const word chi = sigma ^ sv;
    const word eta = chi | p.mask() | q.mask();
    return Tnum::raw(sv & ~eta, eta, p.width());
}

inline Tnum tnum_sub(const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    const word m = width_mask(p.width());
    const word dv = (p.value() - q.value()) & m;
    const word alpha = (dv + p.mask()) & m; // (P.v + P.m) - Q.v, fewest borrows
    const word beta = (dv - q.mask()) & m;  // P.v - (Q.v + Q.m), most borrows
    const word chi = alpha ^ beta;
    const word mu = chi | p.mask() | q.mask();
    return Tnum::raw(dv & ~mu, mu, p.width());
}

/// Kernel multiply-accumulate helper: for each set bit i of y, adds the
/// all-unknown tnum (0, x << i) into acc. Stops as soon as y runs out.
inline Tnum hma(Tnum acc, word x, word y) {
    const word m = width_mask(acc.width());
    while (y != 0) {
        if (y & 1) acc = tnum_add(acc, Tnum::raw(0, x, acc.width()));
        y >>= 1;
        x = (x << 1) & m;
    }
    return acc;
}

inline Tnum kern_mul(const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    const word m = width_mask(p.width());
    const Tnum pi = Tnum::raw((p.value() * q.value()) & m, 0, p.width());
    const Tnum acc = hma(pi, p.mask(), q.mask() | q.value());
    return hma(acc, q.mask(), p.value());
}

namespace detail {

// Partial product of q by trit i of p, before shifting. `naive_kill` selects
// the per-trit loop that turns each known 1 of q into an unknown trit.
inline Tnum multiply_bit(const Tnum& p, const Tnum& q, int i, bool naive_kill) {
    const bool unknown = (p.mask() >> i) & 1;
    const bool one = (p.value() >> i) & 1;
    if (!unknown && !one) return Tnum::raw(0, 0, q.width());
    if (!unknown) return q;
    if (!naive_kill) return Tnum::raw(0, q.value() | q.mask(), q.width());
    word v = q.value();
    word mu = q.mask();
    for (int j = 0; j < q.width(); ++j) {
        const word bit = word{1} << j;
        if ((v & bit) && !(mu & bit)) {
            v &= ~bit;
            mu |= bit;
        }
    }
    return Tnum::raw(v, mu, q.width());
}

inline Tnum bitwise_mul_impl(const Tnum& p, const Tnum& q, bool naive_kill) {
    check_same_width(p, q);
    Tnum sum = Tnum::raw(0, 0, p.width());
    for (int i = 0; i < p.width(); ++i) {
        const Tnum product = multiply_bit(p, q, i, naive_kill);
        sum = tnum_add(sum, tnum_lshift(product, static_cast<unsigned>(i)));
    }
    return sum;
}

} // namespace detail

/// Bitwise-domain multiplication with the trit-by-trit kill loop.
inline Tnum bitwise_mul(const Tnum& p, const Tnum& q) { return detail::bitwise_mul_impl(p, q, true); }

/// Same partial products, with the kill loop replaced by (0, Q.v | Q.m).
inline Tnum bitwise_mul_opt(const Tnum& p, const Tnum& q) { return detail::bitwise_mul_impl(p, q, false); }

/// Value/mask decomposed long multiplication, fixed trip count. Known
/// partial-product bits accumulate in acc_v, unknown ones in acc_m, and the
/// two sums meet in a single final addition.
inline Tnum our_mul_simplified(Tnum p, Tnum q) {
    check_same_width(p, q);
    const int w = p.width();
    Tnum acc_v = Tnum::raw(0, 0, w);
    Tnum acc_m = Tnum::raw(0, 0, w);
    for (int i = 0; i < w; ++i) {
        if ((p.value() & 1) && !(p.mask() & 1)) {
            acc_v = tnum_add(acc_v, Tnum::raw(q.value(), 0, w));
            acc_m = tnum_add(acc_m, Tnum::raw(0, q.mask(), w));
        } else if (p.mask() & 1) {
            acc_m = tnum_add(acc_m, Tnum::raw(0, q.value() | q.mask(), w));
        }
        p = tnum_rshift(p, 1);
        q = tnum_lshift(q, 1);
    }
    return tnum_add(acc_v, acc_m);
}

/// our_mul_simplified with acc_v strength-reduced to the product of the value
/// words and the loop cut off once p has no nonzero trits left.
inline Tnum our_mul(Tnum p, Tnum q) {
    check_same_width(p, q);
    const int w = p.width();
    const Tnum acc_v = Tnum::raw((p.value() * q.value()) & width_mask(w), 0, w);
    Tnum acc_m = Tnum::raw(0, 0, w);
    while (p.value() | p.mask()) {
        if ((p.value() & 1) && !(p.mask() & 1))
            acc_m = tnum_add(acc_m, Tnum::raw(0, q.mask(), w));
        else if (p.mask() & 1)
            acc_m = tnum_add(acc_m, Tnum::raw(0, q.value() | q.mask(), w));
        p = tnum_rshift(p, 1);
        q = tnum_lshift(q, 1);
    }
    return tnum_add(acc_v, acc_m);
}

} // namespace tnumlab
