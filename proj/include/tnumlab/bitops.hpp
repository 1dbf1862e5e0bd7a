// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Bitwise and shift transfer functions, following the Linux kernel's
// constructions generalized to a parametric width. Shift amounts are
// concrete; amounts at or past the width saturate.

#include <cstdint>

#include "tnumlab/tnum.hpp"

namespace tnumlab {

inline Tnum tnum_and(const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    const word alpha = p.value() | p.mask();
    const word beta = q.value() | q.mask();
    const word v = p.value() & q.value();
    return Tnum::raw(v, alpha & beta & ~v, p.width());
}

inline Tnum tnum_or(const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    const word v = p.value() | q.value();
    const word mu = p.mask() | q.mask();
    return Tnum::raw(v, mu & ~v, p.width());
}

inline Tnum tnum_xor(const Tnum& p, const Tnum& q) {
    check_same_width(p, q);
    const word v = p.value() ^ q.value();
    const word mu = p.mask() | q.mask();
    return Tnum::raw(v & ~mu, mu, p.width());
}

inline Tnum tnum_lshift(const Tnum& t, unsigned shift) {
    if (shift >= static_cast<unsigned>(t.width())) return Tnum::raw(0, 0, t.width());
    const word m = width_mask(t.width());
    return Tnum::raw((t.value() << shift) & m, (t.mask() << shift) & m, t.width());
}

inline Tnum tnum_rshift(const Tnum& t, unsigned shift) {
    if (shift >= static_cast<unsigned>(t.width())) return Tnum::raw(0, 0, t.width());
    return Tnum::raw(t.value() >> shift, t.mask() >> shift, t.width());
}

/// Replicates the sign trit of both words into the vacated positions, so an
/// unknown sign floods unknown trits in from the top.
inline Tnum tnum_arsh(const Tnum& t, unsigned shift) {
    const int w = t.width();
    const int s = shift >= static_cast<unsigned>(w) ? w - 1 : static_cast<int>(shift);
    const auto sext = [w](word x) { return static_cast<std::int64_t>(x << (64 - w)) >> (64 - w); };
    const word m = width_mask(w);
    return Tnum::raw(static_cast<word>(sext(t.value()) >> s) & m, static_cast<word>(sext(t.mask()) >> s) & m, w);
}

} // namespace tnumlab
