// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "tnumlab/tnum.hpp"

namespace tnumlab {

/// Distributions over well-formed tnums.
///   per_trit_uniform        each trit independently 0, 1, or unknown (1/3 each)
///   uniform_vm_normalized   v, m uniform words, then v &= ~m
enum class Sampler { per_trit_uniform, uniform_vm_normalized };

constexpr std::string_view to_string(Sampler s) noexcept {
    return s == Sampler::per_trit_uniform ? "per_trit_uniform" : "uniform_vm_normalized";
}

inline Sampler parse_sampler(std::string_view name) {
    if (name == "per_trit_uniform") return Sampler::per_trit_uniform;
    if (name == "uniform_vm_normalized") return Sampler::uniform_vm_normalized;
    throw Error(Errc::ParseError, "unknown sampler '" + std::string(name) + "'");
}

using Rng = std::mt19937_64;

template <typename Gen>
Tnum sample_tnum(int width, Gen& rng, Sampler sampler = Sampler::per_trit_uniform) {
    check_width(width);
    const word full = width_mask(width);
    if (sampler == Sampler::uniform_vm_normalized) {
        const word m = rng() & full;
        const word v = rng() & full & ~m;
        return Tnum::raw(v, m, width);
    }
    // 40 trits per 64-bit draw: 3^40 < 2^64, and the rejection threshold keeps
    // each base-3 digit exactly uniform.
    constexpr word pow3_40 = 12157665459056928801ull;
    constexpr word limit = ~word{0} - (~word{0} % pow3_40 + 1) % pow3_40;
    word v = 0;
    word m = 0;
    int k = 0;
    while (k < width) {
        word r;
        do {
            r = rng();
        } while (r > limit);
        r %= pow3_40;
        for (int j = 0; j < 40 && k < width; ++j, ++k) {
            const word trit = r % 3;
            r /= 3;
            if (trit == 1) v |= word{1} << k;
            if (trit == 2) m |= word{1} << k;
        }
    }
    return Tnum::raw(v, m, width);
}

/// Uniform member of γ(t).
template <typename Gen>
word sample_member(const Tnum& t, Gen& rng) {
    return t.value() | (rng() & t.mask());
}

} // namespace tnumlab
