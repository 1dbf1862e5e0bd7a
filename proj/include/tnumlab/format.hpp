// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Text forms of a tnum:
//   trit string  "x10"          most significant trit first; 'x' is unknown
//                               ('X', '?', and UTF-8 'μ' are accepted on input)
//   hex pair     "v=0x2,m=0x4"  lowercase on output, either case on input
// A trit string shorter than the width is zero-extended on the left.

#include <cstdio>
#include <string>
#include <string_view>

#include "tnumlab/tnum.hpp"

namespace tnumlab {

inline std::string to_hex(word w) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(w));
    return buf;
}

inline std::string format(const Tnum& t) {
    std::string out;
    out.reserve(static_cast<std::size_t>(t.width()));
    for (int k = t.width() - 1; k >= 0; --k) {
        if ((t.mask() >> k) & 1)
            out.push_back('x');
        else
            out.push_back(((t.value() >> k) & 1) ? '1' : '0');
    }
    return out;
}

inline std::string format_hex(const Tnum& t) { return "v=" + to_hex(t.value()) + ",m=" + to_hex(t.mask()); }

namespace detail {

inline int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Parses "<hex>" (optionally 0x-prefixed) starting at `pos`, stopping at `stop`
// or end of input.
inline word parse_hex_field(std::string_view text, std::size_t& pos, char stop) {
    if (text.substr(pos, 2) == "0x" || text.substr(pos, 2) == "0X") pos += 2;
    const std::size_t start = pos;
    word w = 0;
    while (pos < text.size() && text[pos] != stop) {
        const int d = hex_digit(text[pos]);
        if (d < 0) throw Error(Errc::ParseError, "bad hex digit", pos);
        if (pos - start >= 16) throw Error(Errc::ParseError, "hex field longer than 64 bits", pos);
        w = (w << 4) | static_cast<word>(d);
        ++pos;
    }
    if (pos == start) throw Error(Errc::ParseError, "empty hex field", pos);
    return w;
}

inline Tnum parse_hex_form(std::string_view text, int width) {
    std::size_t pos = 2; // past "v="
    const word value = parse_hex_field(text, pos, ',');
    if (text.substr(pos, 3) != ",m=") throw Error(Errc::ParseError, "expected \",m=\"", pos);
    pos += 3;
    const word mask = parse_hex_field(text, pos, '\0');
    return Tnum::make(value, mask, width);
}

} // namespace detail

inline Tnum parse(std::string_view text, int width) {
    check_width(width);
    if (text.substr(0, 2) == "v=") return detail::parse_hex_form(text, width);

    word value = 0;
    word mask = 0;
    int trits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        value <<= 1;
        mask <<= 1;
        if (c == '1') {
            value |= 1;
        } else if (c == 'x' || c == 'X' || c == '?') {
            mask |= 1;
        } else if (c == '\xCE' && i + 1 < text.size() && text[i + 1] == '\xBC') { // U+03BC
            mask |= 1;
            ++i;
        } else if (c != '0') {
            throw Error(Errc::ParseError, std::string("unexpected character '") + c + "'", i);
        }
        if (++trits > width) throw Error(Errc::ParseError, "more trits than width " + std::to_string(width), i);
    }
    if (trits == 0) throw Error(Errc::ParseError, "empty tnum", 0);
    return Tnum::make(value, mask, width);
}

} // namespace tnumlab
