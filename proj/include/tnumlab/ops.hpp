// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "tnumlab/arith.hpp"
#include "tnumlab/bitops.hpp"
#include "tnumlab/galois.hpp"

namespace tnumlab {

enum class OpId {
    add,
    sub,
    and_,
    or_,
    xor_,
    lshift,
    rshift,
    arsh,
    kern_mul,
    bitwise_mul,
    bitwise_mul_opt,
    our_mul,
    our_mul_simplified,
};

inline constexpr std::array<OpId, 13> all_ops{
    OpId::add,      OpId::sub,      OpId::and_,        OpId::or_,
    OpId::xor_,     OpId::lshift,   OpId::rshift,      OpId::arsh,
    OpId::kern_mul, OpId::bitwise_mul, OpId::bitwise_mul_opt, OpId::our_mul,
    OpId::our_mul_simplified,
};

constexpr std::string_view to_string(OpId op) noexcept {
    switch (op) {
    case OpId::add: return "add";
    case OpId::sub: return "sub";
    case OpId::and_: return "and";
    case OpId::or_: return "or";
    case OpId::xor_: return "xor";
    case OpId::lshift: return "lshift";
    case OpId::rshift: return "rshift";
    case OpId::arsh: return "arsh";
    case OpId::kern_mul: return "kern_mul";
    case OpId::bitwise_mul: return "bitwise_mul";
    case OpId::bitwise_mul_opt: return "bitwise_mul_opt";
    case OpId::our_mul: return "our_mul";
    case OpId::our_mul_simplified: return "our_mul_simplified";
    }
    return "?";
}

inline OpId parse_op(std::string_view name) {
    for (OpId op : all_ops)
        if (to_string(op) == name) return op;
    throw Error(Errc::UnknownOp, "unknown operator '" + std::string(name) + "'");
}

/// Shift operators take a concrete amount instead of a second tnum.
constexpr bool is_shift(OpId op) noexcept {
    return op == OpId::lshift || op == OpId::rshift || op == OpId::arsh;
}

constexpr bool is_mul(OpId op) noexcept {
    return op == OpId::kern_mul || op == OpId::bitwise_mul || op == OpId::bitwise_mul_opt ||
           op == OpId::our_mul || op == OpId::our_mul_simplified;
}

/// Concrete semantics the operator abstracts. For shifts, y is the amount.
inline ConcreteOp concrete_op(OpId op) noexcept {
    switch (op) {
    case OpId::add: return concrete::Add;
    case OpId::sub: return concrete::Sub;
    case OpId::and_: return concrete::And;
    case OpId::or_: return concrete::Or;
    case OpId::xor_: return concrete::Xor;
    case OpId::lshift: return {"lshift", concrete::lshift};
    case OpId::rshift: return {"rshift", concrete::rshift};
    case OpId::arsh: return {"arsh", concrete::arsh};
    default: return concrete::Mul;
    }
}

/// Applies a binary (non-shift) operator.
inline Tnum apply(OpId op, const Tnum& p, const Tnum& q) {
    switch (op) {
    case OpId::add: return tnum_add(p, q);
    case OpId::sub: return tnum_sub(p, q);
    case OpId::and_: return tnum_and(p, q);
    case OpId::or_: return tnum_or(p, q);
    case OpId::xor_: return tnum_xor(p, q);
    case OpId::kern_mul: return kern_mul(p, q);
    case OpId::bitwise_mul: return bitwise_mul(p, q);
    case OpId::bitwise_mul_opt: return bitwise_mul_opt(p, q);
    case OpId::our_mul: return our_mul(p, q);
    case OpId::our_mul_simplified: return our_mul_simplified(p, q);
    default: break;
    }
    throw Error(Errc::UnknownOp, std::string(to_string(op)) + " takes a shift amount, not a tnum");
}

inline Tnum apply_shift(OpId op, const Tnum& t, unsigned amount) {
    switch (op) {
    case OpId::lshift: return tnum_lshift(t, amount);
    case OpId::rshift: return tnum_rshift(t, amount);
    case OpId::arsh: return tnum_arsh(t, amount);
    default: break;
    }
    throw Error(Errc::UnknownOp, std::string(to_string(op)) + " is not a shift");
}

/// Uniform entry point: shifts read `amount`, everything else reads `q`.
inline Tnum evaluate(OpId op, const Tnum& p, const std::optional<Tnum>& q, unsigned amount) {
    if (is_shift(op)) return apply_shift(op, p, amount);
    if (!q) throw Error(Errc::UnknownOp, std::string(to_string(op)) + " needs a second operand");
    return apply(op, p, *q);
}

} // namespace tnumlab
