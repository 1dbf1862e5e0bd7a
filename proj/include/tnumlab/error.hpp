// Copyright (c) tnumlab contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tnumlab {

enum class Errc {
    IllFormed,
    WidthRange,
    BitsAboveWidth,
    IndexRange,
    WidthMismatch,
    ParseError,
    EmptySet,
    WidthTooLargeForEnumeration,
    UnknownOp,
    TimerUnavailable,
    FixtureSchema,
};

constexpr std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::IllFormed: return "IllFormed";
    case Errc::WidthRange: return "WidthRange";
    case Errc::BitsAboveWidth: return "BitsAboveWidth";
    case Errc::IndexRange: return "IndexRange";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptySet: return "EmptySet";
    case Errc::WidthTooLargeForEnumeration: return "WidthTooLargeForEnumeration";
    case Errc::UnknownOp: return "UnknownOp";
    case Errc::TimerUnavailable: return "TimerUnavailable";
    case Errc::FixtureSchema: return "FixtureSchema";
    }
    return "Unknown";
}

/// Every precondition failure in the library is reported through this type.
/// `position()` is the character offset for ParseError and the record index
/// for FixtureSchema.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), position_(position) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }
    [[nodiscard]] std::optional<std::size_t> position() const noexcept { return position_; }

  private:
    Errc code_;
    std::optional<std::size_t> position_;
};

} // namespace tnumlab
