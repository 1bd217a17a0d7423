// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wittnp {

/// Caller passed arguments that violate an operation's precondition
/// (mismatched contexts, unsupported primes, malformed polygons).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured resource ceiling (exponent size, carry-table depth) would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An arithmetic identity that must hold by construction failed.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Syntax error in one of the text grammars; `position` is a 0-based offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Well-formed text that denotes nothing valid (e.g. t^(1/3) when p = 2).
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wittnp
