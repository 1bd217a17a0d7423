// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "wittnp/witt.hpp"

namespace wittnp {

/// Parses `t^(1/2) + 2*t^(3/4)`; monomials at or above `cap` are dropped.
/// ParseError carries the offending offset; SemanticError flags exponents
/// outside Z[1/p].
MonomialSeries parse_series(std::string_view text, unsigned p, const Rational& cap);

/// Parses `[t] + [t^(3/4)]*p + [t^(5/8)+t^(7/8)]*p^2`.  The result is literal
/// unless a p-power repeats (such terms are summed with carries).
WittElement parse_element(std::string_view text, const PrecisionCtx& ctx);

inline std::string format_element(const WittElement& f) { return f.str(); }

/// Small cursor used by the text grammars.
class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    void skip_ws();
    bool at_end();
    char peek();
    bool accept(char c);
    void expect(char c);
    bool accept_word(std::string_view w);
    /// Optionally signed decimal integer.
    long integer();
    /// `a` or `a/b`.
    Rational rational();
    std::size_t pos() const noexcept { return pos_; }
    std::string_view rest() const { return text_.substr(pos_); }
    void set_pos(std::size_t pos) { pos_ = pos; }
    [[noreturn]] void fail(const std::string& what) const;

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

/// Series grammar starting at the scanner's position; stops before a token
/// that cannot continue the sum (e.g. ']').
MonomialSeries parse_series(Scanner& s, unsigned p, const Rational& cap);

}  // namespace wittnp
