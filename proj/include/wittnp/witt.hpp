// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wittnp/carry_table.hpp"
#include "wittnp/perfring.hpp"

namespace wittnp {

/// Truncated element sum_{d<=L} [x_d] p^d of W(R).
///
/// Digit d is stored exact modulo t^(ctx.working_cap(d)); digit(d) is the
/// mod t^N view used for display, equality and Newton polygons.  Some digits
/// are known completely (digit_exact), e.g. those of parsed text or digits no
/// carry can reach.  A literal element is exactly the finite sum of its
/// digits: every digit is exact and nothing lies beyond digit L.
class WittElement {
public:
    explicit WittElement(const PrecisionCtx& ctx);

    static WittElement zero(const PrecisionCtx& ctx) { return WittElement(ctx); }
    static WittElement one(const PrecisionCtx& ctx);
    /// The constant -1: [p-1] for odd p, all digits 1 for p = 2.
    static WittElement minus_one(const PrecisionCtx& ctx);
    /// [x].  Literal when no monomial of x was dropped.
    static WittElement teich(const PrecisionCtx& ctx, const MonomialSeries& x);
    /// Digits given by term lists; missing trailing digits are zero.
    static WittElement from_digits(const PrecisionCtx& ctx,
                                   const std::vector<std::vector<std::pair<Rational, long>>>& digits,
                                   bool literal);
    static WittElement from_series(const PrecisionCtx& ctx, const std::vector<MonomialSeries>& digits,
                                   bool literal);
    /// Digits whose true values are known exactly, with unknown digits beyond L
    /// (e.g. a truncated infinite sum).
    static WittElement exact_prefix(const PrecisionCtx& ctx, const std::vector<MonomialSeries>& digits);

    const PrecisionCtx& ctx() const noexcept { return ctx_; }
    unsigned digits() const noexcept { return ctx_.digits; }
    bool literal() const;
    bool digit_exact(unsigned d) const { return exact_.at(d); }
    /// Digits beyond L are known to vanish.
    bool tail_zero() const noexcept { return tail_zero_; }
    WittElement as_nonliteral() const;

    /// Digit d modulo t^N.
    MonomialSeries digit(unsigned d) const;
    /// Digit d at its working precision.
    const MonomialSeries& raw_digit(unsigned d) const { return digits_.at(d); }
    bool is_zero() const;

    /// Same value at a smaller digit count L' <= L (carries only move upward).
    WittElement truncated_to(unsigned new_digits) const;
    /// p^k * f: digits shifted up by k.
    WittElement shifted(unsigned k) const;

    /// "[t] + [t^(1/2)]*p"; digits mod t^N; "[0]" for zero.
    std::string str() const;

    /// Equality of the mod t^N views (and of p, L, N).
    friend bool operator==(const WittElement& a, const WittElement& b);
    /// Equality of the stored digits at working precision.
    friend bool same_raw_digits(const WittElement& a, const WittElement& b);

private:
    PrecisionCtx ctx_;
    friend class DigitPiles;

    std::vector<MonomialSeries> digits_;
    std::vector<bool> exact_;
    bool tail_zero_ = true;
};

/// Teichmuller expansion of [x] + [y] (x, y at digit-0 precision).
WittElement teich_add(const PrecisionCtx& ctx, const MonomialSeries& x, const MonomialSeries& y,
                      const CarryTable& table);
WittElement teich_add(const PrecisionCtx& ctx, const MonomialSeries& x, const MonomialSeries& y);

WittElement witt_add(const WittElement& f, const WittElement& g);
WittElement witt_mul(const WittElement& f, const WittElement& g);
WittElement witt_neg(const WittElement& f);
WittElement witt_sub(const WittElement& f, const WittElement& g);
/// f^e by repeated multiplication (e >= 0).
WittElement witt_pow(const WittElement& f, unsigned e);

/// Folds a pile of digit-level summands [x_1] + ... + [x_k] in the given order.
WittElement teich_sum(const PrecisionCtx& ctx, const std::vector<MonomialSeries>& pile);

inline WittElement operator+(const WittElement& f, const WittElement& g) { return witt_add(f, g); }
inline WittElement operator*(const WittElement& f, const WittElement& g) { return witt_mul(f, g); }
inline WittElement operator-(const WittElement& f) { return witt_neg(f); }
inline WittElement operator-(const WittElement& f, const WittElement& g) { return witt_sub(f, g); }

}  // namespace wittnp
