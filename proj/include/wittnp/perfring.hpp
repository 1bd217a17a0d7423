// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wittnp/rational.hpp"

namespace wittnp {

/// Precision regime shared by Witt elements: prime p, Teichmuller digits
/// 0..digits, and the t-adic cap N below which every digit is exact.
struct PrecisionCtx {
    unsigned p = 2;
    unsigned digits = 4;
    Rational tcap{4};

    /// Throws UsageError unless p in {2,3,5} and tcap > 1.
    void validate() const;

    /// Digit d is stored exactly modulo t^(tcap * p^(digits - d)).  Carry
    /// polynomials take p^k-th roots, so lower digits need proportionally
    /// more room for the top digit to stay exact modulo t^tcap.
    Rational working_cap(unsigned d) const;

    friend bool operator==(const PrecisionCtx&, const PrecisionCtx&) = default;
};

bool is_supported_prime(unsigned p);

/// A finite F_p-combination of monomials t^q, q in Z[1/p] and 0 <= q < cap.
/// Terms are kept sorted by exponent with coefficients in 1..p-1.
class MonomialSeries {
public:
    struct Term {
        Rational exponent;
        unsigned coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    MonomialSeries(unsigned p, Rational cap);

    static MonomialSeries monomial(unsigned p, Rational cap, Rational exponent, long coeff = 1);
    static MonomialSeries constant(unsigned p, Rational cap, long coeff);
    /// Canonicalizes: reduces coefficients mod p, merges equal exponents,
    /// drops exponents >= cap.  Rejects negative exponents and exponents
    /// whose denominator is not a power of p (SemanticError).
    static MonomialSeries from_terms(unsigned p, Rational cap,
                                     const std::vector<std::pair<Rational, long>>& terms);

    unsigned p() const noexcept { return p_; }
    const Rational& cap() const noexcept { return cap_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// v(x): least exponent, +inf for zero.
    ExtRat valuation() const;

    /// Same terms restricted below `cap`; the result carries the new cap.
    MonomialSeries truncated(const Rational& cap) const;

    /// x^(1/p^k): exponents divided by p^k.  Exact (R is perfect).
    MonomialSeries root_p(unsigned k) const;
    /// x^(p^k): exponents multiplied by p^k, truncated at the cap.
    MonomialSeries frobenius(unsigned k) const;
    /// Every exponent multiplied by the same t^q shift (x * t^q).
    MonomialSeries shifted(const Rational& q) const;
    MonomialSeries scaled(long c) const;

    std::string str() const;

    friend bool operator==(const MonomialSeries& a, const MonomialSeries& b) {
        return a.p_ == b.p_ && a.terms_ == b.terms_;
    }

private:
    friend MonomialSeries add(const MonomialSeries&, const MonomialSeries&);
    friend MonomialSeries mul_capped(const MonomialSeries&, const MonomialSeries&, const Rational&);

    unsigned p_;
    Rational cap_;
    std::vector<Term> terms_;
};

/// Sum with matching (p, cap); UsageError otherwise.
MonomialSeries add(const MonomialSeries& x, const MonomialSeries& y);
/// Product with matching (p, cap); monomials at or above the cap are dropped.
MonomialSeries mul(const MonomialSeries& x, const MonomialSeries& y);
/// Product of series with equal p, truncated at `cap` (caps of the inputs are ignored).
MonomialSeries mul_capped(const MonomialSeries& x, const MonomialSeries& y, const Rational& cap);
MonomialSeries negate(const MonomialSeries& x);
/// x^e by repeated squaring, truncated at x's cap.
MonomialSeries pow(const MonomialSeries& x, std::uint64_t e);
inline MonomialSeries root_p(const MonomialSeries& x, unsigned k) { return x.root_p(k); }
inline ExtRat valuation(const MonomialSeries& x) { return x.valuation(); }

inline MonomialSeries operator+(const MonomialSeries& x, const MonomialSeries& y) { return add(x, y); }
inline MonomialSeries operator*(const MonomialSeries& x, const MonomialSeries& y) { return mul(x, y); }
inline MonomialSeries operator-(const MonomialSeries& x) { return negate(x); }

}  // namespace wittnp
