// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace wittnp {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Exact string form: "3", "-1/4".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts "a", "-a", "a/b" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

Integer int_pow(unsigned base, std::uint64_t exponent);

/// p^e for any integer e.
Rational rational_pow(unsigned p, std::int64_t e);

/// True iff q's reduced denominator is a power of p.
bool has_p_power_denominator(const Rational& q, unsigned p);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Element of Q extended by the symbols +inf and -inf, totally ordered.
class ExtRat {
public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    ExtRat() = default;
    ExtRat(Rational value) : value_(std::move(value)) {}  // NOLINT: implicit by design of the algebra
    ExtRat(long value) : value_(value) {}                  // NOLINT

    static ExtRat pos_inf() { return ExtRat(Kind::PosInf); }
    static ExtRat neg_inf() { return ExtRat(Kind::NegInf); }

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

    /// Throws UsageError for the infinite symbols.
    const Rational& value() const;

    std::string str() const;

    friend bool operator==(const ExtRat& a, const ExtRat& b);
    friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

    /// Undefined (throws) for +inf + -inf.
    friend ExtRat operator+(const ExtRat& a, const ExtRat& b);
    friend ExtRat operator-(const ExtRat& a);
    friend ExtRat operator-(const ExtRat& a, const ExtRat& b) { return a + (-b); }

private:
    explicit ExtRat(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Finite;
    Rational value_{0};
};

/// Parses "inf", "+inf", "-inf" or a rational.
ExtRat parse_ext_rat(std::string_view text);

std::strong_ordering compare(const Rational& a, const Rational& b);

}  // namespace wittnp
