// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/rational.hpp"

#include <cctype>

#include "wittnp/errors.hpp"

namespace wittnp {

std::string to_string(const Rational& q) { return q.str(); }
std::string to_string(const Integer& z) { return z.str(); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    auto slash = s.find('/');
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw UsageError("malformed rational '" + std::string(text) + "'");
    Integer d = parse_integer(den);
    if (d == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
}

Integer int_pow(unsigned base, std::uint64_t exponent) {
    Integer result = 1;
    Integer b = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1u;
        if (exponent > 0) b *= b;
    }
    return result;
}

Rational rational_pow(unsigned p, std::int64_t e) {
    if (e >= 0) return Rational(int_pow(p, static_cast<std::uint64_t>(e)));
    return Rational(Integer(1), int_pow(p, static_cast<std::uint64_t>(-e)));
}

bool has_p_power_denominator(const Rational& q, unsigned p) {
    Integer d = boost::multiprecision::denominator(q);
    while (d > 1) {
        if (d % p != 0) return false;
        d /= p;
    }
    return true;
}

Integer floor(const Rational& q) {
    Integer n = boost::multiprecision::numerator(q);
    Integer d = boost::multiprecision::denominator(q);
    Integer r = n / d;  // truncates toward zero
    if (n < 0 && r * d != n) r -= 1;
    return r;
}

Integer ceil(const Rational& q) { return -floor(-q); }

std::strong_ordering compare(const Rational& a, const Rational& b) {
    int c = a.compare(b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

const Rational& ExtRat::value() const {
    if (kind_ != Kind::Finite) throw UsageError("value() of infinite ExtRat");
    return value_;
}

std::string ExtRat::str() const {
    switch (kind_) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        case Kind::Finite: break;
    }
    return to_string(value_);
}

bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != ExtRat::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != ExtRat::Kind::Finite) return std::strong_ordering::equal;
    return compare(a.value_, b.value_);
}

ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
        throw UsageError("+inf + -inf is undefined");
    if (a.is_pos_inf() || b.is_pos_inf()) return ExtRat::pos_inf();
    if (a.is_neg_inf() || b.is_neg_inf()) return ExtRat::neg_inf();
    return ExtRat(Rational(a.value_ + b.value_));
}

ExtRat operator-(const ExtRat& a) {
    if (a.is_pos_inf()) return ExtRat::neg_inf();
    if (a.is_neg_inf()) return ExtRat::pos_inf();
    return ExtRat(Rational(-a.value_));
}

ExtRat parse_ext_rat(std::string_view text) {
    auto s = trim(text);
    if (s == "inf" || s == "+inf") return ExtRat::pos_inf();
    if (s == "-inf") return ExtRat::neg_inf();
    return ExtRat(parse_rational(s));
}

}  // namespace wittnp
