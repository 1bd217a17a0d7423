// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/text.hpp"

#include <cctype>
#include <map>

#include "wittnp/errors.hpp"

namespace wittnp {

void Scanner::skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Scanner::at_end() {
    skip_ws();
    return pos_ >= text_.size();
}

char Scanner::peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Scanner::accept(char c) {
    if (peek() != c || at_end()) return false;
    ++pos_;
    return true;
}

void Scanner::expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
}

bool Scanner::accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
}

long Scanner::integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
        pos_ = start;
        fail("expected an integer");
    }
    if (pos_ - digits > 17) {
        pos_ = start;
        fail("integer too long");
    }
    return std::stol(std::string(text_.substr(start, pos_ - start)));
}

Rational Scanner::rational() {
    skip_ws();
    std::size_t start = pos_;
    long num = integer();
    if (!accept('/')) return Rational(num);
    long den = integer();
    if (den <= 0) {
        pos_ = start;
        fail("denominator must be positive");
    }
    return Rational(num) / Rational(den);
}

void Scanner::fail(const std::string& what) const { throw ParseError(what, pos_); }

namespace {

std::pair<Rational, long> parse_term(Scanner& s) {
    long coeff = 1;
    bool have_coeff = false;
    char c = s.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
        coeff = s.integer();
        have_coeff = true;
        if (!s.accept('*')) return {Rational(0), coeff};
    }
    if (!s.accept('t')) s.fail(have_coeff ? "expected 't' after '*'" : "expected a term");
    if (!s.accept('^')) return {Rational(1), coeff};
    s.expect('(');
    Rational q = s.rational();
    s.expect(')');
    return {q, coeff};
}

std::vector<std::pair<Rational, long>> parse_terms(Scanner& s) {
    std::vector<std::pair<Rational, long>> terms;
    terms.push_back(parse_term(s));
    // A '+' followed by '[' belongs to the enclosing Witt sum.
    while (true) {
        std::size_t at = s.pos();
        if (!s.accept('+')) break;
        if (s.peek() == '[') {
            s.set_pos(at);
            break;
        }
        terms.push_back(parse_term(s));
    }
    return terms;
}

}  // namespace

MonomialSeries parse_series(Scanner& s, unsigned p, const Rational& cap) {
    return MonomialSeries::from_terms(p, cap, parse_terms(s));
}

MonomialSeries parse_series(std::string_view text, unsigned p, const Rational& cap) {
    Scanner s(text);
    MonomialSeries x = parse_series(s, p, cap);
    if (!s.at_end()) s.fail("unexpected trailing input");
    return x;
}

WittElement parse_element(std::string_view text, const PrecisionCtx& ctx) {
    ctx.validate();
    Scanner s(text);
    std::map<long, std::vector<MonomialSeries>> by_power;
    do {
        s.expect('[');
        auto terms = parse_terms(s);
        // Cap above every exponent so nothing is lost before the working caps apply.
        Rational top = 1;
        for (const auto& t : terms) top = std::max(top, t.first + 1);
        MonomialSeries x = MonomialSeries::from_terms(ctx.p, top, terms);
        s.expect(']');
        long power = 0;
        if (s.accept('*')) {
            if (!s.accept('p')) s.fail("expected 'p'");
            power = 1;
            if (s.accept('^')) {
                std::size_t at = s.pos();
                power = s.integer();
                if (power < 0) {
                    s.set_pos(at);
                    s.fail("negative power of p");
                }
            }
        }
        if (power > static_cast<long>(ctx.digits))
            throw SemanticError("p^" + std::to_string(power) + " exceeds the digit count " +
                                std::to_string(ctx.digits));
        by_power[power].push_back(std::move(x));
    } while (s.accept('+'));
    if (!s.at_end()) s.fail("unexpected trailing input");

    bool repeated = false;
    for (const auto& [k, xs] : by_power) repeated = repeated || xs.size() > 1;
    if (!repeated) {
        std::vector<MonomialSeries> digits(ctx.digits + 1, MonomialSeries(ctx.p, 1));
        for (const auto& [k, xs] : by_power) digits[static_cast<std::size_t>(k)] = xs.front();
        return WittElement::from_series(ctx, digits, true);
    }
    WittElement acc = WittElement::zero(ctx);
    for (const auto& [k, xs] : by_power)
        for (const auto& x : xs) acc = acc + WittElement::teich(ctx, x).shifted(static_cast<unsigned>(k));
    return acc;
}

}  // namespace wittnp
