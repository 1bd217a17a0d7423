// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include "wittnp/witt.hpp"

namespace testsupport {

using wittnp::PrecisionCtx;
using wittnp::Rational;
using wittnp::WittElement;

inline Rational q(long a, long b = 1) { return Rational(a) / Rational(b); }

inline PrecisionCtx ctx(unsigned p, unsigned L, long N) {
    PrecisionCtx c;
    c.p = p;
    c.digits = L;
    c.tcap = N;
    return c;
}

/// Random element whose digits are sums of 0..max_terms monomials with
/// exponents j / p^denom_power below `range`.
inline WittElement random_element(std::mt19937_64& rng, const PrecisionCtx& c, int max_terms = 2,
                                  unsigned denom_power = 1, long range = 2, double digit_density = 0.6) {
    const long den = static_cast<long>(wittnp::int_pow(c.p, denom_power));
    std::uniform_int_distribution<long> num(0, range * den - 1);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_int_distribution<long> coeff(1, static_cast<long>(c.p) - 1);
    std::bernoulli_distribution present(digit_density);
    std::vector<std::vector<std::pair<Rational, long>>> digits(c.digits + 1);
    for (auto& d : digits) {
        if (!present(rng)) continue;
        int k = count(rng);
        for (int i = 0; i < k; ++i) d.emplace_back(q(num(rng), den), coeff(rng));
    }
    return WittElement::from_digits(c, digits, true);
}

}  // namespace testsupport
