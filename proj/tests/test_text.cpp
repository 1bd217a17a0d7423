// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wittnp/errors.hpp"
#include "wittnp/text.hpp"

using namespace wittnp;
using namespace testsupport;

TEST_CASE("parse_element examples") {
    auto c = ctx(2, 4, 4);
    auto f = parse_element("[t] + [t^(1/2)]*p", c);
    CHECK(f.literal());
    CHECK(f.digit(0) == MonomialSeries::monomial(2, 4, 1));
    CHECK(f.digit(1) == MonomialSeries::monomial(2, 4, q(1, 2)));
    CHECK(f.digit(2).is_zero());

    auto g = parse_element("[t^(7/8)+t^(5/8)]*p^2", c);
    CHECK(g.digit(2) == MonomialSeries::from_terms(2, 4, {{q(7, 8), 1}, {q(5, 8), 1}}));
    CHECK(g.digit(0).is_zero());

    CHECK(parse_element("[0]", c).is_zero());
    CHECK(parse_element("[1]", c) == WittElement::one(c));
    CHECK(parse_element("[2*t]", ctx(3, 2, 4)).digit(0).str() == "2*t");
}

TEST_CASE("repeated powers of p are summed with carries") {
    auto c = ctx(2, 3, 4);
    auto f = parse_element("[t] + [t]", c);
    CHECK(f == parse_element("[t]*p", c));
    CHECK_FALSE(f.literal());
}

TEST_CASE("parse errors carry positions") {
    auto c = ctx(2, 4, 4);
    auto position = [&](const char* text) -> long {
        try {
            parse_element(text, c);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position("[t") == 2);
    CHECK(position("t]") == 0);
    CHECK(position("[t] +") == 5);
    CHECK(position("[t]*q") == 4);
    CHECK(position("[t^(1/2]") == 7);
    CHECK(position("[t] junk") == 4);
}

TEST_CASE("semantic errors") {
    auto c = ctx(2, 4, 4);
    CHECK_THROWS_AS(parse_element("[t^(1/3)]", c), SemanticError);
    CHECK_THROWS_AS(parse_element("[t]*p^5", c), SemanticError);
    CHECK_NOTHROW(parse_element("[t^(1/3)]", ctx(3, 4, 4)));
}

TEST_CASE("format and parse round trip") {
    for (unsigned p : {2u, 3u, 5u}) {
        auto c = ctx(p, 3, 3);
        std::mt19937_64 rng(11 + p);
        for (int i = 0; i < 60; ++i) {
            auto f = random_element(rng, c, 3, 2, 3);
            auto text = format_element(f);
            CHECK(parse_element(text, c) == f);
            CHECK(format_element(parse_element(text, c)) == text);
        }
    }
}
