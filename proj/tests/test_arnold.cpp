// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wittnp/arnold/certificates.hpp"
#include "wittnp/arnold/checks.hpp"
#include "wittnp/arnold/sequences.hpp"
#include "wittnp/errors.hpp"
#include "wittnp/polygon_io.hpp"
#include "wittnp/text.hpp"

using namespace wittnp;
using namespace wittnp::arnold;
using namespace testsupport;

namespace {

// p^(-i^(2^(n-1))) by repeated squaring of i.
Rational val_oracle(unsigned p, unsigned n, long i) {
    long e = i;
    for (unsigned j = 1; j < n; ++j) e *= e;
    return Rational(1) / Rational(int_pow(p, static_cast<std::uint64_t>(e)));
}

}  // namespace

TEST_CASE("val_a") {
    CHECK(val_a(2, 1, 3) == q(1, 8));
    CHECK(val_a(2, 3, 2) == Rational(1) / Rational(int_pow(2, 16)));
    for (unsigned n = 1; n <= 4; ++n) CHECK(val_a(3, n, 0) == 1);
    for (unsigned p : {2u, 3u, 5u})
        for (unsigned n = 1; n <= 3; ++n)
            for (long i = 0; i <= 6; ++i) CHECK(val_a(p, n, i) == val_oracle(p, n, i));
    CHECK_THROWS_AS(val_a(2, 5, 3), ResourceError);
    try {
        val_a(2, 5, 3);
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("val_a(5, 3)") != std::string::npos);
    }
    CHECK_THROWS_AS(val_a(2, 0, 1), UsageError);
}

TEST_CASE("h_element") {
    auto c = ctx(2, 2, 4);
    auto h1 = h_element(1, c);
    CHECK(h1.digit(0) == MonomialSeries::monomial(2, 4, 1));
    CHECK(h1.digit(1) == MonomialSeries::monomial(2, 4, q(1, 2)));
    CHECK(h1.digit(2) == MonomialSeries::monomial(2, 4, q(1, 4)));
    CHECK_FALSE(h1.tail_zero());
    CHECK(h_element(2, c).digit(2) == MonomialSeries::monomial(2, 4, q(1, 16)));

    auto P = np_of_witt(h_element(1, ctx(2, 4, 4)));
    CHECK(P.nodes() == std::vector<long>{0, 1, 2, 3, 4});
    for (long i = 0; i <= 4; ++i) CHECK(P.eval(Rational(i)).value == ExtRat(rational_pow(2, -i)));
}

TEST_CASE("h_power_np") {
    CHECK(h_power_np(2, 1, 2).eval(3).value == ExtRat(q(3, 4)));
    CHECK(h_power_np(2, 2, 2).eval(9).value == ExtRat(val_oracle(2, 2, 4) + val_oracle(2, 2, 5)));
    for (unsigned n = 1; n <= 3; ++n)
        for (long i = 0; i <= 5; ++i) CHECK(h_power_np(3, n, 1).eval(Rational(i)).value == ExtRat(val_a(3, n, i)));
    CHECK(h_power_np(2, 1, 1).limit() == ExtRat(0));

    // m-fold convolution of the materialized h_n equals the closed form.
    for (unsigned n = 1; n <= 2; ++n) {
        auto base = materialize(ClosedForm{2, n, 1}, 40);
        auto acc = base;
        for (unsigned m = 2; m <= 4; ++m) {
            acc = np_convolve(acc, base);
            auto closed = h_power_np(2, n, m);
            for (long t = 0; t <= std::min<long>(acc.certified_to(), 30); ++t)
                CHECK(acc.eval(Rational(t)).value == closed.eval(Rational(t)).value);
        }
    }

    // The m = 1 form agrees with the polygon of the truncated element on its window.
    auto P = np_of_witt(h_element(2, ctx(2, 4, 4)));
    for (long t = 0; t <= P.certified_to(); ++t) CHECK(P.eval(Rational(t)).value == h_power_np(2, 2, 1).eval(t).value);
}

TEST_CASE("slope_gap_check") {
    CHECK(val_oracle(2, 2, 3) < val_oracle(2, 1, 3));
    for (unsigned n = 1; n <= 2; ++n)
        for (unsigned m = 1; m <= 3; ++m) {
            auto v = slope_gap_check(2, n, m, 20);
            CHECK(v.verified());
            CHECK(v.witness == m);
        }
    auto v = slope_gap_check(2, 1, 1, 20);
    CHECK(v.trace.front() == "N(h_2)(3) = 1/512 < 1/8 = N(h_1)(3)");
    auto v2 = slope_gap_check(2, 1, 2, 20);
    CHECK(v2.trace.front().find("N(h_2^2)(9) = " + to_string(val_oracle(2, 2, 4) + val_oracle(2, 2, 5))) == 0);
    CHECK(slope_gap_check(2, 1, 1, 20, {}, true).refuted());
    CHECK(slope_gap_check(3, 1, 2, 20).verified());
    CHECK_THROWS_AS(slope_gap_check(2, 1, 2, 5), UsageError);
    CHECK_THROWS_AS(slope_gap_check(2, 4, 1, 20), ResourceError);
}

TEST_CASE("mult_raises_check") {
    auto c = ctx(2, 3, 4);
    auto h = h_element(1, c);
    CHECK(mult_raises_check(h, WittElement::one(c)).verified());
    CHECK(mult_raises_check(h, parse_element("[t^(1/2)]", c)).verified());
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) CHECK(mult_raises_check(h, random_element(rng, c, 2, 1, 2)).verified());
    // N(h) > 0 is required.
    CHECK(mult_raises_check(parse_element("[1] + [t]*p", c), WittElement::one(c)).unknown());
}

TEST_CASE("sum_node_check") {
    auto c = ctx(2, 4, 4);
    auto g = h_element(2, c);
    auto f = witt_mul(parse_element("[t]", c), h_element(1, c));
    auto t0 = domination_start(np_of_witt(g), np_of_witt(f));
    REQUIRE(t0);
    CHECK(*t0 == 0);
    auto v = sum_node_check(g, f, *t0);
    CHECK(v.verified());

    CHECK(sum_node_check(g, WittElement::zero(c), 0).verified());
    auto flat = parse_element("[t] + [t]*p + [t^(1/2)]*p^2", c);
    auto u = sum_node_check(flat, WittElement::zero(c), 0);
    CHECK(u.unknown());
    CHECK(u.reason.find("strictly decreasing") != std::string::npos);
    // Domination fails: N(f) is not above N(g).
    CHECK(sum_node_check(g, parse_element("[t^(1/1024)]", c), 0).unknown());
}

TEST_CASE("in_frak_p") {
    auto c = ctx(2, 3, 4);
    auto r = in_frak_p(np_of_witt(parse_element("[t]", c)));
    CHECK(r.verdict == Tri::CertifiedTrue);
    CHECK(r.bound == Rational(1));
    for (unsigned n = 1; n <= 3; ++n) CHECK(in_frak_p(h_power_np(2, n, 1)).verdict == Tri::CertifiedFalse);
    CHECK(in_frak_p(np_of_witt(h_element(1, c))).verdict == Tri::Unknown);
    CHECK(in_frak_p(np_of_witt(parse_element("[1] + [t]*p", c))).verdict == Tri::CertifiedFalse);

    // [t^(1/p^k)] * u with an unknown tail: the divisibility floor decides.
    auto f = teich_multiple(2, h_element(1, c));
    CHECK(in_frak_p(np_of_witt(f)).verdict == Tri::Unknown);
    auto with_floor = in_frak_p(teich_multiple_np(2, f));
    CHECK(with_floor.verdict == Tri::CertifiedTrue);
    CHECK(*with_floor.bound >= q(1, 4));
}

TEST_CASE("certificate text") {
    auto c = ctx(2, 3, 4);
    const char* samples[] = {"H(1)", "prod(H(1), H(2))", "weaken(H(3))", "plusmult(H(2), [t] + [t^(1/2)]*p, 1)",
                             "weaken(plusmult(prod(H(3), H(3)), [t^(3/4)], 2))"};
    for (const char* s : samples) {
        auto cert = parse_cert(s, c);
        CHECK(format_cert(*cert) == s);
        CHECK(format_cert(*parse_cert(format_cert(*cert), c)) == s);
    }
    auto b = parse_cert(R"(base(1, {"kind":"closed","tail":{"p":2,"n":1,"m":2}}, 2))", c);
    CHECK(b->kind == SCert::Kind::Base);
    CHECK(b->polygon->closed()->power == 2);
    CHECK(format_cert(*parse_cert(format_cert(*b), c)) == format_cert(*b));

    CHECK(parse_cert("plusmult(H(2), [t], 1)", c)->natural_level() == 2);
    CHECK(parse_cert("weaken(H(3))", c)->natural_level() == 2);
    CHECK(parse_cert("prod(H(1), H(3))", c)->natural_level() == 1);

    CHECK_THROWS_AS(parse_cert("H(0)", c), ParseError);
    CHECK_THROWS_AS(parse_cert("H(1) x", c), ParseError);
    CHECK_THROWS_AS(parse_cert("foo(1)", c), ParseError);
    CHECK_THROWS_AS(parse_cert("weaken(H(1))", c), UsageError);
    CHECK_THROWS_AS(parse_cert("plusmult(H(2), [t^(1/3)], 1)", c), SemanticError);
    try {
        parse_cert("plusmult(H(2), [t]*q, 1)", c);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 19);
    }
}

TEST_CASE("s_membership examples") {
    auto c = ctx(2, 4, 4);
    auto v = s_membership(*SCert::h(1), 1, c);
    CHECK(v.verified());
    CHECK(v.witness == 1u);

    auto p = s_membership(*SCert::prod(SCert::h(1), SCert::h(1)), 1, c);
    CHECK(p.verified());
    CHECK(p.witness == 2u);
    CHECK(np_leq(h_power_np(2, 1, 2), h_power_np(2, 1, 2)) == Tri::CertifiedTrue);

    CHECK(s_membership(*SCert::h(1), 2, c).refuted());
    CHECK(s_membership(*SCert::h(2), 3, c).refuted());
    CHECK(s_membership(*SCert::h(1), 3, c).refuted());
    CHECK(s_membership(*SCert::h(3), 1, c).verified());
    CHECK(s_membership(*SCert::weaken(SCert::h(2)), 1, c).witness == 1u);

    // Zero and finite polygons are never members.
    auto zero = s_membership(*SCert::base(1, NewtonPolygon(), 1), 1, c);
    CHECK(zero.refuted());
    CHECK(zero.reason == "zero element");
    CHECK(s_membership(*SCert::base(1, np_of_witt(parse_element("[t]", c)), 1), 1, c).refuted());
    CHECK(s_membership(*SCert::base(1, np_of_witt(h_element(1, c)), 1), 1, c).unknown());
    CHECK(s_membership(*SCert::base(2, h_power_np(2, 2, 3), 1), 2, c).witness == 3u);
    CHECK(s_membership(*SCert::base(1, h_power_np(2, 1, 3), 1), 2, c).refuted());

    // Products with a non-member are left undecided.
    CHECK(s_membership(*SCert::prod(SCert::h(1), SCert::h(2)), 2, c).unknown());

    // A tight witness bound makes the search give up honestly.
    CheckConfig tight;
    tight.max_witness = 2;
    CHECK(s_membership(*SCert::base(1, h_power_np(2, 1, 3), 1), 1, c, tight).unknown());
}

TEST_CASE("plusmult certificates") {
    auto c = ctx(2, 4, 4);
    auto cert = SCert::plusmult(SCert::h(2), parse_element("[t^(1/2)] + [t^(3/4)]*p", c), 1);
    auto v = s_membership(*cert, 2, c);
    CHECK(v.verified());
    REQUIRE(v.witness);
    auto P = cert_polygon(*cert, c);
    REQUIRE(P);
    CHECK(np_leq(*P, h_power_np(2, 2, *v.witness), false, {LONG_MIN, P->certified_to()}) == Tri::CertifiedTrue);

    // The same certificate transported down one level.
    auto w = s_membership(*cert, 1, c);
    CHECK(w.verified());
    CHECK(s_membership(*cert, 3, c).unknown());

    // A plusmult over a certificate without an element cannot be evaluated.
    auto b = SCert::plusmult(SCert::base(2, h_power_np(2, 2, 1), 1), parse_element("[t]", c), 1);
    CHECK(s_membership(*b, 2, c).unknown());

    // g = h_2, f = -1: digit 0 of h_2 - h_1 cancels exactly, so h_2 - h_1 is not in S_2.
    auto gap = SCert::plusmult(SCert::h(2), WittElement::minus_one(c), 1);
    auto r = s_membership(*gap, 2, c);
    CHECK(r.refuted());
    CHECK(r.reason.find("digit 0") != std::string::npos);
}

TEST_CASE("witness soundness on random plusmult and product certificates") {
    auto c = ctx(2, 4, 4);
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
        auto f = random_element(rng, c, 2, 2, 2);
        if (f.digit(0).is_zero()) continue;
        auto g = i % 2 ? SCert::h(2) : SCert::prod(SCert::h(2), SCert::h(2));
        auto cert = SCert::prod(SCert::plusmult(g, f, 1), SCert::h(2));
        auto v = s_membership(*cert, 2, c);
        if (!v.verified()) {
            // Only the digit-0 cancellation may stop these certificates.
            auto inner = s_membership(*cert->left, 2, c);
            CHECK(inner.refuted());
            CHECK(inner.reason.find("digit 0") != std::string::npos);
            continue;
        }
        ++checked;
        auto P = cert_polygon(*cert, c);
        REQUIRE(P);
        CHECK(np_leq(*P, h_power_np(2, 2, *v.witness), false, {LONG_MIN, std::min<long>(P->certified_to(), 4)}) ==
              Tri::CertifiedTrue);
    }
    CHECK(checked >= 12);
}
