// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/arnold/certificates.hpp"

#include "wittnp/errors.hpp"
#include "wittnp/polygon_io.hpp"
#include "wittnp/text.hpp"

namespace wittnp::arnold {

namespace {

void check_level(unsigned n) {
    if (n < 1) throw UsageError("certificate level must be at least 1");
}

CertPtr make(SCert c) { return std::make_shared<const SCert>(std::move(c)); }

unsigned level_arg(Scanner& s) {
    s.skip_ws();
    std::size_t at = s.pos();
    long v = s.integer();
    if (v < 1) {
        s.set_pos(at);
        s.fail("level must be a positive integer");
    }
    return static_cast<unsigned>(v);
}

/// Offset of the next ',' or ')' outside brackets and braces.
std::size_t argument_end(const Scanner& s, std::string_view text) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = s.pos(); i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '[' || c == '(' || c == '{') ++depth;
        else if (c == ']' || c == '}' || (c == ')' && depth > 0)) --depth;
        else if (depth == 0 && (c == ',' || c == ')')) return i;
    }
    s.fail("unterminated argument");
}

CertPtr parse_node(Scanner& s, std::string_view text, const PrecisionCtx& ctx) {
    s.skip_ws();
    std::size_t at = s.pos();
    if (s.accept_word("H")) {
        s.expect('(');
        unsigned n = level_arg(s);
        s.expect(')');
        return SCert::h(n);
    }
    if (s.accept_word("prod")) {
        s.expect('(');
        CertPtr a = parse_node(s, text, ctx);
        s.expect(',');
        CertPtr b = parse_node(s, text, ctx);
        s.expect(')');
        return SCert::prod(a, b);
    }
    if (s.accept_word("weaken")) {
        s.expect('(');
        CertPtr a = parse_node(s, text, ctx);
        s.expect(')');
        return SCert::weaken(a);
    }
    if (s.accept_word("plusmult")) {
        s.expect('(');
        CertPtr a = parse_node(s, text, ctx);
        s.expect(',');
        s.skip_ws();
        std::size_t from = s.pos(), to = argument_end(s, text);
        WittElement f = WittElement::zero(ctx);
        try {
            f = parse_element(text.substr(from, to - from), ctx);
        } catch (const ParseError& e) {
            throw ParseError("in element: " + std::string(e.what()), from + e.position());
        }
        s.set_pos(to);
        s.expect(',');
        unsigned n = level_arg(s);
        s.expect(')');
        return SCert::plusmult(a, std::move(f), n);
    }
    if (s.accept_word("base")) {
        s.expect('(');
        unsigned n = level_arg(s);
        s.expect(',');
        s.skip_ws();
        std::size_t from = s.pos(), to = argument_end(s, text);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text.substr(from, to - from));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("malformed polygon JSON", from + (e.byte > 0 ? e.byte - 1 : 0));
        }
        NewtonPolygon P;
        try {
            P = polygon_from_json(j);
        } catch (const UsageError& e) {
            throw SemanticError(std::string("base polygon: ") + e.what());
        }
        s.set_pos(to);
        s.expect(',');
        unsigned m = level_arg(s);
        s.expect(')');
        return SCert::base(n, std::move(P), m);
    }
    s.set_pos(at);
    s.fail("expected H, prod, plusmult, weaken or base");
}

}  // namespace

CertPtr SCert::base(unsigned n, NewtonPolygon P, unsigned m) {
    check_level(n);
    if (m < 1) throw UsageError("base witness must be at least 1");
    SCert c;
    c.kind = Kind::Base;
    c.n = n;
    c.m = m;
    c.polygon = std::move(P);
    return make(std::move(c));
}

CertPtr SCert::h(unsigned n) {
    check_level(n);
    SCert c;
    c.kind = Kind::H;
    c.n = n;
    return make(std::move(c));
}

CertPtr SCert::prod(CertPtr a, CertPtr b) {
    if (!a || !b) throw UsageError("prod needs two certificates");
    SCert c;
    c.kind = Kind::Prod;
    c.left = std::move(a);
    c.right = std::move(b);
    c.n = std::min(c.left->natural_level(), c.right->natural_level());
    return make(std::move(c));
}

CertPtr SCert::plusmult(CertPtr g, WittElement f, unsigned n) {
    check_level(n);
    if (!g) throw UsageError("plusmult needs a certificate");
    SCert c;
    c.kind = Kind::PlusMult;
    c.n = n;
    c.left = std::move(g);
    c.f = std::move(f);
    return make(std::move(c));
}

CertPtr SCert::weaken(CertPtr g) {
    if (!g) throw UsageError("weaken needs a certificate");
    if (g->natural_level() < 2) throw UsageError("weaken below level 1");
    SCert c;
    c.kind = Kind::Weaken;
    c.left = std::move(g);
    c.n = c.left->natural_level() - 1;
    return make(std::move(c));
}

unsigned SCert::natural_level() const {
    switch (kind) {
        case Kind::PlusMult: return n + 1;
        default: return n;
    }
}

CertPtr parse_cert(std::string_view text, const PrecisionCtx& ctx) {
    Scanner s(text);
    CertPtr c = parse_node(s, text, ctx);
    if (!s.at_end()) s.fail("unexpected trailing input");
    return c;
}

std::string format_cert(const SCert& c) {
    switch (c.kind) {
        case SCert::Kind::H: return "H(" + std::to_string(c.n) + ")";
        case SCert::Kind::Prod: return "prod(" + format_cert(*c.left) + ", " + format_cert(*c.right) + ")";
        case SCert::Kind::Weaken: return "weaken(" + format_cert(*c.left) + ")";
        case SCert::Kind::PlusMult:
            return "plusmult(" + format_cert(*c.left) + ", " + format_element(*c.f) + ", " + std::to_string(c.n) + ")";
        case SCert::Kind::Base:
            return "base(" + std::to_string(c.n) + ", " + polygon_to_json(*c.polygon).dump() + ", " +
                   std::to_string(c.m) + ")";
    }
    return "?";
}

}  // namespace wittnp::arnold
