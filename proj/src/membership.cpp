// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/arnold/checks.hpp"

#include "wittnp/errors.hpp"
#include "wittnp/text.hpp"

namespace wittnp::arnold {

namespace {

std::string hname(unsigned n, unsigned m) {
    return "N(h_" + std::to_string(n) + (m == 1 ? "" : "^" + std::to_string(m)) + ")";
}

std::string hname_m(unsigned n) { return "N(h_" + std::to_string(n) + "^m)"; }

Verdict verified(unsigned m, std::vector<std::string> trace) {
    return {VerdictKind::Verified, m, "", std::move(trace)};
}

Verdict refuted(std::string reason, std::vector<std::string> trace = {}) {
    return {VerdictKind::RefutedCertified, std::nullopt, std::move(reason), std::move(trace)};
}

Verdict unknown(std::string reason, std::vector<std::string> trace = {}) {
    return {VerdictKind::Unknown, std::nullopt, std::move(reason), std::move(trace)};
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from, const std::string& prefix) {
    for (const auto& s : from) to.push_back(prefix + s);
}

class Membership {
public:
    Membership(const PrecisionCtx& ctx, const CheckConfig& cfg) : ctx_(ctx), cfg_(cfg) {}

    Verdict at(const SCert& c, unsigned n) {
        switch (c.kind) {
            case SCert::Kind::H: return h(c.n, n);
            case SCert::Kind::Base: return base(c, n);
            case SCert::Kind::Prod: return prod(c, n);
            case SCert::Kind::Weaken: return weaken(c, n);
            case SCert::Kind::PlusMult: return plusmult(c, n);
        }
        throw InternalError("unhandled certificate kind");
    }

private:
    ClosedForm cf(unsigned n, unsigned m) const { return ClosedForm{ctx_.p, n, m, cfg_.ceiling}; }

    /// Smallest m' <= max_witness with N(h_from^m) <= N(h_to^m'), for to < from.
    std::optional<unsigned> transport(unsigned m, unsigned from, unsigned to, std::vector<std::string>& trace) {
        unsigned cur = m;
        for (unsigned level = from; level > to; --level) {
            auto P = NewtonPolygon::closed_form(cf(level, cur));
            std::optional<unsigned> next;
            for (unsigned k = 1; k <= cfg_.max_witness && !next; ++k)
                if (np_leq(P, NewtonPolygon::closed_form(cf(level - 1, k))) == Tri::CertifiedTrue) next = k;
            if (!next) return std::nullopt;
            trace.push_back(hname(level, cur) + " <= " + hname(level - 1, *next) + " for all t");
            cur = *next;
        }
        return cur;
    }

    /// N(h_k^j) lies above N(h_n^m) somewhere for every m, when k < n.
    Verdict refute_shallow(unsigned k, unsigned j, unsigned n) {
        std::vector<std::string> trace;
        if (j > 1) trace.push_back(hname(k, j) + " >= " + hname(k, 1) + " (powers raise positive polygons)");
        if (k + 1 < n) {
            if (np_leq(NewtonPolygon::closed_form(cf(n - 1, 1)), NewtonPolygon::closed_form(cf(k, 1))) !=
                Tri::CertifiedTrue)
                throw InternalError("level monotonicity of h failed");
            trace.push_back(hname(n - 1, 1) + " <= " + hname(k, 1) + " for all t");
        }
        Verdict sg = slope_gap_check(ctx_.p, n - 1, 1, 3, cfg_);
        if (!sg.verified()) throw InternalError("slope gap check failed at level " + std::to_string(n - 1));
        ClosedForm top = cf(n - 1, 1);
        unsigned covered = 0;
        for (unsigned m = 1; m <= cfg_.max_witness; ++m) {
            const long t = 2L * m * m + 1;
            Rational a, b;
            try {
                a = cf(n, m).value(t);
                b = top.value(t);
            } catch (const ResourceError&) {
                break;
            }
            if (!(a < b)) throw InternalError("slope gap counterpoint failed for m = " + std::to_string(m));
            trace.push_back(hname(n, m) + "(" + std::to_string(t) + ") = " + to_string(a) + " < " + to_string(b) +
                            " = " + hname(n - 1, 1) + "(" + std::to_string(t) + ")");
            covered = m;
        }
        trace.push_back("m > " + std::to_string(covered) + ": " + hname_m(n) +
                        "(t) < " + hname(n - 1, 1) + "(t) for t > 2m^2 (slope-gap inequality, exponent bound holds for every m)");
        return refuted(hname(k, j) + " exceeds every " + hname_m(n) +
                           " far out",
                       trace);
    }

    Verdict h(unsigned k, unsigned n) {
        if (k == n) return verified(1, {hname(n, 1) + " <= " + hname(n, 1) + "; N(h_n) > 0 since every node value is a positive power of p"});
        if (k > n) {
            std::vector<std::string> trace;
            auto m = transport(1, k, n, trace);
            if (!m) return unknown("witness search exhausted (M = " + std::to_string(cfg_.max_witness) + ")", trace);
            return verified(*m, trace);
        }
        return refute_shallow(k, 1, n);
    }

    Verdict closed_member(const ClosedForm& P, unsigned from_m, unsigned n, std::vector<std::string> trace) {
        if (P.level < n) return refute_shallow(P.level, P.power, n);
        auto poly = NewtonPolygon::closed_form(P);
        for (unsigned m = from_m; m <= cfg_.max_witness; ++m) {
            if (np_leq(poly, NewtonPolygon::closed_form(cf(n, m))) == Tri::CertifiedTrue) {
                trace.push_back(hname(P.level, P.power) + " <= " + hname(n, m) + " for all t");
                return verified(m, trace);
            }
        }
        return unknown("witness search exhausted (M = " + std::to_string(cfg_.max_witness) + ")", trace);
    }

    Verdict base(const SCert& c, unsigned n) {
        const NewtonPolygon& P = *c.polygon;
        if (P.is_infinite()) return refuted("zero element");
        if (P.closed()) return closed_member(*P.closed(), c.m, n, {});
        if (P.certified_everywhere()) {
            Rational lim = P.limit().value();
            if (lim <= 0) return refuted("N(g) reaches 0 (limit " + to_string(lim) + "), so N(g) > 0 fails");
            return refuted("lim N(g) = " + to_string(lim) + " > 0 = lim " + hname_m(n) +
                           " for every m");
        }
        if (P.lower().tail() > 0)
            return refuted("lim N(g) >= " + to_string(P.lower().tail()) + " > 0 = lim of every h_n power");
        for (unsigned m = c.m; m <= cfg_.max_witness; ++m) {
            LeqOutcome out = np_leq_explain(P, NewtonPolygon::closed_form(cf(n, m)));
            if (out.verdict == Tri::CertifiedTrue) return verified(m, {"N(g) <= " + hname(n, m) + " for all t"});
        }
        return unknown("tail of a windowed polygon cannot certify membership");
    }

    Verdict prod(const SCert& c, unsigned n) {
        Verdict a = at(*c.left, n), b = at(*c.right, n);
        std::vector<std::string> trace;
        append(trace, a.trace, "left: ");
        append(trace, b.trace, "right: ");
        if (a.verified() && b.verified()) {
            unsigned m = *a.witness + *b.witness;
            trace.push_back("L(N(g1 g2)) = L(N(g1)) + L(N(g2)) <= L(" + hname(n, *a.witness) + ") + L(" +
                            hname(n, *b.witness) + ") = L(" + hname(n, m) + ")");
            return verified(m, trace);
        }
        if (a.refuted() || b.refuted()) return unknown("a factor is not in S_" + std::to_string(n), trace);
        return unknown("factor undecided: " + (a.verified() ? b.reason : a.reason), trace);
    }

    Verdict weaken(const SCert& c, unsigned n) {
        Verdict inner = at(*c.left, n + 1);
        std::vector<std::string> trace;
        append(trace, inner.trace, "premise: ");
        if (!inner.verified()) return unknown("premise at level " + std::to_string(n + 1) + " not verified", trace);
        auto m = transport(*inner.witness, n + 1, n, trace);
        if (!m) return unknown("witness search exhausted (M = " + std::to_string(cfg_.max_witness) + ")", trace);
        return verified(*m, trace);
    }

    /// First node of N(g) at or after t, when it is known.
    std::optional<long> node_from(const NewtonPolygon& G, long t) {
        if (G.closed()) {
            long j = G.closed()->power;
            return (t + j - 1) / j * j;
        }
        for (long x : G.nodes())
            if (x >= t && x <= G.certified_to()) return x;
        return std::nullopt;
    }

    Verdict plusmult(const SCert& c, unsigned n) {
        const unsigned k = c.n, level = k + 1;
        if (n > level)
            return unknown("plusmult(.., " + std::to_string(k) + ") certifies level " + std::to_string(level) + " only");
        Verdict v = plusmult_natural(c);
        if (!v.verified() || n == level) return v;
        auto m = transport(*v.witness, level, n, v.trace);
        if (!m) return unknown("witness search exhausted (M = " + std::to_string(cfg_.max_witness) + ")", v.trace);
        v.witness = m;
        return v;
    }

    Verdict plusmult_natural(const SCert& c) {
        const unsigned k = c.n, n = k + 1, L = ctx_.digits;
        std::vector<std::string> trace;
        Verdict inner = at(*c.left, n);
        append(trace, inner.trace, "g: ");
        if (!inner.verified()) return unknown("g not verified at level " + std::to_string(n) + ": " + inner.reason, trace);
        const unsigned m = *inner.witness;

        auto g = cert_element(*c.left, ctx_, cfg_);
        auto G = cert_polygon(*c.left, ctx_, cfg_);
        if (!g || !G) return unknown("certificate for g carries no element", trace);
        const long t0 = 2L * m * m + 1;
        auto nstar = node_from(*G, t0);
        if (!nstar) return unknown("no known node of N(g) at or after " + std::to_string(t0), trace);

        Verdict sg = slope_gap_check(ctx_.p, k, m, 2L * m * m + 1, cfg_);
        if (!sg.verified()) return Verdict{sg.kind, std::nullopt, "slope gap: " + sg.reason, trace};
        trace.push_back("slope gap: " + hname(n, m) + " < " + hname(k, 1) + " for t > " + std::to_string(2 * m * m));

        WittElement hk = h_element(k, ctx_, cfg_.ceiling);
        Verdict mr = mult_raises_check(hk, *c.f);
        append(trace, mr.trace, "N(f h_k) >= N(h_k): ");
        if (mr.refuted()) return refuted("N(f h_k) >= N(h_k) fails: " + mr.reason, trace);

        WittElement fh = witt_mul(*c.f, hk);
        WittElement sum = witt_add(*g, fh);
        if (sum.digit_exact(0) && sum.raw_digit(0).is_zero())
            return refuted("digit 0 of g + f h_k cancels, so N(g + f h_k)(0) = +inf exceeds every " +
                               hname_m(n) + "(0) = m",
                           trace);
        if (sum.digit(0).is_zero()) return unknown("digit 0 of g + f h_k vanishes modulo t^N", trace);
        for (unsigned d = 0; d <= L; ++d) {
            const auto x = sum.digit(d);
            if ((sum.digit_exact(d) || !x.is_zero()) && sum.raw_digit(d).valuation() == ExtRat(0))
                return refuted("digit " + std::to_string(d) + " of g + f h_k is a unit, so N > 0 fails", trace);
        }
        trace.push_back("digits 0.." + std::to_string(L) + " of g + f h_k have positive valuation");

        NewtonPolygon Gw = np_of_witt(*g), F = np_of_witt(fh);
        if (auto tw = domination_start(Gw, F)) {
            Verdict sn = sum_node_check(*g, fh, *tw);
            if (sn.refuted()) return refuted("node inequality fails: " + sn.reason, trace);
            append(trace, sn.trace, "window nodes: ");
        }

        NewtonPolygon S = np_of_witt(sum);
        const long T = std::max<long>(*nstar, std::min<long>(S.certified_to(), L));
        for (unsigned mm = m; mm <= cfg_.max_witness; ++mm) {
            if (np_leq(S, NewtonPolygon::closed_form(cf(n, mm)), false, {LONG_MIN, T}) != Tri::CertifiedTrue) continue;
            trace.push_back("N(g + f h_k)(t) <= " + hname(n, mm) + "(t) for t <= " + std::to_string(T) +
                            " (upper hull of the computed digits)");
            trace.push_back("t >= " + std::to_string(*nstar) + ": node " + std::to_string(*nstar) +
                            " of N(g) is past 2m^2, so N(g + f h_k) <= N(g) <= " + hname(n, m) + " <= " + hname(n, mm));
            return verified(mm, trace);
        }
        return unknown("witness search exhausted on [0, " + std::to_string(T) + "] (M = " +
                           std::to_string(cfg_.max_witness) + ")",
                       trace);
    }

    PrecisionCtx ctx_;
    CheckConfig cfg_;
};

}  // namespace

std::optional<WittElement> cert_element(const SCert& c, const PrecisionCtx& ctx, const CheckConfig& cfg) {
    switch (c.kind) {
        case SCert::Kind::H: return h_element(c.n, ctx, cfg.ceiling);
        case SCert::Kind::Base: return std::nullopt;
        case SCert::Kind::Weaken: return cert_element(*c.left, ctx, cfg);
        case SCert::Kind::Prod: {
            auto a = cert_element(*c.left, ctx, cfg), b = cert_element(*c.right, ctx, cfg);
            if (!a || !b) return std::nullopt;
            return witt_mul(*a, *b);
        }
        case SCert::Kind::PlusMult: {
            auto g = cert_element(*c.left, ctx, cfg);
            if (!g) return std::nullopt;
            if (!(c.f->ctx() == ctx)) throw UsageError("plusmult element has a different context");
            return witt_add(*g, witt_mul(*c.f, h_element(c.n, ctx, cfg.ceiling)));
        }
    }
    return std::nullopt;
}

std::optional<NewtonPolygon> cert_polygon(const SCert& c, const PrecisionCtx& ctx, const CheckConfig& cfg) {
    switch (c.kind) {
        case SCert::Kind::H: return h_power_np(ctx.p, c.n, 1, cfg.ceiling);
        case SCert::Kind::Base: return c.polygon;
        case SCert::Kind::Weaken: return cert_polygon(*c.left, ctx, cfg);
        case SCert::Kind::Prod: {
            auto a = cert_polygon(*c.left, ctx, cfg), b = cert_polygon(*c.right, ctx, cfg);
            if (!a || !b) return std::nullopt;
            if (a->closed() && b->closed() && a->closed()->level == b->closed()->level)
                return h_power_np(ctx.p, a->closed()->level, a->closed()->power + b->closed()->power, cfg.ceiling);
            return np_convolve(*a, *b);
        }
        case SCert::Kind::PlusMult: {
            auto e = cert_element(c, ctx, cfg);
            if (!e) return std::nullopt;
            return np_of_witt(*e);
        }
    }
    return std::nullopt;
}

Verdict s_membership(const SCert& c, unsigned n, const PrecisionCtx& ctx, const CheckConfig& cfg) {
    if (n < 1) throw UsageError("membership level must be at least 1");
    ctx.validate();
    return Membership(ctx, cfg).at(c, n);
}

}  // namespace wittnp::arnold
