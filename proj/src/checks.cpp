// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/arnold/checks.hpp"

#include <algorithm>

#include "wittnp/errors.hpp"

namespace wittnp::arnold {

namespace {

std::string ts(const Rational& q) { return to_string(q); }

Verdict refuted(std::string reason, std::vector<std::string> trace) {
    return {VerdictKind::RefutedCertified, std::nullopt, std::move(reason), std::move(trace)};
}

Verdict unknown(std::string reason, std::vector<std::string> trace = {}) {
    return {VerdictKind::Unknown, std::nullopt, std::move(reason), std::move(trace)};
}

/// Right end of the checkable window: certified region clipped to the digits.
long window_end(const NewtonPolygon& P, unsigned L) {
    return std::min<long>(P.certified_to(), static_cast<long>(L));
}

}  // namespace

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Verified: return "Verified";
        case VerdictKind::RefutedCertified: return "RefutedCertified";
        case VerdictKind::Unknown: return "Unknown";
    }
    return "?";
}

// ------------------------------------------------------------- slope gap

Verdict slope_gap_check(unsigned p, unsigned n, unsigned m, long window, const CheckConfig& cfg, bool swapped) {
    if (n < 1 || m < 1) throw UsageError("slope_gap_check: n and m must be at least 1");
    const long gap = 2L * m * m;
    if (window < gap + 1) throw UsageError("slope_gap_check: window must be at least 2m^2 + 1");
    ClosedForm deep{p, n + 1, m, cfg.ceiling};
    ClosedForm shallow{p, n, 1, cfg.ceiling};
    const std::string dn = "N(h_" + std::to_string(n + 1) + (m == 1 ? "" : "^" + std::to_string(m)) + ")";
    const std::string sn = "N(h_" + std::to_string(n) + ")";

    Verdict v;
    for (long t = gap + 1; t <= gap + window; ++t) {
        Rational a = deep.value(t), b = shallow.value(t);
        std::string an = dn, bn = sn;
        if (swapped) {
            std::swap(a, b);
            std::swap(an, bn);
        }
        const std::string at = "(" + std::to_string(t) + ")";
        if (!(a < b))
            return refuted("strict inequality fails at t = " + std::to_string(t),
                           {an + at + " = " + ts(a) + " >= " + ts(b) + " = " + bn + at});
        v.trace.push_back(an + at + " = " + ts(a) + " < " + ts(b) + " = " + bn + at);
    }

    // m < p^E with E = k^(2^n) - (km + r)^(2^(n-1)), sampled for 2m < k <= 2m + 16.
    const unsigned k0 = 2 * m + 1;
    for (unsigned k = k0; k <= k0 + 15; ++k) {
        Integer hi = index_exponent(n + 1, k);
        for (unsigned r = 0; r < m; ++r) {
            Integer E = hi - index_exponent(n, static_cast<std::uint64_t>(k) * m + r);
            bool ok = E > 0 && (E >= 64 || int_pow(p, E.convert_to<std::uint64_t>()) > Integer(m));
            if (!ok)
                return refuted("exponent inequality fails at k = " + std::to_string(k) + ", r = " + std::to_string(r),
                               {"E = " + to_string(E)});
        }
    }
    v.trace.push_back("m < p^(k^(2^" + std::to_string(n) + ") - (km+r)^(2^" + std::to_string(n - 1) +
                      ")) checked for " + std::to_string(k0) + " <= k <= " + std::to_string(k0 + 15) +
                      ", 0 <= r < m");
    // All k > 2m: E >= k^2 - (k+1)m (since a^j - b^j >= a - b for a > b >= 1), and
    // q(k) = k^2 - mk - 2m is positive at k0 and increasing after it, so E >= m + 1.
    const Integer M = m, K = k0;
    const Integer q0 = K * K - M * K - 2 * M;
    const Integer dq = 2 * K - M;
    if (!(q0 > 0 && dq > 0 && int_pow(p, m + 1) > M))
        return refuted("symbolic bound fails", {"q(k0) = " + to_string(q0) + ", q'(k0) = " + to_string(dq)});
    v.trace.push_back("k^2 - mk - 2m at k = " + std::to_string(k0) + " is " + to_string(q0) +
                      " > 0 with derivative " + to_string(dq) + " > 0, so E >= m + 1 and p^(m+1) = " +
                      to_string(int_pow(p, m + 1)) + " > m for every k > 2m");
    v.kind = VerdictKind::Verified;
    v.witness = m;
    return v;
}

// ---------------------------------------------------------- mult raises

Verdict mult_raises_check(const WittElement& h, const WittElement& f) {
    if (!(h.ctx() == f.ctx())) throw UsageError("mult_raises_check: operands have different contexts");
    const unsigned L = h.digits();
    NewtonPolygon H = np_of_witt(h);
    if (H.is_infinite()) return unknown("N(h) > 0 not certified: h vanishes on the window");
    const long hw = window_end(H, L);
    for (long t = H.start(); t <= hw; ++t)
        if (!(H.eval_lower(Rational(t)) > ExtRat(0))) return unknown("N(h) > 0 not certified at t = " + std::to_string(t));

    WittElement fh = witt_mul(f, h);
    NewtonPolygon FH = np_of_witt(fh);
    const long to = std::min(hw, window_end(FH, L));
    Verdict v;
    v.trace.push_back("N(h) > 0 on [" + std::to_string(H.start()) + ", " + std::to_string(hw) + "]");
    for (long t = H.start(); t <= to; ++t)
        v.trace.push_back("N(h)(" + std::to_string(t) + ") = " + H.eval(Rational(t)).value.str() + " <= " +
                          FH.eval(Rational(t)).value.str() + " = N(fh)(" + std::to_string(t) + ")");
    LeqOutcome out = np_leq_explain(H, FH, false, {LONG_MIN, to});
    if (out.verdict == Tri::CertifiedTrue) {
        v.kind = VerdictKind::Verified;
        v.trace.push_back("N(h) <= N(fh) on (-inf, " + std::to_string(to) + "]");
        return v;
    }
    if (out.verdict == Tri::CertifiedFalse) {
        long w = *out.witness;
        return refuted("N(fh) < N(h) at t = " + std::to_string(w),
                       {"N(h)(" + std::to_string(w) + ") = " + H.eval(Rational(w)).value.str() + " > " +
                        FH.eval(Rational(w)).value.str() + " = N(fh)(" + std::to_string(w) + ")"});
    }
    return unknown("comparison not certified on the joint window", v.trace);
}

// -------------------------------------------------------------- sum node

std::optional<long> domination_start(const NewtonPolygon& G, const NewtonPolygon& F) {
    if (G.is_infinite()) return std::nullopt;
    long W = std::min(G.certified_to(), F.certified_to());
    W = std::min(W, std::max(G.start(), 0L) + 4096);
    std::optional<long> best;
    for (long t = W; t >= std::max(G.start(), 0L); --t) {
        if (np_leq(G, F, true, {t, W}) != Tri::CertifiedTrue) break;
        best = t;
    }
    return best;
}

Verdict sum_node_check(const WittElement& g, const WittElement& f, long t0) {
    if (!(g.ctx() == f.ctx())) throw UsageError("sum_node_check: operands have different contexts");
    const unsigned L = g.digits();
    NewtonPolygon G = np_of_witt(g), F = np_of_witt(f);
    if (G.is_infinite()) return unknown("hypothesis: N(g) is identically +inf");
    const long W = std::min(window_end(G, L), window_end(F, L));
    Verdict v;

    const auto s = G.slopes();
    for (std::size_t j = 0; j < s.size(); ++j) {
        long i = G.start() + static_cast<long>(j) + 1;
        if (i > W) break;
        if (!(s[j] > 0))
            return unknown("hypothesis: N(g) is not strictly decreasing (flat at " + std::to_string(i - 1) + ".." +
                           std::to_string(i) + ")");
    }
    if (G.start() + static_cast<long>(s.size()) < W)
        return unknown("hypothesis: N(g) is not strictly decreasing (constant after " +
                       std::to_string(G.start() + static_cast<long>(s.size())) + ")");
    v.trace.push_back("N(g) strictly decreasing on [" + std::to_string(G.start()) + ", " + std::to_string(W) + "]");

    if (np_leq(G, F, true, {t0, W}) != Tri::CertifiedTrue)
        return unknown("hypothesis: N(g) < N(f) on [" + std::to_string(t0) + ", " + std::to_string(W) +
                       "] not certified", v.trace);
    v.trace.push_back("N(g) < N(f) on [" + std::to_string(t0) + ", " + std::to_string(W) + "]");

    NewtonPolygon S = np_of_witt(witt_add(g, f));
    bool any = false;
    for (long node : G.nodes()) {
        if (node < t0 || node > W) continue;
        any = true;
        const std::string at = "(" + std::to_string(node) + ")";
        const std::string gv = G.eval(Rational(node)).value.str();
        LeqOutcome out = np_leq_explain(S, G, false, {node, node});
        if (out.verdict == Tri::CertifiedFalse)
            return refuted("node inequality fails at " + std::to_string(node),
                           {"N(g+f)" + at + " >= " + S.eval_lower(Rational(node)).str() + " > " + gv + " = N(g)" + at});
        if (out.verdict == Tri::Unknown)
            return unknown("N(g+f)" + at + " not certified", v.trace);
        v.trace.push_back("N(g+f)" + at + " <= " + S.upper().at(node).str() + " <= " + gv + " = N(g)" + at);
    }
    if (!any) return unknown("no certified node of N(g) in [" + std::to_string(t0) + ", " + std::to_string(W) + "]",
                             v.trace);
    v.kind = VerdictKind::Verified;
    return v;
}

// ------------------------------------------------------------- frak p

FrakP in_frak_p(const NewtonPolygon& P) {
    if (P.is_infinite()) return {Tri::CertifiedTrue, std::nullopt};
    if (P.kind() == PolygonKind::ClosedFormHPower) return {Tri::CertifiedFalse, std::nullopt};
    if (P.certified_everywhere()) {
        ExtRat lim = P.limit();
        if (lim > ExtRat(0)) return {Tri::CertifiedTrue, lim.value()};
        return {Tri::CertifiedFalse, std::nullopt};
    }
    const Rational& floor = P.lower().tail();
    if (floor > 0) return {Tri::CertifiedTrue, floor};
    return {Tri::Unknown, std::nullopt};
}

WittElement teich_multiple(unsigned k, const WittElement& u) {
    const PrecisionCtx& c = u.ctx();
    auto x = MonomialSeries::monomial(c.p, c.working_cap(0), rational_pow(c.p, -static_cast<std::int64_t>(k)));
    return witt_mul(WittElement::teich(c, x), u);
}

NewtonPolygon teich_multiple_np(unsigned k, const WittElement& product) {
    // Every digit of [x]u is x times a digit of u.
    return np_of_witt(product, rational_pow(product.ctx().p, -static_cast<std::int64_t>(k)));
}

}  // namespace wittnp::arnold
