// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <climits>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "support.hpp"
#include "wittnp/arnold/checks.hpp"
#include "wittnp/arnold/report.hpp"
#include "wittnp/arnold/sequences.hpp"
#include "wittnp/carry_table.hpp"
#include "wittnp/errors.hpp"
#include "wittnp/ghost.hpp"
#include "wittnp/polygon.hpp"

using namespace wittnp;
using namespace wittnp::arnold;
using testsupport::ctx;
using testsupport::random_element;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failed sub-checks of one criterion.
struct Tally {
    std::vector<std::string> failures;
    std::ostringstream note;
    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++bad;
    }
    int bad = 0;
};

oracle::Points points_of(const WittElement& f) {
    oracle::Points xs;
    for (unsigned d = 0; d <= f.digits(); ++d) {
        ExtRat v = f.raw_digit(d).valuation();
        if (v.is_finite()) xs.emplace_back(static_cast<long>(d), v.value());
    }
    return xs;
}

NewtonPolygon exact_polygon(const oracle::Points& xs) {
    std::vector<PolyPoint> pts;
    Rational least = xs.front().second;
    for (const auto& [x, y] : xs) {
        pts.push_back({x, ExtRat(y), false});
        least = std::min(least, y);
    }
    return np_from_points(pts, ExtRat(least));
}

void carry_tables(Tally& t) {
    for (auto [p, depth] : {std::pair{2u, 4u}, std::pair{3u, 3u}}) {
        auto table = compute_carry_table(p, depth);
        auto ref = oracle::carry_recursion(p, depth);
        for (unsigned n = 0; n <= depth; ++n)
            t.expect(oracle::from_table(*table, n) == ref[n],
                     "w_" + std::to_string(n) + " at p=" + std::to_string(p) + " differs from the recursion");
    }
    t.expect(compute_carry_table(2, 1)->integral_str(1) == "-a*b", "w_1 at p=2");
    t.expect(compute_carry_table(3, 1)->integral_str(1) == "-a^2*b - a*b^2", "w_1 at p=3");
    int tables = 0;
    for (unsigned p : {2u, 3u, 5u})
        for (unsigned L = 0; L <= max_carry_depth(p); ++L, ++tables)
            t.expect(check_homogeneity(*compute_carry_table(p, L)),
                     "homogeneity p=" + std::to_string(p) + " L=" + std::to_string(L));
    t.note << "tables 2/4 and 3/3 match the recursion; homogeneity on " << tables << " (p, L)";
}

void ghost_equivalence(Tally& t) {
    std::mt19937_64 rng(101);
    int pairs = 0;
    for (unsigned p : {2u, 3u}) {
        auto c = ctx(p, 3, 2);
        for (int i = 0; i < 100; ++i, ++pairs) {
            auto f = random_element(rng, c), g = random_element(rng, c);
            t.expect(same_raw_digits(f + g, ghost_oracle(f, g, GhostOp::Add)), "add " + f.str() + " , " + g.str());
            t.expect(same_raw_digits(f * g, ghost_oracle(f, g, GhostOp::Mul)), "mul " + f.str() + " , " + g.str());
        }
    }
    t.expect(pairs >= 200, "too few pairs");
    t.note << pairs << " pairs, add and mul";
}

void arithmetic_consistency(Tally& t) {
    std::mt19937_64 rng(202);
    int pairs = 0, values = 0;
    for (unsigned p : {2u, 3u}) {
        auto c = ctx(p, 3, 2);
        for (int i = 0; i < 200 && pairs < 120; ++i) {
            auto f = random_element(rng, c, 2, 1, 1, 0.85), g = random_element(rng, c, 2, 1, 1, 0.85);
            if (f.is_zero() || g.is_zero()) continue;
            ++pairs;
            auto prod = np_of_witt(f * g);
            auto conv = np_convolve(np_of_witt(f), np_of_witt(g));
            const long T = std::min({prod.certified_to(), conv.certified_to(), 12L});
            auto Pf = points_of(f), Pg = points_of(g);
            for (long x = -1; x <= T; ++x, ++values) {
                ExtRat want = oracle::min_plus(Pf, Pg, x);
                t.expect(prod.eval(x).value == want, "N(fg)(" + std::to_string(x) + ") for " + f.str() + " , " + g.str());
                t.expect(conv.eval(x).value == want, "convolution at " + std::to_string(x));
            }
        }
    }
    t.expect(pairs >= 100, "too few pairs");
    t.note << pairs << " pairs, " << values << " certified values against min-plus";
}

void legendre_duality(Tally& t) {
    std::mt19937_64 rng(303);
    int trips = 0, orders = 0, trues = 0;
    const std::vector<Rational> lambdas = {Rational(0), Rational(1) / Rational(3), Rational(1), Rational(5) / Rational(2),
                                           Rational(10)};
    for (int i = 0; i < 120; ++i, ++trips) {
        auto xs = oracle::random_points(rng);
        auto P = exact_polygon(xs);
        auto F = legendre(P);
        t.expect(np_from_legendre(F).upper() == P.upper(), "round trip");
        for (const auto& l : lambdas) t.expect(F.eval(l) == ExtRat(oracle::legendre_at(xs, l)), "transform value");
    }
    for (int i = 0; i < 150; ++i, ++orders) {
        auto xp = oracle::random_points(rng), xq = oracle::random_points(rng);
        Tri r = np_leq(exact_polygon(xp), exact_polygon(xq));
        bool want = oracle::legendre_leq(xp, xq);
        t.expect(r != Tri::Unknown && (r == Tri::CertifiedTrue) == want, "order transport");
        trues += want;
    }
    t.expect(trues >= 10, "too few comparable pairs");
    t.note << trips << " round trips, " << orders << " order pairs (" << trues << " true)";
}

// N(h_{n+1}^m) at integers 0..hi as the m-fold min-plus power of its points.
std::vector<Rational> h_power_values(unsigned p, unsigned level, unsigned m, long hi) {
    std::vector<Rational> v(hi + 1);
    for (long i = 0; i <= hi; ++i) {
        Integer e = index_exponent(level, static_cast<std::uint64_t>(i));
        v[i] = Rational(1) / Rational(wittnp::int_pow(p, e.convert_to<std::uint64_t>()));
    }
    std::vector<Rational> acc = v;
    for (unsigned r = 1; r < m; ++r) {
        std::vector<Rational> next(hi + 1);
        for (long x = 0; x <= hi; ++x) {
            next[x] = acc[0] + v[x];
            for (long a = 1; a <= x; ++a) next[x] = std::min(next[x], acc[a] + v[x - a]);
        }
        acc = std::move(next);
    }
    return acc;
}

void slope_gap(Tally& t) {
    const auto t0 = Clock::now();
    int cases = 0;
    for (unsigned p : {2u, 3u})
        for (unsigned n : {1u, 2u})
            for (unsigned m : {1u, 2u, 3u}) {
                ++cases;
                const std::string tag = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " m=" + std::to_string(m);
                Verdict v = slope_gap_check(p, n, m, 20);
                t.expect(v.verified(), "slope_gap_check " + tag + ": " + v.reason);
                const long lo = 2L * m * m, hi = lo + 20;
                auto lhs = h_power_values(p, n + 1, m, hi), rhs = h_power_values(p, n, 1, hi);
                for (long x = lo + 1; x <= hi; ++x) t.expect(lhs[x] < rhs[x], "sampled t=" + std::to_string(x) + " " + tag);
                for (long k = 2L * m + 1; k <= 2L * m + 16; ++k)
                    for (long r = 0; r < static_cast<long>(m); ++r) {
                        Integer E = index_exponent(n + 1, k) - index_exponent(n, k * m + r);
                        bool ok = E > 0 && (E >= 64 || Integer(m) < wittnp::int_pow(p, E.convert_to<std::uint64_t>()));
                        t.expect(ok, "exponent inequality k=" + std::to_string(k) + " " + tag);
                    }
            }
    const double s = seconds_since(t0);
    t.expect(s < 10, "took longer than 10 s");
    t.note << cases << " (p, n, m) cases, sampled and symbolic, " << std::fixed;
    t.note.precision(2);
    t.note << s << " s";
}

double report_seconds = -1;

void strategy(Tally& t) {
    ReportConfig cfg;
    cfg.ctx = ctx(2, 4, 4);
    cfg.depth = 2;
    cfg.samples = 25;
    cfg.seed = 7;
    const auto t0 = Clock::now();
    Report rep = verify_report(cfg);
    report_seconds = seconds_since(t0);
    t.expect(rep.all_pass(), std::to_string(rep.entries.size() - rep.passed()) + " report entries did not pass");
    t.expect(rep.unknown() == 0, std::to_string(rep.unknown()) + " unknown verdicts");
    for (unsigned n = 1; n <= 2; ++n) {
        const std::string lv = "[n=" + std::to_string(n);
        int prods = 0, plus = 0, strict = 0;
        for (const auto& e : rep.entries) {
            if (!e.pass()) continue;
            if (e.id.rfind("hyp2.prod" + lv + ",", 0) == 0) prods += e.verdict.verified();
            if (e.id.rfind("hyp3.plusmult" + lv + ",", 0) == 0) plus += e.verdict.verified();
            if (e.id == "hyp1.h_in_S" + lv + "]" && e.verdict.verified()) ++strict;
            if (e.id == "hyp1.h_not_in_next" + lv + "]" && e.verdict.refuted()) ++strict;
        }
        t.expect(strict == 2, "strict inclusion at level " + std::to_string(n));
        t.expect(prods >= 25, "product certificates at level " + std::to_string(n));
        t.expect(plus >= 25, "plusmult certificates at level " + std::to_string(n));
    }

    // Product witnesses add up, re-derived outside the report.
    std::mt19937_64 rng(404);
    int pairs = 0;
    for (unsigned n = 1; n <= 2; ++n) {
        std::vector<CertPtr> pool = {SCert::h(n), SCert::h(n + 1), SCert::weaken(SCert::h(n + 1)),
                                     SCert::prod(SCert::h(n), SCert::h(n)),
                                     SCert::base(n, h_power_np(2, n, 2), 2), SCert::base(n, h_power_np(2, n + 1, 3), 1)};
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int s = 0; s < 25; ++s, ++pairs) {
            auto a = pool[pick(rng)], b = pool[pick(rng)];
            auto c = SCert::prod(a, b);
            Verdict va = s_membership(*a, n, cfg.ctx), vb = s_membership(*b, n, cfg.ctx), vc = s_membership(*c, n, cfg.ctx);
            bool ok = va.verified() && vb.verified() && vc.verified() && vc.witness == *va.witness + *vb.witness;
            t.expect(ok, "witness of " + format_cert(*c));
            if (!ok) continue;
            auto P = cert_polygon(*c, cfg.ctx);
            const long to = !P || P->closed() ? LONG_MAX : P->certified_to();
            t.expect(P && np_leq(*P, h_power_np(2, n, *vc.witness), false, {LONG_MIN, to}) == Tri::CertifiedTrue,
                     "polygon bound for " + format_cert(*c));
        }
    }
    t.note << rep.entries.size() << " report entries all pass, 0 unknown; " << pairs << " product witnesses re-derived";
}

void frak_p(Tally& t) {
    std::mt19937_64 rng(505);
    int multiples = 0, limits = 0;
    for (unsigned p : {2u, 3u}) {
        auto c = ctx(p, 3, 2);
        for (unsigned k = 0; k <= 3; ++k)
            for (int i = 0; i < 8; ++i) {
                auto u = random_element(rng, c);
                if (u.is_zero()) continue;
                ++multiples;
                FrakP r = in_frak_p(teich_multiple_np(k, teich_multiple(k, u)));
                t.expect(r.verdict == Tri::CertifiedTrue && r.bound &&
                             *r.bound >= rational_pow(p, -static_cast<std::int64_t>(k)),
                         "multiple of [t^(1/p^k)] with u = " + u.str());
            }
        for (unsigned n = 1; n <= 3; ++n)
            t.expect(in_frak_p(h_power_np(p, n, 1)).verdict == Tri::CertifiedFalse, "h_" + std::to_string(n) + " in p");
        for (int i = 0; i < 40; ++i) {
            auto f = random_element(rng, c), g = random_element(rng, c);
            auto Pf = points_of(f), Pg = points_of(g);
            if (Pf.empty() || Pg.empty()) continue;
            ++limits;
            Rational lf = Pf.front().second, lg = Pg.front().second;
            for (const auto& pt : Pf) lf = std::min(lf, pt.second);
            for (const auto& pt : Pg) lg = std::min(lg, pt.second);
            t.expect(np_convolve(np_of_witt(f), np_of_witt(g)).limit() == ExtRat(lf + lg), "limit additivity");
        }
    }
    t.expect(limits >= 50, "too few limit samples");
    t.note << multiples << " multiples, h_1..h_3, " << limits << " limit samples";
}

template <typename F>
bool throws_resource(F&& f, const std::string& prefix = "") {
    try {
        f();
    } catch (const ResourceError& e) {
        return std::string(e.what()).rfind(prefix, 0) == 0;
    } catch (...) {
        return false;
    }
    return false;
}

void resources(Tally& t) {
    auto t0 = Clock::now();
    compute_carry_table(2, 8);
    const double table_s = seconds_since(t0);
    t.expect(table_s < 60, "carry_table(2, 8) took longer than 60 s");
    t.expect(report_seconds >= 0 && report_seconds < 120, "depth-2 report took longer than 120 s");

    t0 = Clock::now();
    t.expect(throws_resource([] { val_a(2, 4, 6); }, "val_a("), "val_a guard");
    t.expect(throws_resource([] { h_power_np(2, 4, 1).closed()->value(40); }), "closed-form guard");
    t.expect(throws_resource([] { h_element(4, ctx(2, 8, 4)); }), "h_element guard");
    t.expect(throws_resource(
                 [] {
                     ReportConfig cfg;
                     cfg.ctx = ctx(2, 4, 4);
                     cfg.depth = 4;
                     cfg.samples = 2;
                     verify_report(cfg);
                 },
                 "val_a("),
             "report guard at depth 4");
    const double guard_s = seconds_since(t0);
    t.expect(guard_s < 10, "guards took longer than 10 s");
    t.note.precision(2);
    t.note << std::fixed << "carry_table(2, 8) " << table_s << " s, report " << report_seconds << " s, guards " << guard_s
           << " s";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria = {
        {"carry tables", carry_tables},
        {"witt/ghost equivalence", ghost_equivalence},
        {"polygon/arithmetic consistency", arithmetic_consistency},
        {"legendre duality", legendre_duality},
        {"slope gap", slope_gap},
        {"strategy sets at depth 2", strategy},
        {"prime ideal criteria", frak_p},
        {"resource envelope", resources},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        Tally t;
        try {
            run(t);
        } catch (const std::exception& e) {
            t.expect(false, std::string("exception: ") + e.what());
        }
        const bool ok = t.bad == 0;
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << ++index << "] " << name << ": " << t.note.str();
        if (!ok) {
            std::cout << " (" << t.bad << " failed";
            for (const auto& f : t.failures) std::cout << "; " << f;
            std::cout << ")";
        }
        std::cout << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
