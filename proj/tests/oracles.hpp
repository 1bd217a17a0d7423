// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Reference computations shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wittnp/carry_table.hpp"
#include "wittnp/rational.hpp"

namespace oracle {

using wittnp::ExtRat;
using wittnp::Integer;
using wittnp::Rational;

using Points = std::vector<std::pair<long, Rational>>;

// w_n as a sparse map (a-exponent, b-exponent) -> coefficient.
using Sparse = std::map<std::pair<unsigned, unsigned>, Integer>;

inline Sparse smul(const Sparse& x, const Sparse& y) {
    Sparse out;
    for (const auto& [ex, cx] : x)
        for (const auto& [ey, cy] : y) out[{ex.first + ey.first, ex.second + ey.second}] += cx * cy;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

// w_0..w_depth from sum_k p^k w_k^(p^(n-k)) = a^(p^n) + b^(p^n).
inline std::vector<Sparse> carry_recursion(unsigned p, unsigned depth) {
    std::vector<Sparse> w;
    for (unsigned n = 0; n <= depth; ++n) {
        const auto pn = static_cast<unsigned>(wittnp::int_pow(p, n));
        Sparse rhs{{{pn, 0}, 1}};
        rhs[{0, pn}] += 1;
        for (unsigned k = 0; k < n; ++k) {
            Sparse pw{{{0, 0}, 1}};
            for (unsigned r = 0; r < static_cast<unsigned>(wittnp::int_pow(p, n - k)); ++r) pw = smul(pw, w[k]);
            Integer pk = wittnp::int_pow(p, k);
            for (const auto& [e, c] : pw) rhs[e] -= pk * c;
        }
        std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
        for (auto& [e, c] : rhs) {
            if (c % pn != 0) throw std::runtime_error("carry recursion: inexact division");
            c /= pn;
        }
        w.push_back(rhs);
    }
    return w;
}

inline Sparse from_table(const wittnp::CarryTable& t, unsigned n) {
    Sparse out;
    const auto& w = t.integral(n);
    const auto deg = static_cast<unsigned>(w.size()) - 1;
    for (unsigned i = 0; i <= deg; ++i)
        if (w[i] != 0) out[{i, deg - i}] = w[i];
    return out;
}

// Largest decreasing convex minorant at t, by enumerating every pair of a point
// and a point of a rightward ray.
inline ExtRat brute_hull(const Points& xs, const Rational& t) {
    std::optional<Rational> best;
    auto take = [&](const Rational& v) {
        if (!best || v < *best) best = v;
    };
    for (const auto& [xi, yi] : xs) {
        if (Rational(xi) > t) continue;
        take(yi);
        for (const auto& [xj, yj] : xs) {
            Rational s = std::max(t, Rational(xj));
            if (s == Rational(xi)) continue;
            take(yi + (yj - yi) * (t - Rational(xi)) / (s - Rational(xi)));
        }
    }
    return best ? ExtRat(*best) : ExtRat::pos_inf();
}

// inf over integer splits a + b = t of P(a) + Q(b), with P and Q given by point sets.
inline ExtRat min_plus(const Points& P, const Points& Q, long t) {
    ExtRat best = ExtRat::pos_inf();
    if (P.empty() || Q.empty()) return best;
    long lo = P.front().first;
    for (const auto& pt : P) lo = std::min(lo, pt.first);
    for (long a = lo; a <= t; ++a) {
        ExtRat v = brute_hull(P, Rational(a)) + brute_hull(Q, Rational(t - a));
        if (v < best) best = v;
    }
    return best;
}

// inf_t {phi(t) + lambda t} over the hull of the points; the minimum of a
// linear function over a convex minorant is attained at an input point.
inline Rational legendre_at(const Points& xs, const Rational& lambda) {
    Rational best = xs.front().second + lambda * Rational(xs.front().first);
    for (const auto& [x, y] : xs) best = std::min(best, y + lambda * Rational(x));
    return best;
}

inline long start_of(const Points& xs) {
    long s = xs.front().first;
    for (const auto& pt : xs) s = std::min(s, pt.first);
    return s;
}

// Legendre comparison L(P) <= L(Q) on [0, inf): both transforms are concave
// and piecewise linear with breaks at slopes between input points, so it is
// enough to compare there, past the last break, and at the final slopes.
inline bool legendre_leq(const Points& P, const Points& Q) {
    std::vector<Rational> lambdas{Rational(0)};
    for (const Points* s : {&P, &Q})
        for (const auto& [xi, yi] : *s)
            for (const auto& [xj, yj] : *s)
                if (xi < xj && yi > yj) lambdas.push_back((yi - yj) / Rational(xj - xi));
    Rational top = *std::max_element(lambdas.begin(), lambdas.end());
    lambdas.push_back(top + 1);
    for (const auto& l : lambdas)
        if (legendre_at(P, l) > legendre_at(Q, l)) return false;
    return start_of(P) <= start_of(Q);
}

inline Points random_points(std::mt19937_64& rng, bool allow_offset = true) {
    std::uniform_int_distribution<int> count(1, 5), start(0, allow_offset ? 2 : 0), gap(1, 2), num(0, 24), den(1, 4);
    Points xs;
    long x = start(rng);
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
        xs.emplace_back(x, Rational(num(rng)) / Rational(den(rng)));
        x += gap(rng);
    }
    return xs;
}

}  // namespace oracle
