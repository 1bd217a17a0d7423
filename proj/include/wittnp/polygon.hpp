// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wittnp/rational.hpp"
#include "wittnp/witt.hpp"

namespace wittnp {

/// Horizon value meaning "certified everywhere".
inline constexpr long kUnbounded = LONG_MAX;

struct Vertex {
    long x;
    Rational y;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Decreasing convex piecewise-linear function with integer breakpoints:
/// +inf left of the first vertex, linear between vertices, constant after the
/// last one.  The default value is the identically +inf function.
class PLCurve {
public:
    PLCurve() = default;

    /// Largest decreasing convex function below the given finite points.
    static PLCurve hull(std::vector<std::pair<long, Rational>> points);

    bool infinite() const noexcept { return vertices_.empty(); }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    long start() const;
    long last_x() const;
    /// Value of the constant tail.
    const Rational& tail() const;

    ExtRat eval(const Rational& t) const;
    ExtRat at(long t) const;
    /// N(i-1) - N(i); requires i > start.
    Rational drop(long i) const;

    friend bool operator==(const PLCurve&, const PLCurve&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Infimal convolution of two curves (slope merge).  Infinite if either is.
PLCurve convolve(const PLCurve& a, const PLCurve& b);

/// Closed-form polygon of h_n^m: value at km + r (0 <= r < m) is
/// m v_k - r (v_k - v_{k+1}) with v_k = p^(-k^(2^(n-1))).
struct ClosedForm {
    unsigned p = 2;
    unsigned level = 1;
    unsigned power = 1;
    std::uint64_t ceiling = 1'000'000;

    /// v_k; ResourceError when k^(2^(n-1)) exceeds the ceiling.
    Rational node(std::uint64_t k) const;
    /// Exact value at an integer t >= 0.
    Rational value(long t) const;
    ExtRat eval(const Rational& t) const;
    /// Largest index t whose value stays within the exponent ceiling.
    long guard_limit() const;

    friend bool operator==(const ClosedForm& a, const ClosedForm& b) {
        return a.p == b.p && a.level == b.level && a.power == b.power;
    }
};

/// Smallest k with val exponent k^(2^(n-1)) > ceiling, as a diagnostic helper.
std::string describe_guard(const ClosedForm& cf, std::uint64_t k);

enum class PolygonKind { FiniteExact, Windowed, ClosedFormHPower };

std::string to_string(PolygonKind k);

/// Input point of a polygon: exact valuation, or (floor) a lower bound.
struct PolyPoint {
    long index;
    ExtRat value;
    bool floor = false;
    friend bool operator==(const PolyPoint&, const PolyPoint&) = default;
};

struct PolyEval {
    ExtRat value;
    bool certified;
};

/// Newton polygon with certification.
///
/// FiniteExact: the hull of finitely many exact points; the tail is the limit.
/// Windowed: the true polygon is only bracketed, upper() from the exact points
///   and lower() from exact points, floor markers and a beyond-window floor;
///   it is known exactly on (-inf, certified_to()].
/// ClosedFormHPower: N(h_n^m), exact everywhere.
class NewtonPolygon {
public:
    /// The identically +inf polygon (the zero element).
    NewtonPolygon() = default;

    static NewtonPolygon finite(PLCurve curve, std::vector<PolyPoint> points = {});
    static NewtonPolygon windowed(std::vector<PolyPoint> points, Rational tail_floor);
    static NewtonPolygon closed_form(const ClosedForm& cf);
    /// Windowed polygon from explicit bounds (used by convolution).
    static NewtonPolygon bracket(PLCurve upper, PLCurve lower, long certified_to);

    PolygonKind kind() const noexcept { return kind_; }
    bool is_infinite() const noexcept;
    long start() const;
    long certified_to() const noexcept { return certified_to_; }
    bool certified_everywhere() const noexcept { return certified_to_ == kUnbounded; }

    /// Bound curves; both equal the polygon for FiniteExact.  Not available
    /// for closed forms (use closed()).
    const PLCurve& upper() const;
    const PLCurve& lower() const;
    const std::optional<ClosedForm>& closed() const noexcept { return closed_; }
    const std::vector<PolyPoint>& points() const noexcept { return points_; }
    const Rational& tail_floor() const noexcept { return tail_floor_; }

    PolyEval eval(const Rational& t) const;
    /// Lower bound at t (equal to eval on the certified region).
    ExtRat eval_lower(const Rational& t) const;

    /// Per-unit drops s_i = N(i-1) - N(i) for start < i up to the last vertex,
    /// restricted to the certified region.
    std::vector<Rational> slopes() const;
    /// Last certified slope: -inf when everything is certified, +inf when no
    /// slope is.
    ExtRat uncertainty() const;
    /// lim N(t); UsageError unless the tail is certified.
    ExtRat limit() const;
    /// Indices n where the (certified) polygon touches an exact input point.
    std::vector<long> nodes() const;

private:
    PolygonKind kind_ = PolygonKind::FiniteExact;
    PLCurve upper_, lower_;
    std::optional<ClosedForm> closed_;
    std::vector<PolyPoint> points_;
    Rational tail_floor_{0};
    long certified_to_ = kUnbounded;
};

/// Hull of points.  With a terminal value equal to the least finite value the
/// result is FiniteExact; a smaller terminal gives a Windowed polygon whose
/// beyond-window floor is the terminal; no terminal uses `tail_floor`.
/// Floor-marked points always make the result Windowed.
NewtonPolygon np_from_points(const std::vector<PolyPoint>& points,
                             const std::optional<ExtRat>& terminal = std::nullopt,
                             const Rational& tail_floor = Rational(0));

/// N(f).  Literal elements give FiniteExact polygons; other elements give
/// Windowed ones with floor markers (value >= N) for digits that vanish
/// modulo t^N and `tail_floor` as the bound for digits beyond L.
NewtonPolygon np_of_witt(const WittElement& f, const Rational& tail_floor = Rational(0));

inline PolyEval np_eval(const NewtonPolygon& P, const Rational& t) { return P.eval(t); }
inline ExtRat np_limit(const NewtonPolygon& P) { return P.limit(); }

/// Concave piecewise-linear function lambda -> inf_t {phi(t) + lambda t} on
/// [0, inf): values at ascending breakpoints (first at 0), then the final slope.
struct LegendreFn {
    std::vector<std::pair<Rational, Rational>> breakpoints;
    long final_slope = 0;

    ExtRat eval(const Rational& lambda) const;
    friend bool operator==(const LegendreFn&, const LegendreFn&) = default;
};

/// Exact transform of a FiniteExact (or fully certified Windowed) polygon.
LegendreFn legendre(const NewtonPolygon& P);
/// L(P)(lambda) for every kind with a certified tail, including closed forms.
ExtRat legendre_eval(const NewtonPolygon& P, const Rational& lambda);
/// Inverse transform; rejects non-concave input and non-integer slopes.
NewtonPolygon np_from_legendre(const LegendreFn& F);

/// Slope merge.  Closed forms are expanded up to `horizon` first.
NewtonPolygon np_convolve(const NewtonPolygon& P, const NewtonPolygon& Q, long horizon = 64);
/// The closed form as a Windowed polygon over 0..horizon (clipped to the guard).
NewtonPolygon materialize(const ClosedForm& cf, long horizon);

enum class Tri { CertifiedTrue, CertifiedFalse, Unknown };

std::string to_string(Tri t);

struct IndexRange {
    long from = LONG_MIN;
    long to = LONG_MAX;
};

struct LeqOutcome {
    Tri verdict = Tri::Unknown;
    /// Integer where the inequality provably fails (CertifiedFalse).
    std::optional<long> witness;
};

/// Pointwise P <= Q (P < Q when strict, with "inf < inf" counted as true)
/// over all real t in `range`.  Unknown when uncertified content decides.
LeqOutcome np_leq_explain(const NewtonPolygon& P, const NewtonPolygon& Q, bool strict = false,
                          IndexRange range = {});
inline Tri np_leq(const NewtonPolygon& P, const NewtonPolygon& Q, bool strict = false, IndexRange range = {}) {
    return np_leq_explain(P, Q, strict, range).verdict;
}

}  // namespace wittnp
