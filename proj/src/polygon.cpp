// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/polygon.hpp"

#include <algorithm>
#include <map>

#include "wittnp/errors.hpp"

namespace wittnp {

// ---------------------------------------------------------------- PLCurve

namespace {

// slope(a, b) < slope(b, c) for a.x < b.x < c.x
bool strictly_convex_at(const Vertex& a, const Vertex& b, const Vertex& c) {
    return (b.y - a.y) * Rational(c.x - b.x) < (c.y - b.y) * Rational(b.x - a.x);
}

}  // namespace

PLCurve PLCurve::hull(std::vector<std::pair<long, Rational>> points) {
    PLCurve out;
    if (points.empty()) return out;
    std::map<long, Rational> best;
    for (auto& [x, y] : points) {
        auto it = best.find(x);
        if (it == best.end() || y < it->second) best[x] = y;
    }
    Rational ymin = best.begin()->second;
    for (const auto& [x, y] : best) ymin = std::min(ymin, y);
    for (const auto& [x, y] : best) {
        Vertex v{x, y};
        while (out.vertices_.size() >= 2 &&
               !strictly_convex_at(out.vertices_[out.vertices_.size() - 2], out.vertices_.back(), v))
            out.vertices_.pop_back();
        out.vertices_.push_back(v);
        if (y == ymin) break;
    }
    return out;
}

long PLCurve::start() const {
    if (infinite()) throw UsageError("identically infinite polygon has no start");
    return vertices_.front().x;
}

long PLCurve::last_x() const {
    if (infinite()) throw UsageError("identically infinite polygon has no vertices");
    return vertices_.back().x;
}

const Rational& PLCurve::tail() const {
    if (infinite()) throw UsageError("identically infinite polygon has no tail");
    return vertices_.back().y;
}

ExtRat PLCurve::eval(const Rational& t) const {
    if (infinite() || t < vertices_.front().x) return ExtRat::pos_inf();
    if (t >= vertices_.back().x) return ExtRat(vertices_.back().y);
    auto it = std::upper_bound(vertices_.begin(), vertices_.end(), t,
                               [](const Rational& v, const Vertex& w) { return v < w.x; });
    const Vertex& b = *it;
    const Vertex& a = *(it - 1);
    return ExtRat(a.y + (b.y - a.y) * (t - a.x) / Rational(b.x - a.x));
}

ExtRat PLCurve::at(long t) const { return eval(Rational(t)); }

Rational PLCurve::drop(long i) const {
    if (infinite() || i <= start()) throw UsageError("drop index must lie right of the start");
    return at(i - 1).value() - at(i).value();
}

PLCurve convolve(const PLCurve& a, const PLCurve& b) {
    if (a.infinite() || b.infinite()) return PLCurve();
    struct Segment {
        long length;
        Rational drop;
    };
    std::vector<Segment> segs;
    for (const auto* c : {&a, &b}) {
        const auto& v = c->vertices();
        for (std::size_t i = 1; i < v.size(); ++i) {
            long len = v[i].x - v[i - 1].x;
            segs.push_back({len, (v[i - 1].y - v[i].y) / Rational(len)});
        }
    }
    std::stable_sort(segs.begin(), segs.end(), [](const Segment& s, const Segment& t) { return s.drop > t.drop; });
    std::vector<std::pair<long, Rational>> pts;
    long x = a.start() + b.start();
    Rational y = a.vertices().front().y + b.vertices().front().y;
    pts.emplace_back(x, y);
    for (const auto& s : segs) {
        x += s.length;
        y -= s.drop * Rational(s.length);
        pts.emplace_back(x, y);
    }
    return PLCurve::hull(std::move(pts));
}

// ------------------------------------------------------------- ClosedForm

namespace {

// k^(2^(n-1)), or nullopt once it exceeds `ceiling`.
std::optional<std::uint64_t> node_exponent(std::uint64_t k, unsigned level, std::uint64_t ceiling) {
    if (level == 0) throw UsageError("level must be at least 1");
    if (k <= 1) return k;
    Integer e = k;
    for (unsigned i = 1; i < level; ++i) {
        e *= e;
        if (e > ceiling) return std::nullopt;
    }
    if (e > ceiling) return std::nullopt;
    return e.convert_to<std::uint64_t>();
}

}  // namespace

std::string describe_guard(const ClosedForm& cf, std::uint64_t k) {
    return "val_a(" + std::to_string(cf.level) + ", " + std::to_string(k) + "): exponent " + std::to_string(k) +
           "^(2^" + std::to_string(cf.level - 1) + ") exceeds ceiling " + std::to_string(cf.ceiling);
}

Rational ClosedForm::node(std::uint64_t k) const {
    auto e = node_exponent(k, level, ceiling);
    if (!e) throw ResourceError(describe_guard(*this, k));
    return rational_pow(p, -static_cast<std::int64_t>(*e));
}

Rational ClosedForm::value(long t) const {
    if (t < 0) throw UsageError("closed form evaluated left of its start");
    if (power == 0) throw UsageError("closed form needs a positive power");
    const std::uint64_t k = static_cast<std::uint64_t>(t) / power;
    const std::uint64_t r = static_cast<std::uint64_t>(t) % power;
    Rational vk = node(k);
    if (r == 0) return Rational(power) * vk;
    Rational vk1 = node(k + 1);
    return Rational(power) * vk - Rational(r) * (vk - vk1);
}

ExtRat ClosedForm::eval(const Rational& t) const {
    if (t < 0) return ExtRat::pos_inf();
    Integer f = floor(t);
    long lo = f.convert_to<long>();
    Rational frac = t - Rational(f);
    Rational a = value(lo);
    if (frac == 0) return ExtRat(a);
    Rational b = value(lo + 1);
    return ExtRat(a + (b - a) * frac);
}

long ClosedForm::guard_limit() const {
    // Largest K with K^(2^(n-1)) <= ceiling; values up to K*m avoid v_{K+1}.
    std::uint64_t lo = 1, hi = 2;
    while (node_exponent(hi, level, ceiling)) {
        lo = hi;
        hi *= 2;
        if (hi > (1ull << 40)) break;
    }
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (node_exponent(mid, level, ceiling)) lo = mid;
        else hi = mid;
    }
    long lim = static_cast<long>(std::min<std::uint64_t>(lo, (1ull << 40))) * static_cast<long>(power);
    return lim;
}

// ----------------------------------------------------------- NewtonPolygon

std::string to_string(PolygonKind k) {
    switch (k) {
        case PolygonKind::FiniteExact: return "finite";
        case PolygonKind::Windowed: return "windowed";
        case PolygonKind::ClosedFormHPower: return "closed";
    }
    return "?";
}

namespace {

long agreement(const PLCurve& upper, const PLCurve& lower) {
    if (lower.infinite()) return upper.infinite() ? kUnbounded : upper.start() - 1;
    if (upper.infinite()) return lower.start() - 1;
    if (upper.start() != lower.start()) return std::min(upper.start(), lower.start()) - 1;
    long end = std::max(upper.last_x(), lower.last_x());
    for (long t = upper.start(); t <= end; ++t)
        if (upper.at(t) != lower.at(t)) return t - 1;
    return kUnbounded;
}

}  // namespace

NewtonPolygon NewtonPolygon::finite(PLCurve curve, std::vector<PolyPoint> points) {
    NewtonPolygon P;
    P.kind_ = PolygonKind::FiniteExact;
    P.upper_ = curve;
    P.lower_ = std::move(curve);
    P.points_ = std::move(points);
    P.certified_to_ = kUnbounded;
    if (!P.upper_.infinite()) P.tail_floor_ = P.upper_.tail();
    return P;
}

NewtonPolygon NewtonPolygon::windowed(std::vector<PolyPoint> points, Rational tail_floor) {
    NewtonPolygon P;
    P.kind_ = PolygonKind::Windowed;
    std::vector<std::pair<long, Rational>> exact, bounds;
    long window_end = LONG_MIN;
    for (const auto& pt : points) {
        window_end = std::max(window_end, pt.index);
        if (!pt.value.is_finite()) continue;
        if (pt.floor) {
            bounds.emplace_back(pt.index, pt.value.value());
        } else {
            exact.emplace_back(pt.index, pt.value.value());
            bounds.emplace_back(pt.index, pt.value.value());
        }
    }
    if (window_end == LONG_MIN) window_end = -1;
    bounds.emplace_back(window_end + 1, tail_floor);
    P.upper_ = PLCurve::hull(std::move(exact));
    P.lower_ = PLCurve::hull(std::move(bounds));
    P.points_ = std::move(points);
    std::sort(P.points_.begin(), P.points_.end(),
              [](const PolyPoint& a, const PolyPoint& b) { return a.index < b.index; });
    P.tail_floor_ = std::move(tail_floor);
    P.certified_to_ = agreement(P.upper_, P.lower_);
    return P;
}

NewtonPolygon NewtonPolygon::closed_form(const ClosedForm& cf) {
    if (cf.level == 0 || cf.power == 0) throw UsageError("closed form needs level >= 1 and power >= 1");
    if (!is_supported_prime(cf.p)) throw UsageError("unsupported prime");
    NewtonPolygon P;
    P.kind_ = PolygonKind::ClosedFormHPower;
    P.closed_ = cf;
    P.certified_to_ = kUnbounded;
    return P;
}

NewtonPolygon NewtonPolygon::bracket(PLCurve upper, PLCurve lower, long certified_to) {
    NewtonPolygon P;
    P.kind_ = PolygonKind::Windowed;
    P.certified_to_ = std::min(certified_to, agreement(upper, lower));
    if (!lower.infinite()) P.tail_floor_ = lower.tail();
    P.upper_ = std::move(upper);
    P.lower_ = std::move(lower);
    return P;
}

bool NewtonPolygon::is_infinite() const noexcept {
    return kind_ != PolygonKind::ClosedFormHPower && upper_.infinite() && lower_.infinite();
}

long NewtonPolygon::start() const {
    if (closed_) return 0;
    if (upper_.infinite()) {
        if (lower_.infinite()) throw UsageError("identically infinite polygon has no start");
        return lower_.start();
    }
    return upper_.start();
}

const PLCurve& NewtonPolygon::upper() const {
    if (closed_) throw UsageError("closed-form polygon has no finite curve");
    return upper_;
}

const PLCurve& NewtonPolygon::lower() const {
    if (closed_) throw UsageError("closed-form polygon has no finite curve");
    return lower_;
}

PolyEval NewtonPolygon::eval(const Rational& t) const {
    if (closed_) return {closed_->eval(t), true};
    bool certified = certified_to_ == kUnbounded || t <= certified_to_;
    return {upper_.eval(t), certified};
}

ExtRat NewtonPolygon::eval_lower(const Rational& t) const {
    if (closed_) return closed_->eval(t);
    return lower_.eval(t);
}

std::vector<Rational> NewtonPolygon::slopes() const {
    std::vector<Rational> out;
    if (closed_) {
        long end = std::min<long>(8L * closed_->power, closed_->guard_limit());
        for (long i = 1; i <= end; ++i) out.push_back(closed_->value(i - 1) - closed_->value(i));
        return out;
    }
    if (upper_.infinite()) return out;
    long end = upper_.last_x();
    if (certified_to_ != kUnbounded) end = std::min(end, certified_to_);
    for (long i = upper_.start() + 1; i <= end; ++i) out.push_back(upper_.drop(i));
    return out;
}

ExtRat NewtonPolygon::uncertainty() const {
    if (certified_to_ == kUnbounded) return ExtRat::neg_inf();
    if (upper_.infinite() || certified_to_ <= upper_.start()) return ExtRat::pos_inf();
    return ExtRat(upper_.drop(certified_to_));
}

ExtRat NewtonPolygon::limit() const {
    if (closed_) return ExtRat(0);
    if (certified_to_ != kUnbounded) throw UsageError("limit of a windowed polygon is not certified");
    if (upper_.infinite()) return ExtRat::pos_inf();
    return ExtRat(upper_.tail());
}

std::vector<long> NewtonPolygon::nodes() const {
    std::vector<long> out;
    if (closed_) {
        long end = std::min<long>(8L * closed_->power, closed_->guard_limit());
        for (long k = 0; k <= end; k += closed_->power) out.push_back(k);
        return out;
    }
    if (!points_.empty()) {
        for (const auto& pt : points_) {
            if (pt.floor || !pt.value.is_finite()) continue;
            if (certified_to_ != kUnbounded && pt.index > certified_to_) continue;
            if (upper_.at(pt.index) == pt.value) out.push_back(pt.index);
        }
    } else if (!upper_.infinite()) {
        for (const auto& v : upper_.vertices())
            if (certified_to_ == kUnbounded || v.x <= certified_to_) out.push_back(v.x);
    }
    return out;
}

NewtonPolygon np_from_points(const std::vector<PolyPoint>& points, const std::optional<ExtRat>& terminal,
                             const Rational& tail_floor) {
    bool any_floor = false;
    std::optional<Rational> least;
    std::vector<std::pair<long, Rational>> exact;
    for (const auto& pt : points) {
        if (pt.value.is_neg_inf()) throw UsageError("polygon point with value -inf");
        if (pt.floor) {
            any_floor = true;
            continue;
        }
        if (!pt.value.is_finite()) continue;
        exact.emplace_back(pt.index, pt.value.value());
        if (!least || pt.value.value() < *least) least = pt.value.value();
    }
    if (terminal && terminal->is_neg_inf()) throw UsageError("terminal value -inf");
    if (any_floor) {
        Rational floor_value = tail_floor;
        if (terminal && terminal->is_finite()) floor_value = terminal->value();
        return NewtonPolygon::windowed(points, floor_value);
    }
    if (!least) {
        if (terminal && terminal->is_finite()) throw UsageError("terminal value given for a polygon without finite points");
        return NewtonPolygon();
    }
    if (!terminal) return NewtonPolygon::windowed(points, tail_floor);
    if (terminal->is_pos_inf() || terminal->value() > *least)
        throw UsageError("terminal value exceeds the least point value");
    if (terminal->value() == *least) return NewtonPolygon::finite(PLCurve::hull(std::move(exact)), points);
    return NewtonPolygon::windowed(points, terminal->value());
}

NewtonPolygon np_of_witt(const WittElement& f, const Rational& tail_floor) {
    std::vector<PolyPoint> points;
    const unsigned L = f.digits();
    if (f.literal()) {
        for (unsigned d = 0; d <= L; ++d) points.push_back({static_cast<long>(d), f.raw_digit(d).valuation(), false});
        std::optional<ExtRat> least;
        for (const auto& pt : points)
            if (pt.value.is_finite() && (!least || pt.value < *least)) least = pt.value;
        if (!least) return NewtonPolygon();
        return np_from_points(points, least);
    }
    for (unsigned d = 0; d <= L; ++d) {
        if (f.digit_exact(d)) {
            points.push_back({static_cast<long>(d), f.raw_digit(d).valuation(), false});
            continue;
        }
        MonomialSeries x = f.digit(d);
        if (x.is_zero()) points.push_back({static_cast<long>(d), ExtRat(f.ctx().tcap), true});
        else points.push_back({static_cast<long>(d), x.valuation(), false});
    }
    return NewtonPolygon::windowed(points, tail_floor);
}

// ---------------------------------------------------------------- Legendre

ExtRat LegendreFn::eval(const Rational& lambda) const {
    if (lambda < 0) return ExtRat::neg_inf();
    if (breakpoints.empty()) throw UsageError("empty Legendre transform");
    for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) {
        const auto& [l0, v0] = breakpoints[j];
        const auto& [l1, v1] = breakpoints[j + 1];
        if (lambda <= l1) return ExtRat(v0 + (v1 - v0) * (lambda - l0) / (l1 - l0));
    }
    const auto& [ll, vl] = breakpoints.back();
    return ExtRat(vl + Rational(final_slope) * (lambda - ll));
}

LegendreFn legendre(const NewtonPolygon& P) {
    if (P.is_infinite()) throw UsageError("Legendre transform of the identically infinite polygon");
    if (P.kind() == PolygonKind::ClosedFormHPower)
        throw UsageError("closed-form polygons have infinitely many breakpoints; use legendre_eval");
    if (!P.certified_everywhere()) throw UsageError("Legendre transform needs a certified tail");
    const auto& v = P.upper().vertices();
    LegendreFn F;
    const std::size_t k = v.size() - 1;
    F.breakpoints.emplace_back(Rational(0), v[k].y);
    for (std::size_t i = k; i >= 1; --i) {
        Rational d = (v[i - 1].y - v[i].y) / Rational(v[i].x - v[i - 1].x);
        F.breakpoints.emplace_back(d, v[i].y + d * Rational(v[i].x));
    }
    F.final_slope = v[0].x;
    return F;
}

ExtRat legendre_eval(const NewtonPolygon& P, const Rational& lambda) {
    if (P.is_infinite()) throw UsageError("Legendre transform of the identically infinite polygon");
    if (lambda < 0) return ExtRat::neg_inf();
    if (const auto& cf = P.closed()) {
        if (lambda == 0) return ExtRat(0);
        // The minimizing vertex km is the first one whose next drop v_k - v_{k+1} is <= lambda.
        for (std::uint64_t k = 0;; ++k) {
            Rational vk = cf->node(k), vk1 = cf->node(k + 1);
            if (vk - vk1 <= lambda)
                return ExtRat(Rational(cf->power) * vk + lambda * Rational(static_cast<long>(k * cf->power)));
        }
    }
    return legendre(P).eval(lambda);
}

NewtonPolygon np_from_legendre(const LegendreFn& F) {
    const auto& b = F.breakpoints;
    if (b.empty() || b.front().first != 0) throw UsageError("Legendre data must start at lambda = 0");
    std::vector<std::pair<long, Rational>> vertices;
    std::optional<Rational> previous;
    auto add_piece = [&](const Rational& sigma, const Rational& lambda, const Rational& value) {
        if (denominator(sigma) != 1) throw UsageError("Legendre slope " + to_string(sigma) + " is not an integer");
        if (previous && sigma > *previous) throw UsageError("Legendre data is not concave");
        previous = sigma;
        long x = numerator(sigma).convert_to<long>();
        vertices.emplace_back(x, value - sigma * lambda);
    };
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
        if (b[j + 1].first <= b[j].first) throw UsageError("Legendre breakpoints must increase");
        Rational sigma = (b[j + 1].second - b[j].second) / (b[j + 1].first - b[j].first);
        add_piece(sigma, b[j].first, b[j].second);
    }
    add_piece(Rational(F.final_slope), b.back().first, b.back().second);
    PLCurve curve = PLCurve::hull(vertices);
    NewtonPolygon P = NewtonPolygon::finite(curve);
    for (const auto& [lambda, value] : b)
        if (legendre(P).eval(lambda) != ExtRat(value)) throw UsageError("Legendre data is not a transform of a polygon");
    return P;
}

// ------------------------------------------------------------- Convolution

NewtonPolygon materialize(const ClosedForm& cf, long horizon) {
    long end = std::min(horizon, cf.guard_limit());
    std::vector<PolyPoint> pts;
    for (long t = 0; t <= end; ++t) pts.push_back({t, ExtRat(cf.value(t)), false});
    return NewtonPolygon::windowed(std::move(pts), Rational(0));
}

namespace {

struct Certified {
    bool start_known = true;
    std::vector<Rational> drops;
    ExtRat u;
};

Certified certified_part(const NewtonPolygon& P) {
    Certified c;
    const PLCurve& up = P.upper();
    if (P.certified_everywhere()) {
        c.u = ExtRat::neg_inf();
        for (long i = up.start() + 1; i <= up.last_x(); ++i) c.drops.push_back(up.drop(i));
        return c;
    }
    const long T = P.certified_to();
    if (up.infinite() || T < up.start()) {
        c.start_known = false;
        return c;
    }
    for (long i = up.start() + 1; i <= T; ++i) c.drops.push_back(up.drop(i));
    c.u = c.drops.empty() ? ExtRat::pos_inf() : ExtRat(c.drops.back());
    return c;
}

}  // namespace

NewtonPolygon np_convolve(const NewtonPolygon& P0, const NewtonPolygon& Q0, long horizon) {
    if (P0.is_infinite() || Q0.is_infinite()) throw UsageError("convolution with the identically infinite polygon");
    const NewtonPolygon P = P0.closed() ? materialize(*P0.closed(), horizon) : P0;
    const NewtonPolygon Q = Q0.closed() ? materialize(*Q0.closed(), horizon) : Q0;
    if (P.kind() == PolygonKind::FiniteExact && Q.kind() == PolygonKind::FiniteExact)
        return NewtonPolygon::finite(convolve(P.upper(), Q.upper()));
    PLCurve upper = convolve(P.upper(), Q.upper());
    PLCurve lower = convolve(P.lower(), Q.lower());
    Certified cp = certified_part(P), cq = certified_part(Q);
    long T;
    if (!cp.start_known || !cq.start_known) {
        T = lower.start() - 1;
    } else {
        ExtRat bound = std::max(cp.u, cq.u);
        if (bound.is_neg_inf()) {
            T = kUnbounded;
        } else {
            long count = 0;
            for (const auto* c : {&cp, &cq})
                for (const auto& d : c->drops)
                    if (ExtRat(d) > bound) ++count;
            T = P.upper().start() + Q.upper().start() + count;
        }
    }
    return NewtonPolygon::bracket(std::move(upper), std::move(lower), T);
}

// -------------------------------------------------------------- Comparison

std::string to_string(Tri t) {
    switch (t) {
        case Tri::CertifiedTrue: return "CertifiedTrue";
        case Tri::CertifiedFalse: return "CertifiedFalse";
        case Tri::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// An exact function: a curve or a closed form.
struct Fn {
    const PLCurve* curve = nullptr;
    const ClosedForm* cf = nullptr;

    ExtRat at(long t) const {
        if (cf) return t < 0 ? ExtRat::pos_inf() : ExtRat(cf->value(t));
        return curve->at(t);
    }
};

bool ok(const ExtRat& a, const ExtRat& b, bool strict) {
    if (strict) return (a.is_pos_inf() && b.is_pos_inf()) || a < b;
    return a <= b;
}

constexpr long kScanLimit = 1'000'000;

class Checker {
public:
    Checker(Fn f, Fn g, bool strict, IndexRange range) : f_(f), g_(g), strict_(strict), r_(range) {}

    std::optional<long> violation() {
        if (f_.cf && g_.cf) return closed_closed();
        if (f_.cf) return closed_curve();
        if (g_.cf) return curve_closed();
        return curve_curve();
    }

private:
    bool bad(long t) const { return !ok(f_.at(t), g_.at(t), strict_); }

    // Checks integers of [a, b] within the range; when the range lies wholly
    // outside [a, b] one representative point stands for it (the functions are
    // constant or +inf out there).
    std::optional<long> scan_with_representative(long a, long b) const {
        if (r_.from > r_.to) return std::nullopt;
        long lo = std::max(a, r_.from), hi = std::min(b, r_.to);
        if (lo <= hi) {
            if (hi - lo > kScanLimit) throw ResourceError("polygon comparison scan exceeds limit");
            for (long t = lo; t <= hi; ++t)
                if (bad(t)) return t;
            return std::nullopt;
        }
        long rep = r_.to < a ? r_.to : r_.from;
        if (bad(rep)) return rep;
        return std::nullopt;
    }

    std::optional<long> scan(long a, long b) const {
        long lo = std::max(a, r_.from), hi = std::min(b, r_.to);
        if (hi - lo > kScanLimit) throw ResourceError("polygon comparison scan exceeds limit");
        for (long t = lo; t <= hi; ++t)
            if (bad(t)) return t;
        return std::nullopt;
    }

    std::optional<long> first_in_range(long t) const {
        t = std::max(t, r_.from);
        if (t > r_.to) return std::nullopt;
        return t;
    }

    std::optional<long> curve_curve() const {
        const PLCurve& f = *f_.curve;
        const PLCurve& g = *g_.curve;
        if (g.infinite()) return std::nullopt;
        if (f.infinite()) return first_in_range(g.start());
        return scan_with_representative(std::min(f.start(), g.start()) - 1, std::max(f.last_x(), g.last_x()));
    }

    std::optional<long> closed_curve() const {
        const PLCurve& g = *g_.curve;
        if (g.infinite()) return std::nullopt;
        // Right of g's last vertex g is constant and f decreases, so that vertex stands for the tail.
        return scan_with_representative(std::min(0L, g.start()) - 1, std::max(g.last_x(), 0L));
    }

    std::optional<long> curve_closed() const {
        const PLCurve& f = *f_.curve;
        if (f.infinite()) return first_in_range(0);
        const long X = std::max(f.last_x(), 0L);
        if (auto v = scan(std::min(f.start(), 0L) - 1, X)) return v;
        // Tail: f is the constant c, g decreases to 0.
        const Rational& c = f.tail();
        if (c <= 0) return std::nullopt;
        long t = std::max(X + 1, r_.from);
        for (long steps = 0; t <= r_.to; ++t, ++steps) {
            if (steps > kScanLimit) throw ResourceError("polygon comparison tail scan exceeds limit");
            if (bad(t)) return t;
        }
        return std::nullopt;
    }

    // Smallest k with k^2 > (k + 2) m: beyond k*m a deeper level with power m
    // lies strictly below every power of a shallower level.
    static long gap_index(long m) {
        long k = 1;
        while (k * k <= (k + 2) * m) ++k;
        return k;
    }

    std::optional<long> closed_closed() const {
        const ClosedForm& f = *f_.cf;
        const ClosedForm& g = *g_.cf;
        if (f.p != g.p) throw UsageError("closed forms over different primes");
        if (r_.to < 0) return std::nullopt;
        const long m1 = f.power, m2 = g.power;
        if (f.level == g.level) {
            bool fails = strict_ ? m1 >= m2 : m1 > m2;
            return fails ? first_in_range(0) : std::nullopt;
        }
        if (f.level > g.level) return scan(0, gap_index(m1) * m1);
        long bound = (gap_index(m2) + 1) * m2;
        if (auto v = scan(0, bound)) return v;
        if (r_.to >= bound) throw InternalError("closed-form comparison: expected a violation below the gap index");
        return std::nullopt;
    }

    Fn f_, g_;
    bool strict_;
    IndexRange r_;
};

Fn upper_fn(const NewtonPolygon& P) {
    if (P.closed()) return Fn{nullptr, &*P.closed()};
    return Fn{&P.upper(), nullptr};
}

Fn lower_fn(const NewtonPolygon& P) {
    if (P.closed()) return Fn{nullptr, &*P.closed()};
    return Fn{&P.lower(), nullptr};
}

}  // namespace

LeqOutcome np_leq_explain(const NewtonPolygon& P, const NewtonPolygon& Q, bool strict, IndexRange range) {
    LeqOutcome out;
    if (!Checker(upper_fn(P), lower_fn(Q), strict, range).violation()) {
        out.verdict = Tri::CertifiedTrue;
        return out;
    }
    if (auto w = Checker(lower_fn(P), upper_fn(Q), strict, range).violation()) {
        out.verdict = Tri::CertifiedFalse;
        out.witness = w;
        return out;
    }
    out.verdict = Tri::Unknown;
    return out;
}

}  // namespace wittnp
