// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/perfring.hpp"

#include <algorithm>
#include <sstream>

#include "wittnp/errors.hpp"

namespace wittnp {

bool is_supported_prime(unsigned p) { return p == 2 || p == 3 || p == 5; }

void PrecisionCtx::validate() const {
    if (!is_supported_prime(p)) throw UsageError("unsupported prime p=" + std::to_string(p) + " (use 2, 3 or 5)");
    if (tcap <= 1) throw UsageError("t-adic cap must exceed 1 so that t survives, got " + to_string(tcap));
}

Rational PrecisionCtx::working_cap(unsigned d) const {
    if (d > digits) throw UsageError("digit index beyond precision");
    return tcap * rational_pow(p, static_cast<std::int64_t>(digits - d));
}

namespace {

unsigned reduce_mod(long c, unsigned p) {
    long r = c % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return static_cast<unsigned>(r);
}

void require_same(const MonomialSeries& x, const MonomialSeries& y, const char* op) {
    if (x.p() != y.p() || x.cap() != y.cap())
        throw UsageError(std::string(op) + ": operands live in different contexts");
}

// Sort by exponent and merge coefficients mod p.
std::vector<MonomialSeries::Term> canonical(std::vector<MonomialSeries::Term> raw, unsigned p) {
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
    std::vector<MonomialSeries::Term> out;
    out.reserve(raw.size());
    for (auto& t : raw) {
        if (!out.empty() && out.back().exponent == t.exponent) {
            out.back().coeff = (out.back().coeff + t.coeff) % p;
            if (out.back().coeff == 0) out.pop_back();
        } else if (t.coeff % p != 0) {
            out.push_back({std::move(t.exponent), t.coeff % p});
        }
    }
    return out;
}

}  // namespace

MonomialSeries::MonomialSeries(unsigned p, Rational cap) : p_(p), cap_(std::move(cap)) {
    if (p < 2) throw UsageError("characteristic must be a prime");
    if (cap_ <= 0) throw UsageError("t-adic cap must be positive");
}

MonomialSeries MonomialSeries::monomial(unsigned p, Rational cap, Rational exponent, long coeff) {
    return from_terms(p, std::move(cap), {{std::move(exponent), coeff}});
}

MonomialSeries MonomialSeries::constant(unsigned p, Rational cap, long coeff) {
    return from_terms(p, std::move(cap), {{Rational(0), coeff}});
}

MonomialSeries MonomialSeries::from_terms(unsigned p, Rational cap,
                                          const std::vector<std::pair<Rational, long>>& terms) {
    MonomialSeries s(p, std::move(cap));
    std::vector<Term> raw;
    raw.reserve(terms.size());
    for (const auto& [q, c] : terms) {
        if (q < 0) throw SemanticError("negative exponent " + to_string(q));
        if (!has_p_power_denominator(q, p))
            throw SemanticError("exponent " + to_string(q) + " is not in Z[1/" + std::to_string(p) + "]");
        if (q >= s.cap_) continue;
        unsigned r = reduce_mod(c, p);
        if (r != 0) raw.push_back({q, r});
    }
    s.terms_ = canonical(std::move(raw), p);
    return s;
}

ExtRat MonomialSeries::valuation() const {
    if (terms_.empty()) return ExtRat::pos_inf();
    return ExtRat(terms_.front().exponent);
}

MonomialSeries MonomialSeries::truncated(const Rational& cap) const {
    MonomialSeries s(p_, cap);
    for (const auto& t : terms_) {
        if (t.exponent >= cap) break;
        s.terms_.push_back(t);
    }
    return s;
}

MonomialSeries MonomialSeries::root_p(unsigned k) const {
    MonomialSeries s = *this;
    if (k == 0) return s;
    Rational scale = rational_pow(p_, -static_cast<std::int64_t>(k));
    for (auto& t : s.terms_) t.exponent *= scale;
    return s;
}

MonomialSeries MonomialSeries::frobenius(unsigned k) const {
    MonomialSeries s(p_, cap_);
    Rational scale = rational_pow(p_, static_cast<std::int64_t>(k));
    for (const auto& t : terms_) {
        Rational q = t.exponent * scale;
        if (q >= cap_) break;
        s.terms_.push_back({std::move(q), t.coeff});
    }
    return s;
}

MonomialSeries MonomialSeries::shifted(const Rational& q) const {
    if (q < 0) throw UsageError("negative shift");
    MonomialSeries s(p_, cap_);
    for (const auto& t : terms_) {
        Rational e = t.exponent + q;
        if (e >= cap_) break;
        s.terms_.push_back({std::move(e), t.coeff});
    }
    return s;
}

MonomialSeries MonomialSeries::scaled(long c) const {
    unsigned r = reduce_mod(c, p_);
    MonomialSeries s(p_, cap_);
    if (r == 0) return s;
    for (const auto& t : terms_) s.terms_.push_back({t.exponent, (t.coeff * r) % p_});
    return s;
}

std::string MonomialSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        if (t.exponent == 0) {
            os << t.coeff;
            continue;
        }
        if (t.coeff != 1) os << t.coeff << '*';
        if (t.exponent == 1)
            os << 't';
        else
            os << "t^(" << to_string(t.exponent) << ')';
    }
    return os.str();
}

MonomialSeries add(const MonomialSeries& x, const MonomialSeries& y) {
    require_same(x, y, "add");
    MonomialSeries s(x.p_, x.cap_);
    s.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto i = x.terms_.begin(), j = y.terms_.begin();
    while (i != x.terms_.end() || j != y.terms_.end()) {
        if (j == y.terms_.end() || (i != x.terms_.end() && i->exponent < j->exponent)) {
            s.terms_.push_back(*i++);
        } else if (i == x.terms_.end() || j->exponent < i->exponent) {
            s.terms_.push_back(*j++);
        } else {
            unsigned c = (i->coeff + j->coeff) % x.p_;
            if (c != 0) s.terms_.push_back({i->exponent, c});
            ++i;
            ++j;
        }
    }
    return s;
}

MonomialSeries mul(const MonomialSeries& x, const MonomialSeries& y) {
    require_same(x, y, "mul");
    return mul_capped(x, y, x.cap());
}

MonomialSeries mul_capped(const MonomialSeries& x, const MonomialSeries& y, const Rational& cap) {
    if (x.p() != y.p()) throw UsageError("mul: operands have different characteristic");
    MonomialSeries s(x.p_, cap);
    if (x.is_zero() || y.is_zero()) return s;
    std::vector<MonomialSeries::Term> raw;
    raw.reserve(x.terms_.size() * y.terms_.size());
    for (const auto& a : x.terms_) {
        if (a.exponent >= cap) break;
        for (const auto& b : y.terms_) {
            Rational e = a.exponent + b.exponent;
            if (e >= cap) break;  // y's exponents are increasing
            raw.push_back({std::move(e), (a.coeff * b.coeff) % x.p_});
        }
    }
    s.terms_ = canonical(std::move(raw), x.p_);
    return s;
}

MonomialSeries negate(const MonomialSeries& x) { return x.scaled(-1); }

MonomialSeries pow(const MonomialSeries& x, std::uint64_t e) {
    MonomialSeries result = MonomialSeries::constant(x.p(), x.cap(), 1);
    if (e == 0) return result;
    // Split e into base-p digits: x^e = prod_j (x^(p^j))^(d_j), and x^(p^j) is a Frobenius twist.
    unsigned j = 0;
    while (e > 0) {
        unsigned d = static_cast<unsigned>(e % x.p());
        e /= x.p();
        if (d != 0) {
            MonomialSeries twist = x.frobenius(j);
            for (unsigned r = 0; r < d; ++r) result = mul(result, twist);
        }
        ++j;
    }
    return result;
}

}  // namespace wittnp
