// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/witt.hpp"

#include <sstream>

#include "wittnp/errors.hpp"

namespace wittnp {

namespace {

void require_same_ctx(const WittElement& f, const WittElement& g, const char* op) {
    if (!(f.ctx() == g.ctx())) throw UsageError(std::string(op) + ": operands have different precision contexts");
}

Rational top_exponent(const MonomialSeries& x) { return x.terms().back().exponent; }

}  // namespace

/// Schoolbook accumulator: pile d collects summands [x] p^d.  Settling folds
/// each pile left to right with the carry polynomials, pushing carries up.
/// Exactness is tracked per summand; carries are always truncated.
class DigitPiles {
public:
    explicit DigitPiles(const PrecisionCtx& ctx) : ctx_(ctx), piles_(ctx.digits + 1) {}

    void push(unsigned d, MonomialSeries x, bool exact) {
        if (exact && x.is_zero()) return;
        if (d > ctx_.digits) {
            overflow_ = true;
            return;
        }
        piles_[d].push_back({std::move(x), exact});
    }

    void mark_overflow() { overflow_ = true; }

    WittElement settle() {
        const unsigned L = ctx_.digits;
        auto table = carry_table(ctx_.p, L);
        WittElement out(ctx_);
        out.tail_zero_ = !overflow_;
        for (unsigned d = 0; d <= L; ++d) {
            const Rational cap = ctx_.working_cap(d);
            MonomialSeries acc(ctx_.p, cap);
            bool acc_exact = true, acc_known_zero = true;
            for (auto& item : piles_[d]) {
                MonomialSeries x = item.value.truncated(cap);
                bool exact = item.exact && x.size() == item.value.size();
                if (!acc_known_zero) {
                    // Both summands may be nonzero: carries reach every higher digit.
                    for (unsigned j = 1; d + j <= L; ++j)
                        piles_[d + j].push_back({table->evaluate(j, acc, x, ctx_.working_cap(d + j)), false});
                    out.tail_zero_ = false;
                }
                acc = add(acc, x);
                acc_exact = acc_exact && exact;
                acc_known_zero = acc_known_zero && exact && x.is_zero();
            }
            out.digits_[d] = std::move(acc);
            out.exact_[d] = acc_exact;
        }
        return out;
    }

private:
    struct Item {
        MonomialSeries value;
        bool exact;
    };

    PrecisionCtx ctx_;
    std::vector<std::vector<Item>> piles_;
    bool overflow_ = false;
};

WittElement::WittElement(const PrecisionCtx& ctx) : ctx_(ctx) {
    ctx_.validate();
    digits_.reserve(ctx_.digits + 1);
    for (unsigned d = 0; d <= ctx_.digits; ++d) digits_.emplace_back(ctx_.p, ctx_.working_cap(d));
    exact_.assign(ctx_.digits + 1, true);
}

WittElement WittElement::one(const PrecisionCtx& ctx) {
    WittElement f(ctx);
    f.digits_[0] = MonomialSeries::constant(ctx.p, ctx.working_cap(0), 1);
    return f;
}

WittElement WittElement::minus_one(const PrecisionCtx& ctx) {
    WittElement f(ctx);
    if (ctx.p == 2) {
        for (unsigned d = 0; d <= ctx.digits; ++d)
            f.digits_[d] = MonomialSeries::constant(ctx.p, ctx.working_cap(d), 1);
        f.tail_zero_ = false;
    } else {
        f.digits_[0] = MonomialSeries::constant(ctx.p, ctx.working_cap(0), -1);
    }
    return f;
}

WittElement WittElement::teich(const PrecisionCtx& ctx, const MonomialSeries& x) {
    if (x.p() != ctx.p) throw UsageError("teich: series has a different characteristic");
    return from_series(ctx, {x}, true);
}

WittElement WittElement::from_digits(const PrecisionCtx& ctx,
                                     const std::vector<std::vector<std::pair<Rational, long>>>& digits,
                                     bool literal) {
    std::vector<MonomialSeries> series;
    for (std::size_t d = 0; d < digits.size(); ++d) {
        Rational cap = d <= ctx.digits ? ctx.working_cap(static_cast<unsigned>(d)) : Rational(1);
        for (const auto& term : digits[d])
            if (term.first >= cap) cap = term.first + 1;
        series.push_back(MonomialSeries::from_terms(ctx.p, cap, digits[d]));
    }
    return from_series(ctx, series, literal);
}

WittElement WittElement::from_series(const PrecisionCtx& ctx, const std::vector<MonomialSeries>& digits,
                                     bool literal) {
    WittElement f(ctx);
    f.tail_zero_ = literal;
    for (std::size_t d = 0; d < digits.size(); ++d) {
        if (digits[d].p() != ctx.p) throw UsageError("digit has a different characteristic");
        if (d > ctx.digits) {
            if (!digits[d].is_zero()) f.tail_zero_ = false;
            continue;
        }
        MonomialSeries x = digits[d].truncated(ctx.working_cap(static_cast<unsigned>(d)));
        f.exact_[d] = literal && x.size() == digits[d].size();
        f.digits_[d] = std::move(x);
    }
    if (!literal)
        for (unsigned d = static_cast<unsigned>(digits.size()); d <= ctx.digits; ++d) f.exact_[d] = false;
    return f;
}

WittElement WittElement::exact_prefix(const PrecisionCtx& ctx, const std::vector<MonomialSeries>& digits) {
    WittElement f = from_series(ctx, digits, true);
    f.tail_zero_ = false;
    return f;
}

bool WittElement::literal() const {
    if (!tail_zero_) return false;
    for (bool e : exact_)
        if (!e) return false;
    return true;
}

WittElement WittElement::as_nonliteral() const {
    WittElement f = *this;
    f.tail_zero_ = false;
    f.exact_.assign(f.exact_.size(), false);
    return f;
}

MonomialSeries WittElement::digit(unsigned d) const { return digits_.at(d).truncated(ctx_.tcap); }

bool WittElement::is_zero() const {
    for (unsigned d = 0; d <= ctx_.digits; ++d)
        if (!digit(d).is_zero()) return false;
    return true;
}

WittElement WittElement::truncated_to(unsigned new_digits) const {
    if (new_digits > ctx_.digits) throw UsageError("truncated_to: cannot add digits");
    PrecisionCtx c = ctx_;
    c.digits = new_digits;
    WittElement f(c);
    f.tail_zero_ = tail_zero_;
    for (unsigned d = 0; d <= new_digits; ++d) {
        f.digits_[d] = digits_[d].truncated(c.working_cap(d));
        f.exact_[d] = exact_[d] && f.digits_[d].size() == digits_[d].size();
    }
    for (unsigned d = new_digits + 1; d <= ctx_.digits; ++d)
        if (!(exact_[d] && digits_[d].is_zero())) f.tail_zero_ = false;
    return f;
}

WittElement WittElement::shifted(unsigned k) const {
    WittElement f(ctx_);
    f.tail_zero_ = tail_zero_;
    for (unsigned d = 0; d <= ctx_.digits; ++d) {
        if (d + k <= ctx_.digits) {
            f.digits_[d + k] = digits_[d].truncated(ctx_.working_cap(d + k));
            f.exact_[d + k] = exact_[d] && f.digits_[d + k].size() == digits_[d].size();
        } else if (!(exact_[d] && digits_[d].is_zero())) {
            f.tail_zero_ = false;
        }
    }
    return f;
}

std::string WittElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned d = 0; d <= ctx_.digits; ++d) {
        MonomialSeries x = digit(d);
        if (x.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << '[' << x.str() << ']';
        if (d == 1) os << "*p";
        if (d > 1) os << "*p^" << d;
    }
    return first ? "[0]" : os.str();
}

bool operator==(const WittElement& a, const WittElement& b) {
    if (!(a.ctx_ == b.ctx_)) return false;
    for (unsigned d = 0; d <= a.ctx_.digits; ++d)
        if (!(a.digit(d) == b.digit(d))) return false;
    return true;
}

bool same_raw_digits(const WittElement& a, const WittElement& b) {
    return a.ctx_ == b.ctx_ && a.digits_ == b.digits_;
}

WittElement teich_add(const PrecisionCtx& ctx, const MonomialSeries& x, const MonomialSeries& y,
                      const CarryTable& table) {
    ctx.validate();
    if (table.p() != ctx.p || table.depth() < ctx.digits)
        throw UsageError("teich_add: carry table does not match context");
    const Rational cap0 = ctx.working_cap(0);
    MonomialSeries a = x.truncated(cap0), b = y.truncated(cap0);
    std::vector<MonomialSeries> digits;
    for (unsigned n = 0; n <= ctx.digits; ++n) digits.push_back(table.evaluate(n, a, b, ctx.working_cap(n)));
    return WittElement::from_series(ctx, digits, false);
}

WittElement teich_add(const PrecisionCtx& ctx, const MonomialSeries& x, const MonomialSeries& y) {
    return teich_add(ctx, x, y, *carry_table(ctx.p, ctx.digits));
}

WittElement teich_sum(const PrecisionCtx& ctx, const std::vector<MonomialSeries>& pile) {
    ctx.validate();
    DigitPiles piles(ctx);
    for (const auto& x : pile) piles.push(0, x, true);
    return piles.settle();
}

WittElement witt_add(const WittElement& f, const WittElement& g) {
    require_same_ctx(f, g, "witt_add");
    const PrecisionCtx& ctx = f.ctx();
    DigitPiles piles(ctx);
    for (unsigned d = 0; d <= ctx.digits; ++d) {
        piles.push(d, f.raw_digit(d), f.digit_exact(d));
        piles.push(d, g.raw_digit(d), g.digit_exact(d));
    }
    if (!f.tail_zero() || !g.tail_zero()) piles.mark_overflow();
    return piles.settle();
}

WittElement witt_mul(const WittElement& f, const WittElement& g) {
    require_same_ctx(f, g, "witt_mul");
    const PrecisionCtx& ctx = f.ctx();
    const unsigned L = ctx.digits;
    DigitPiles piles(ctx);
    auto known_zero = [](const WittElement& e, unsigned d) { return e.digit_exact(d) && e.raw_digit(d).is_zero(); };
    bool f_nonzero = false, g_nonzero = false;
    for (unsigned d = 0; d <= L; ++d) {
        f_nonzero = f_nonzero || !known_zero(f, d);
        g_nonzero = g_nonzero || !known_zero(g, d);
    }
    for (unsigned i = 0; i <= L; ++i) {
        if (known_zero(f, i)) continue;
        for (unsigned j = 0; j <= L; ++j) {
            if (known_zero(g, j)) continue;
            if (i + j > L) {
                piles.mark_overflow();
                continue;
            }
            const MonomialSeries& x = f.raw_digit(i);
            const MonomialSeries& y = g.raw_digit(j);
            const Rational cap = ctx.working_cap(i + j);
            bool exact = f.digit_exact(i) && g.digit_exact(j) &&
                         (x.is_zero() || y.is_zero() || top_exponent(x) + top_exponent(y) < cap);
            piles.push(i + j, mul_capped(x, y, cap), exact);
        }
    }
    if ((!f.tail_zero() && g_nonzero) || (!g.tail_zero() && f_nonzero)) piles.mark_overflow();
    return piles.settle();
}

WittElement witt_neg(const WittElement& f) { return witt_mul(WittElement::minus_one(f.ctx()), f); }

WittElement witt_sub(const WittElement& f, const WittElement& g) { return witt_add(f, witt_neg(g)); }

WittElement witt_pow(const WittElement& f, unsigned e) {
    WittElement r = WittElement::one(f.ctx());
    for (unsigned i = 0; i < e; ++i) r = witt_mul(r, f);
    return r;
}

}  // namespace wittnp
