// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/ghost.hpp"

#include <sstream>

#include "wittnp/errors.hpp"

namespace wittnp {

namespace {

// Dense polynomial in t^(1/D), truncated below t^M: coefficient i belongs to t^(i/D).
struct Dense {
    std::vector<Integer> c;
};

class Lift {
public:
    Lift(const PrecisionCtx& ctx, const std::vector<const WittElement*>& inputs) : ctx_(ctx) {
        M_ = ctx.tcap * rational_pow(ctx.p, ctx.digits);
        // Common denominator for all Witt coordinates x_n^(p^n) and for M.
        Integer D = denominator(M_);
        for (const auto* f : inputs) {
            for (unsigned n = 0; n <= ctx.digits; ++n) {
                Rational scale = rational_pow(ctx.p, n);
                for (const auto& t : f->raw_digit(n).terms()) D = lcm(D, denominator(t.exponent * scale));
            }
        }
        D_ = D;
        Integer size = numerator(M_ * D_) / denominator(M_ * D_);
        if (size > 2'000'000) throw ResourceError("ghost oracle: lift too large");
        size_ = size.convert_to<std::size_t>();
    }

    // Witt coordinate n of f: x_n^(p^n) with coefficients in 0..p-1.
    Dense coordinate(const WittElement& f, unsigned n) const {
        Dense out{std::vector<Integer>(size_)};
        Rational scale = rational_pow(ctx_.p, n);
        for (const auto& t : f.raw_digit(n).terms()) {
            Rational e = t.exponent * scale * D_;
            Integer idx = numerator(e);
            if (idx < static_cast<long>(size_)) out.c[idx.convert_to<std::size_t>()] = t.coeff;
        }
        return out;
    }

    Dense mul(const Dense& a, const Dense& b) const {
        Dense out{std::vector<Integer>(size_)};
        for (std::size_t i = 0; i < size_; ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; i + j < size_; ++j)
                if (b.c[j] != 0) out.c[i + j] += a.c[i] * b.c[j];
        }
        return out;
    }

    Dense pow(const Dense& a, std::uint64_t e) const {
        Dense r{std::vector<Integer>(size_)};
        r.c[0] = 1;
        Dense base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return r;
    }

    std::vector<Dense> ghost(const std::vector<Dense>& w) const {
        std::vector<Dense> phi;
        for (unsigned n = 0; n < w.size(); ++n) {
            Dense acc{std::vector<Integer>(size_)};
            Integer pk = 1;
            for (unsigned k = 0; k <= n; ++k) {
                Dense term = pow(w[k], int_pow(ctx_.p, n - k).convert_to<std::uint64_t>());
                for (std::size_t i = 0; i < size_; ++i) acc.c[i] += pk * term.c[i];
                pk *= ctx_.p;
            }
            phi.push_back(std::move(acc));
        }
        return phi;
    }

    std::vector<Dense> unghost(const std::vector<Dense>& phi) const {
        std::vector<Dense> w;
        for (unsigned n = 0; n < phi.size(); ++n) {
            Dense rest = phi[n];
            Integer pk = 1;
            for (unsigned k = 0; k < n; ++k) {
                Dense term = pow(w[k], int_pow(ctx_.p, n - k).convert_to<std::uint64_t>());
                for (std::size_t i = 0; i < size_; ++i) rest.c[i] -= pk * term.c[i];
                pk *= ctx_.p;
            }
            for (std::size_t i = 0; i < size_; ++i) {
                Integer q, r;
                boost::multiprecision::divide_qr(rest.c[i], pk, q, r);
                if (r != 0) throw InternalError("ghost oracle: inexact division by p^" + std::to_string(n));
                rest.c[i] = q;
            }
            w.push_back(std::move(rest));
        }
        return w;
    }

    MonomialSeries to_digit(const Dense& w, unsigned n) const {
        std::vector<std::pair<Rational, long>> terms;
        Rational scale = Rational(1) / (Rational(D_) * rational_pow(ctx_.p, n));
        for (std::size_t i = 0; i < size_; ++i) {
            Integer r = w.c[i] % ctx_.p;
            if (r < 0) r += ctx_.p;
            if (r != 0) terms.emplace_back(Rational(Integer(i)) * scale, r.convert_to<long>());
        }
        return MonomialSeries::from_terms(ctx_.p, ctx_.working_cap(n), terms);
    }

    IntSeries sparse(const Dense& a) const {
        IntSeries out;
        for (std::size_t i = 0; i < size_; ++i)
            if (a.c[i] != 0) out.emplace_back(Rational(Integer(i)) / Rational(D_), a.c[i]);
        return out;
    }

private:
    PrecisionCtx ctx_;
    Rational M_;
    Integer D_;
    std::size_t size_ = 0;
};

}  // namespace

std::vector<IntSeries> ghost_components(const WittElement& f) {
    Lift lift(f.ctx(), {&f});
    std::vector<Dense> w;
    for (unsigned n = 0; n <= f.digits(); ++n) w.push_back(lift.coordinate(f, n));
    std::vector<IntSeries> out;
    for (const auto& phi : lift.ghost(w)) out.push_back(lift.sparse(phi));
    return out;
}

WittElement ghost_oracle(const WittElement& f, const WittElement& g, GhostOp op) {
    if (!(f.ctx() == g.ctx())) throw UsageError("ghost_oracle: operands have different precision contexts");
    const PrecisionCtx& ctx = f.ctx();
    Lift lift(ctx, {&f, &g});
    std::vector<Dense> wf, wg;
    for (unsigned n = 0; n <= ctx.digits; ++n) {
        wf.push_back(lift.coordinate(f, n));
        wg.push_back(lift.coordinate(g, n));
    }
    std::vector<Dense> pf = lift.ghost(wf), pg = lift.ghost(wg), ph;
    for (unsigned n = 0; n <= ctx.digits; ++n) {
        if (op == GhostOp::Add) {
            Dense s = pf[n];
            for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] += pg[n].c[i];
            ph.push_back(std::move(s));
        } else {
            ph.push_back(lift.mul(pf[n], pg[n]));
        }
    }
    std::vector<Dense> wh = lift.unghost(ph);
    std::vector<MonomialSeries> digits;
    for (unsigned n = 0; n <= ctx.digits; ++n) digits.push_back(lift.to_digit(wh[n], n));
    return WittElement::from_series(ctx, digits, false);
}

std::string to_string(const IntSeries& s) {
    if (s.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& [q, c] = s[i];
        if (i) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        Integer mag = abs(c);
        if (q == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << '*';
        if (q == 1) os << 't';
        else os << "t^(" << to_string(q) << ')';
    }
    return os.str();
}

}  // namespace wittnp
