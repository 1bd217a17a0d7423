// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/carry_table.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "wittnp/errors.hpp"

namespace wittnp {

namespace {

using Poly = std::vector<Integer>;  // homogeneous: index = exponent of a

Poly poly_mul(const Poly& x, const Poly& y) {
    Poly out(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j] != 0) out[i + j] += x[i] * y[j];
        }
    }
    return out;
}

Poly poly_pow_p(const Poly& x, unsigned p) {
    Poly out = x;
    for (unsigned i = 1; i < p; ++i) out = poly_mul(out, x);
    return out;
}

std::string fraction_exp(std::uint64_t num, std::uint64_t den) {
    Rational q = Rational(Integer(num)) / Rational(Integer(den));
    if (q == 1) return "";
    return "^(" + to_string(q) + ")";
}

}  // namespace

CarryTable::CarryTable(unsigned p, std::vector<std::vector<DigitTerm>> digit_polys)
    : p_(p), digit_(std::move(digit_polys)) {
    if (digit_.empty()) throw UsageError("carry table needs at least W_0");
    integral_.resize(digit_.size());
}

const std::vector<Integer>& CarryTable::integral(unsigned n) const {
    if (n > depth()) throw UsageError("carry table level out of range");
    return integral_[n];
}

const std::vector<CarryTable::DigitTerm>& CarryTable::digit(unsigned n) const {
    if (n > depth()) throw UsageError("carry table level out of range");
    return digit_[n];
}

MonomialSeries CarryTable::evaluate(unsigned n, const MonomialSeries& x, const MonomialSeries& y,
                                    const Rational& cap) const {
    MonomialSeries acc(p_, cap);
    if (x.is_zero() && y.is_zero()) return acc;
    MonomialSeries rx = x.root_p(n).truncated(cap);
    MonomialSeries ry = y.root_p(n).truncated(cap);
    for (const auto& term : digit(n)) {
        if ((term.a_exp > 0 && rx.is_zero()) || (term.b_exp > 0 && ry.is_zero())) continue;
        MonomialSeries m = mul(pow(rx, term.a_exp), pow(ry, term.b_exp));
        acc = add(acc, m.scaled(static_cast<long>(term.coeff)));
    }
    return acc;
}

std::string CarryTable::digit_str(unsigned n) const {
    const auto& terms = digit(n);
    if (terms.empty()) return "0";
    std::uint64_t den = 1;
    for (unsigned i = 0; i < n; ++i) den *= p_;
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        const auto& t = terms[terms.size() - 1 - i];
        bool coeff_shown = t.coeff != 1;
        if (coeff_shown) os << t.coeff;
        if (t.a_exp > 0) os << (coeff_shown ? "*" : "") << 'a' << fraction_exp(t.a_exp, den);
        if (t.b_exp > 0) os << (coeff_shown || t.a_exp > 0 ? "*" : "") << 'b' << fraction_exp(t.b_exp, den);
        if (t.a_exp == 0 && t.b_exp == 0 && !coeff_shown) os << '1';
    }
    return os.str();
}

std::string CarryTable::integral_str(unsigned n) const {
    const auto& w = integral(n);
    if (w.empty()) return "?";
    std::ostringstream os;
    bool first = true;
    const std::size_t deg = w.size() - 1;
    for (std::size_t k = w.size(); k-- > 0;) {
        const Integer& c = w[k];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool shown = mag != 1;
        if (shown) os << mag;
        auto var = [&](char v, std::size_t e) {
            if (e == 0) return;
            if (shown) os << '*';
            os << v;
            if (e > 1) os << '^' << e;
            shown = true;
        };
        var('a', k);
        var('b', deg - k);
        if (!shown) os << '1';
    }
    return first ? "0" : os.str();
}

unsigned max_carry_depth(unsigned p) {
    switch (p) {
        case 2: return 8;
        case 3: return 5;
        case 5: return 4;
        default: throw UsageError("unsupported prime p=" + std::to_string(p));
    }
}

std::shared_ptr<const CarryTable> compute_carry_table(unsigned p, unsigned depth) {
    if (depth > max_carry_depth(p))
        throw ResourceError("carry_table(" + std::to_string(p) + ", " + std::to_string(depth) +
                            "): depth exceeds configured maximum " + std::to_string(max_carry_depth(p)));
    auto table = std::shared_ptr<CarryTable>(new CarryTable());
    table->p_ = p;
    // powered[k] holds w_k^(p^(n-k)) for the level n being built.
    std::vector<Poly> powered;
    Integer pn = 1;
    for (unsigned n = 0; n <= depth; ++n) {
        Poly w;
        if (n == 0) {
            w = {Integer(1), Integer(1)};
        } else {
            for (auto& q : powered) q = poly_pow_p(q, p);
            pn *= p;
            const std::size_t deg = static_cast<std::size_t>(pn);
            w.assign(deg + 1, Integer(0));
            w[0] = 1;
            w[deg] += 1;
            Integer pk = 1;
            for (std::size_t k = 0; k < powered.size(); ++k) {
                for (std::size_t i = 0; i <= deg; ++i) w[i] -= pk * powered[k][i];
                pk *= p;
            }
            for (std::size_t i = 0; i <= deg; ++i) {
                Integer q, r;
                boost::multiprecision::divide_qr(w[i], pn, q, r);
                if (r != 0)
                    throw InternalError("carry recursion: coefficient of a^" + std::to_string(i) +
                                        " in level " + std::to_string(n) + " not divisible by p^n");
                w[i] = q;
            }
        }
        std::vector<CarryTable::DigitTerm> digit;
        const std::uint64_t deg = w.size() - 1;
        for (std::uint64_t i = 0; i <= deg; ++i) {
            Integer r = w[i] % p;
            if (r < 0) r += p;
            if (r != 0) digit.push_back({i, deg - i, r.convert_to<unsigned>()});
        }
        powered.push_back(w);
        table->integral_.push_back(std::move(w));
        table->digit_.push_back(std::move(digit));
    }
    return table;
}

std::shared_ptr<const CarryTable> carry_table(unsigned p, unsigned depth) {
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const CarryTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(p);
    if (it != cache.end() && it->second->depth() >= depth) return it->second;
    auto table = compute_carry_table(p, depth);
    cache[p] = table;
    return table;
}

bool check_homogeneity(const CarryTable& table) {
    std::uint64_t den = 1;
    for (unsigned n = 0; n <= table.depth(); ++n) {
        if (n > 0) den *= table.p();
        for (const auto& t : table.digit(n)) {
            if (t.coeff % table.p() == 0) return false;
            if (t.a_exp + t.b_exp != den) return false;
            if (n > 0 && (t.a_exp == 0 || t.b_exp == 0)) return false;
        }
    }
    return true;
}

}  // namespace wittnp
