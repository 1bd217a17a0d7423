// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#include "wittnp/arnold/sequences.hpp"

#include "wittnp/errors.hpp"

namespace wittnp::arnold {

namespace {

void check_level(unsigned n) {
    if (n < 1) throw UsageError("level n must be at least 1");
}

}  // namespace

Integer index_exponent(unsigned n, std::uint64_t i) {
    check_level(n);
    Integer e = i;
    for (unsigned j = 1; j < n; ++j) e *= e;
    return e;
}

Rational val_a(unsigned p, unsigned n, std::uint64_t i, std::uint64_t ceiling) {
    check_level(n);
    ClosedForm cf{p, n, 1, ceiling};
    return cf.node(i);
}

WittElement h_element(unsigned n, const PrecisionCtx& ctx, std::uint64_t ceiling) {
    ctx.validate();
    std::vector<Rational> vals;
    for (unsigned i = 0; i <= ctx.digits; ++i) vals.push_back(val_a(ctx.p, n, i, ceiling));
    std::vector<MonomialSeries> digits;
    for (unsigned i = 0; i <= ctx.digits; ++i)
        digits.push_back(MonomialSeries::monomial(ctx.p, ctx.working_cap(i), vals[i]));
    return WittElement::exact_prefix(ctx, digits);
}

NewtonPolygon h_power_np(unsigned p, unsigned n, unsigned m, std::uint64_t ceiling) {
    check_level(n);
    if (m < 1) throw UsageError("exponent m must be at least 1");
    if (!is_supported_prime(p)) throw UsageError("unsupported prime " + std::to_string(p));
    return NewtonPolygon::closed_form(ClosedForm{p, n, m, ceiling});
}

}  // namespace wittnp::arnold
