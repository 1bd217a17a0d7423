// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wittnp/perfring.hpp"
#include "wittnp/rational.hpp"

namespace wittnp {

/// Witt addition polynomials for two Teichmuller inputs [a] + [b].
///
/// Level n is kept twice: the integral polynomial w_n (homogeneous of degree
/// p^n, stored as coefficients of a^alpha b^(p^n - alpha)), and the digit
/// polynomial W_n = (w_n mod p)^(1/p^n), whose monomials a^(alpha/p^n) b^(beta/p^n)
/// are stored by their numerators alpha, beta.
class CarryTable {
public:
    struct DigitTerm {
        std::uint64_t a_exp;
        std::uint64_t b_exp;
        unsigned coeff;
        friend bool operator==(const DigitTerm&, const DigitTerm&) = default;
    };

    /// Builds a table from explicit digit polynomials (no consistency checks);
    /// `digit_polys[n]` uses denominator p^n.
    CarryTable(unsigned p, std::vector<std::vector<DigitTerm>> digit_polys);

    unsigned p() const noexcept { return p_; }
    unsigned depth() const noexcept { return static_cast<unsigned>(digit_.size()) - 1; }

    /// Coefficients of w_n indexed by the a-exponent; empty for hand-built tables.
    const std::vector<Integer>& integral(unsigned n) const;
    const std::vector<DigitTerm>& digit(unsigned n) const;

    /// W_n(x, y) with every product truncated below `cap`.
    MonomialSeries evaluate(unsigned n, const MonomialSeries& x, const MonomialSeries& y,
                            const Rational& cap) const;

    /// "W_1 = a^(1/2) b^(1/2)" style rendering.
    std::string digit_str(unsigned n) const;
    std::string integral_str(unsigned n) const;

private:
    friend std::shared_ptr<const CarryTable> compute_carry_table(unsigned, unsigned);
    CarryTable() = default;

    unsigned p_ = 2;
    std::vector<std::vector<Integer>> integral_;
    std::vector<std::vector<DigitTerm>> digit_;
};

/// Largest depth carry_table accepts for p: 8 for p=2, 5 for p=3, 4 for p=5.
unsigned max_carry_depth(unsigned p);

/// Computes the table from the ghost recursion.  Throws ResourceError past
/// max_carry_depth and InternalError if a division by p^n is inexact.
std::shared_ptr<const CarryTable> compute_carry_table(unsigned p, unsigned depth);

/// Memoized compute_carry_table; safe to call from several threads.  A request
/// for a smaller depth is served from a deeper cached table when present.
std::shared_ptr<const CarryTable> carry_table(unsigned p, unsigned depth);

/// Every W_n has monomials of total degree 1 and, for n >= 1, no pure a or pure b terms.
bool check_homogeneity(const CarryTable& table);

}  // namespace wittnp
