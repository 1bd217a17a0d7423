// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "wittnp/polygon.hpp"
#include "wittnp/witt.hpp"

namespace wittnp::arnold {

struct SCert;
using CertPtr = std::shared_ptr<const SCert>;

/// Membership certificate for the sets S_n:
///   base(n, P, m)        a polygon P with proposed witness m
///   H(n)                 h_n itself
///   prod(c1, c2)         product of two members
///   plusmult(c, f, n)    g + f*h_n for g certified by c at level n+1
///   weaken(c)            a member of S_{k+1} viewed in S_k
struct SCert {
    enum class Kind { Base, H, Prod, PlusMult, Weaken };

    Kind kind = Kind::H;
    unsigned n = 1;
    unsigned m = 1;
    std::optional<NewtonPolygon> polygon;
    std::optional<WittElement> f;
    CertPtr left, right;

    static CertPtr base(unsigned n, NewtonPolygon P, unsigned m);
    static CertPtr h(unsigned n);
    static CertPtr prod(CertPtr a, CertPtr b);
    static CertPtr plusmult(CertPtr c, WittElement f, unsigned n);
    static CertPtr weaken(CertPtr c);

    /// Level the certificate speaks about without weakening.
    unsigned natural_level() const;
};

/// Grammar: H(n) | prod(c, c) | plusmult(c, witt, n) | weaken(c) | base(n, polygon-json, m).
/// Elements inside plusmult use `ctx`.
CertPtr parse_cert(std::string_view text, const PrecisionCtx& ctx);
std::string format_cert(const SCert& c);

}  // namespace wittnp::arnold
