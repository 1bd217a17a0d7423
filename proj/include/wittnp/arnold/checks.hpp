// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wittnp/arnold/certificates.hpp"
#include "wittnp/arnold/sequences.hpp"
#include "wittnp/polygon.hpp"
#include "wittnp/witt.hpp"

namespace wittnp::arnold {

enum class VerdictKind { Verified, RefutedCertified, Unknown };

using wittnp::to_string;
std::string to_string(VerdictKind k);

/// Outcome of a check.  The trace lists the exact inequalities that were
/// evaluated, so that a verdict can be re-checked by hand.
struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<unsigned> witness;
    std::string reason;
    std::vector<std::string> trace;

    bool verified() const noexcept { return kind == VerdictKind::Verified; }
    bool refuted() const noexcept { return kind == VerdictKind::RefutedCertified; }
    bool unknown() const noexcept { return kind == VerdictKind::Unknown; }
};

struct CheckConfig {
    std::uint64_t ceiling = kDefaultCeiling;
    /// Largest exponent m tried by witness searches.
    unsigned max_witness = 12;
};

/// N(h_{n+1}^m)(t) < N(h_n)(t) at every integer of (2m^2, 2m^2 + window], plus
/// the exponent inequality m < p^(k^(2^n) - (km+r)^(2^(n-1))) for k > 2m.
/// `swapped` compares in the opposite direction (a deliberate failure).
Verdict slope_gap_check(unsigned p, unsigned n, unsigned m, long window = 20, const CheckConfig& cfg = {},
                        bool swapped = false);

/// N(h) <= N(fh) on the region where both polygons are certified.
Verdict mult_raises_check(const WittElement& h, const WittElement& f);

/// Node inequality N(g+f)(n) <= N(g)(n) at certified nodes n >= t0 of N(g),
/// after checking that N(g) strictly decreases and N(g) < N(f) on [t0, window].
Verdict sum_node_check(const WittElement& g, const WittElement& f, long t0);

/// Smallest integer t0 such that N(g) < N(f) on [t0, window] is certified.
std::optional<long> domination_start(const NewtonPolygon& G, const NewtonPolygon& F);

struct FrakP {
    Tri verdict = Tri::Unknown;
    /// Certified lower bound for lim N when the verdict is true.
    std::optional<Rational> bound;
};

/// Membership of an element with polygon P in the ideal generated by all
/// [t^(1/p^k)]: true iff lim N(P) > 0.
FrakP in_frak_p(const NewtonPolygon& P);

/// [t^(1/p^k)] * u, and its polygon with the divisibility floor p^-k.
WittElement teich_multiple(unsigned k, const WittElement& u);
NewtonPolygon teich_multiple_np(unsigned k, const WittElement& product);

/// Element denoted by a certificate (absent for base certificates).
std::optional<WittElement> cert_element(const SCert& c, const PrecisionCtx& ctx, const CheckConfig& cfg = {});
/// Newton polygon of the certified element.
std::optional<NewtonPolygon> cert_polygon(const SCert& c, const PrecisionCtx& ctx, const CheckConfig& cfg = {});

/// Decides 0 < N(g) <= N(h_n^m) for some m >= 1, returning the witness m.
Verdict s_membership(const SCert& c, unsigned n, const PrecisionCtx& ctx, const CheckConfig& cfg = {});

}  // namespace wittnp::arnold
