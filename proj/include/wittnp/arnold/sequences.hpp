// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "wittnp/polygon.hpp"
#include "wittnp/witt.hpp"

namespace wittnp::arnold {

inline constexpr std::uint64_t kDefaultCeiling = 1'000'000;

/// v(a_{n,i}) = p^(-i^(2^(n-1))); ResourceError past the exponent ceiling.
Rational val_a(unsigned p, unsigned n, std::uint64_t i, std::uint64_t ceiling = kDefaultCeiling);

/// Exponent i^(2^(n-1)) as a big integer (no ceiling).
Integer index_exponent(unsigned n, std::uint64_t i);

/// Truncation of h_n = sum [a_{n,i}] p^i: exact digits, unknown tail.
WittElement h_element(unsigned n, const PrecisionCtx& ctx, std::uint64_t ceiling = kDefaultCeiling);

/// N(h_n^m) as a closed-form polygon.
NewtonPolygon h_power_np(unsigned p, unsigned n, unsigned m, std::uint64_t ceiling = kDefaultCeiling);

}  // namespace wittnp::arnold
