// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "wittnp/witt.hpp"

namespace wittnp {

/// Sparse integer combination of monomials t^q, used for ghost components.
using IntSeries = std::vector<std::pair<Rational, Integer>>;

enum class GhostOp { Add, Mul };

/// Ghost components phi_0..phi_L of f, computed in the characteristic-zero lift
/// (digit coefficients lifted to 0..p-1) modulo t^(N p^L).
std::vector<IntSeries> ghost_components(const WittElement& f);

/// f op g computed independently of the carry polynomials: lift to the
/// integer monomial ring, combine ghost components, and solve back for Witt
/// coordinates with exact divisions by p^n.  InternalError on an inexact division.
WittElement ghost_oracle(const WittElement& f, const WittElement& g, GhostOp op);

std::string to_string(const IntSeries& s);

}  // namespace wittnp
