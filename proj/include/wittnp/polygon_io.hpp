// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "wittnp/polygon.hpp"

namespace wittnp {

/// {"kind", "start", "nodes": [[0,"1"],[3,">=4"]], "slopes", "tail", "certified_to", ...}
/// with every rational as an exact string.
nlohmann::json polygon_to_json(const NewtonPolygon& P);

/// Inverse of polygon_to_json for the fields that determine a polygon:
/// finite (nodes + tail), windowed (nodes + optional tail_floor), closed
/// (tail {"p","n","m"}).  UsageError on malformed input.
NewtonPolygon polygon_from_json(const nlohmann::json& j);

nlohmann::json legendre_to_json(const LegendreFn& F);

/// Presentation-only SVG: axes, upper hull, lower bound (dashed), node
/// markers and a shaded uncertified region.
std::string polygon_svg(const NewtonPolygon& P, const std::string& title = "");

}  // namespace wittnp
