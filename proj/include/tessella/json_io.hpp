#pragma once

#include <json.hpp>

#include "tessella/geom.hpp"

namespace tessella::jsonio {

using ojson = nlohmann::ordered_json;

// Exact scalars travel as "num/den" strings or {rat, irr} objects; approx
// scalars as plain JSON numbers. Exact mode rejects numbers by throwing
// FloatLiteral so callers can decide between erroring and demoting.
struct FloatLiteral {};

ojson scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const ojson& j, int d, Mode mode);

ojson point_to_json(const Point& p);
Point point_from_json(const ojson& j, int d, Mode mode);

// Rotations travel factored as g / sqrt(L)^k with minimal k when one exists.
ojson rotation_to_json(const UnitRotation& u, const Scalar& base, int radicand);
UnitRotation rotation_from_json(const ojson& j, int d, Mode mode, const Scalar& base,
                                bool reflect);

void locate_byte(const std::string& text, size_t byte, int& line, int& col);

}  // namespace tessella::jsonio
