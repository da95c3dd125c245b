#pragma once

#include <string>

#include "tessella/engine.hpp"

namespace tessella {

enum class ColorBy { type, angle_hue, handedness };

struct RenderSpec {
  ColorBy color_by = ColorBy::type;
  double stroke_width = 0.0;  // 0 picks a width from the viewport size
  int max_label_tiles = 0;    // label tiles with their type when the patch is small
};

// Deterministic SVG: one path element per tile, viewport from the bounding box
// of all tile vertices, scale exponent recorded in a metadata comment.
std::string render_svg(const InflationRule& rule, const Patch& patch, const RenderSpec& spec);

}  // namespace tessella
