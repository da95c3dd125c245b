#include "tessella/svg.hpp"

#include <cmath>
#include <cstdio>

namespace tessella {

namespace {

std::string fmt(double v) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // normalize -0
  snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string hsv_to_hex(double h, double s, double v) {
  h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
  double c = v * s;
  double x = c * (1 - std::abs(std::fmod(h / 60.0, 2.0) - 1));
  double m = v - c;
  double r = 0, g = 0, b = 0;
  if (h < 60) {
    r = c; g = x;
  } else if (h < 120) {
    r = x; g = c;
  } else if (h < 180) {
    g = c; b = x;
  } else if (h < 240) {
    g = x; b = c;
  } else if (h < 300) {
    r = x; b = c;
  } else {
    r = c; b = x;
  }
  char buf[8];
  snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
           static_cast<int>(std::lround((g + m) * 255)),
           static_cast<int>(std::lround((b + m) * 255)));
  return buf;
}

const char* kTypePalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                              "#66ccee", "#aa3377", "#bbbbbb", "#000000"};

}  // namespace

std::string render_svg(const InflationRule& rule, const Patch& patch, const RenderSpec& spec) {
  if (patch.tiles.empty()) fail(Errc::invalid_argument, "cannot render an empty patch");
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  std::vector<Polygon> polys;
  polys.reserve(patch.tiles.size());
  for (const Tile& t : patch.tiles) {
    polys.push_back(tile_polygon(rule, t));
    BBox b = polys.back().bbox();
    minx = std::min(minx, b.minx);
    miny = std::min(miny, b.miny);
    maxx = std::max(maxx, b.maxx);
    maxy = std::max(maxy, b.maxy);
  }
  double w = maxx - minx, h = maxy - miny;
  double margin = 0.02 * std::max(w, h);
  double stroke = spec.stroke_width > 0 ? spec.stroke_width : 0.004 * std::max(w, h);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  out += fmt(minx - margin) + " " + fmt(-(maxy + margin)) + " " + fmt(w + 2 * margin) + " " +
         fmt(h + 2 * margin) + "\">\n";
  out += "<!-- tessella patch: rule " + patch.rule_hash +
         ", r = " + std::to_string(patch.generation) +
         ", scale_exponent = " + std::to_string(patch.scale_exp) + " -->\n";

  for (size_t i = 0; i < patch.tiles.size(); ++i) {
    const Tile& t = patch.tiles[i];
    std::string fill;
    switch (spec.color_by) {
      case ColorBy::type:
        fill = kTypePalette[static_cast<size_t>(t.type) % 8];
        break;
      case ColorBy::angle_hue: {
        double a = t.rot.angle();
        if (a < 0) a += 2 * M_PI;
        fill = hsv_to_hex(a * 180.0 / M_PI, 0.75, 0.92);
        break;
      }
      case ColorBy::handedness: {
        int mirror = rule.mirror_of(t.type);
        bool mirrored_type = mirror >= 0 && mirror < t.type;
        bool left = mirrored_type != t.rot.reflect();
        fill = left ? "#ee6677" : "#4477aa";
        break;
      }
    }
    out += "<path d=\"M";
    const auto& vs = polys[i].vertices();
    for (size_t k = 0; k < vs.size(); ++k) {
      if (k) out += " L";
      // svg y axis points down; flip to keep the plane orientation
      out += fmt(vs[k].dx()) + " " + fmt(-vs[k].dy());
    }
    out += " Z\" fill=\"" + fill + "\" stroke=\"#202020\" stroke-width=\"" + fmt(stroke) +
           "\" stroke-linejoin=\"round\"/>\n";
  }

  if (spec.max_label_tiles > 0 &&
      patch.tiles.size() <= static_cast<size_t>(spec.max_label_tiles)) {
    double fs = 0.3 * std::sqrt(w * h / static_cast<double>(patch.tiles.size()));
    for (size_t i = 0; i < patch.tiles.size(); ++i) {
      const auto& vs = polys[i].vertices();
      double cx = 0, cy = 0;
      for (const Point& v : vs) {
        cx += v.dx();
        cy += v.dy();
      }
      cx /= static_cast<double>(vs.size());
      cy /= static_cast<double>(vs.size());
      out += "<text x=\"" + fmt(cx) + "\" y=\"" + fmt(-cy) + "\" font-size=\"" + fmt(fs) +
             "\" text-anchor=\"middle\">" + std::to_string(patch.tiles[i].type) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tessella
