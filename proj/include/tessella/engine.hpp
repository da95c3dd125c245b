#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tessella/bigint.hpp"
#include "tessella/rule.hpp"

namespace tessella {

// A tile in the engine's expanding frame: pose is a unit-scale congruence; the
// owning patch's scale_exponent records how many sigma factors the frame
// carries relative to the seed prototile's defining coordinates.
struct Tile {
  int type;
  UnitRotation rot;
  Point trans;

  Isometry pose() const { return {rot, trans}; }
};

struct Patch {
  std::string rule_hash;
  int seed_type = 0;
  int generation = 0;   // r in F^r(P)
  int scale_exp = 0;    // coordinates are sigma^scale_exp times true scale
  std::vector<Tile> tiles;

  size_t size() const { return tiles.size(); }
};

struct EngineOptions {
  long long cap = 5'000'000;
  int threads = 0;  // 0 = hardware default
};

long long default_tile_cap();  // honors TESSELLA_CAP

Patch seed_patch(const InflationRule& rule, int seed_type);
std::vector<Tile> inflate_tile(const InflationRule& rule, const Tile& tile);
Patch inflate_patch(const InflationRule& rule, const Patch& patch, int r,
                    const EngineOptions& opts = {});
void canonical_sort(std::vector<Tile>& tiles);
bool tile_less(const Tile& a, const Tile& b);

Polygon tile_polygon(const InflationRule& rule, const Tile& tile);
Patch transform_patch(const Patch& patch, const Isometry& g);

// Tile count of F^r applied to the patch, computed from the substitution
// counts without enumerating.
BigInt projected_tile_count(const InflationRule& rule, const Patch& patch, int r);

struct BoundaryRatioReport {
  double t = 0;
  double ratio = 0;
  bool exact = false;
  Scalar exact_ratio;       // meaningful when exact
  std::string method;       // "convex-offset" or "monte-carlo"
  double std_error = 0;     // monte-carlo only
  uint64_t mc_seed = 0;     // monte-carlo only
};

// Fraction of area of t*P lying within distance 1 of the boundary of t*P.
BoundaryRatioReport boundary_ratio(const Polygon& p, const Rational& t);
BoundaryRatioReport boundary_ratio(const Polygon& p, double t);

std::string patch_to_json(const InflationRule& rule, const Patch& patch);
Patch patch_from_json(const InflationRule& rule, const std::string& text);

}  // namespace tessella
