#include <doctest.h>

#include <cmath>

#include "tessella/space.hpp"

using namespace tessella;

namespace {

Scalar ex(long long n, long long d = 1) { return Scalar::exact_rat(Rational(n, d)); }
Scalar ir5(long long n, long long d) { return Scalar::exact(Rational(0), Rational(n, d), 5); }

// incenter of a triangular region, in doubles
void incenter(const Polygon& tri, double& x, double& y) {
  REQUIRE(tri.size() == 3);
  double ax = tri[0].dx(), ay = tri[0].dy();
  double bx = tri[1].dx(), by = tri[1].dy();
  double cx = tri[2].dx(), cy = tri[2].dy();
  double a = std::hypot(bx - cx, by - cy);
  double b = std::hypot(ax - cx, ay - cy);
  double c = std::hypot(ax - bx, ay - by);
  x = (a * ax + b * bx + c * cx) / (a + b + c);
  y = (a * ay + b * by + c * cy) / (a + b + c);
}

CenteredPatch pinwheel_centered(const InflationRule& rule, int r) {
  Patch p = inflate_patch(rule, seed_patch(rule, 0), r);
  double x, y;
  incenter(covered_region(rule, p), x, y);
  return centered_patch(rule, std::move(p), x, y);
}

}  // namespace

TEST_CASE("identical patches sit at the metric floor") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CenteredPatch cp = pinwheel_centered(pin, 4);
  CHECK(cp.radius > 5.0);
  MetricReport rep = patch_distance(pin, cp, cp);
  CHECK(rep.floor_hit);
  CHECK(rep.epsilon == doctest::Approx(std::max(1e-3, 1.0 / cp.radius)));
}

TEST_CASE("translation distances are monotone and land near delta") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CenteredPatch base = pinwheel_centered(pin, 5);
  CHECK(base.radius > 15.0);
  double floor = std::max(1e-3, 1.0 / base.radius);
  double prev = 2.0;
  for (auto [num, den] : {std::pair<long long, long long>{1, 5},
                          {1, 10},
                          {1, 20},
                          {1, 100}}) {
    double delta = static_cast<double>(num) / static_cast<double>(den);
    CenteredPatch moved = translated_centered_patch(pin, base, ex(num, den), ex(0));
    MetricReport rep = patch_distance(pin, base, moved);
    CHECK(rep.epsilon <= prev + 1e-9);
    prev = rep.epsilon;
    if (delta > floor) {
      // the translated copy needs matching tolerance about delta
      CHECK(rep.epsilon == doctest::Approx(delta).epsilon(0.05));
    } else {
      CHECK(rep.floor_hit);
    }
  }
}

TEST_CASE("metric is symmetric by construction") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CenteredPatch base = pinwheel_centered(pin, 4);
  CenteredPatch moved = translated_centered_patch(pin, base, ex(1, 10), ex(1, 20));
  MetricReport ab = patch_distance(pin, base, moved);
  MetricReport ba = patch_distance(pin, moved, base);
  CHECK(ab.epsilon == ba.epsilon);
}

TEST_CASE("a rotated central tile pushes the distance above its hausdorff gap") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CenteredPatch base = pinwheel_centered(pin, 4);

  // replace the tile covering the origin with a copy rotated about a vertex
  Patch modified = base.patch;
  size_t idx = modified.tiles.size();
  Point origin = Point::approx(base.origin_x, base.origin_y);
  for (size_t i = 0; i < modified.tiles.size(); ++i) {
    Polygon poly = tile_polygon(pin, modified.tiles[i]);
    BBox bb = poly.bbox();
    if (base.origin_x >= bb.minx && base.origin_x <= bb.maxx && base.origin_y >= bb.miny &&
        base.origin_y <= bb.maxy) {
      idx = i;
      break;
    }
  }
  REQUIRE(idx < modified.tiles.size());
  Polygon before = tile_polygon(pin, modified.tiles[idx]);
  // rotate by the pinwheel angle about the tile's first vertex
  Point pivot = before.vertices()[0];
  UnitRotation rot(ir5(2, 5), ir5(1, 5), false);
  Isometry about_pivot{rot, pivot - rot.apply(pivot)};
  Isometry new_pose = about_pivot.compose(modified.tiles[idx].pose());
  modified.tiles[idx].rot = new_pose.rot;
  modified.tiles[idx].trans = new_pose.trans;
  canonical_sort(modified.tiles);
  Polygon after = before.transformed(about_pivot);

  // oracle: the replaced tile must match something in the original patch
  double oracle = 1e300;
  for (const Tile& t : base.patch.tiles) {
    oracle = std::min(oracle, hausdorff_distance(after, tile_polygon(pin, t)));
  }
  CHECK(oracle > 0.05);

  CenteredPatch mod;
  mod.patch = std::move(modified);
  mod.origin_x = base.origin_x;
  mod.origin_y = base.origin_y;
  mod.radius = base.radius;  // same covered region up to the swap
  MetricReport rep = patch_distance(pin, base, mod);
  CHECK(rep.epsilon >= oracle - 1e-5);
  (void)origin;
}

TEST_CASE("insufficient coverage is reported") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CenteredPatch tiny = pinwheel_centered(pin, 1);  // covers less than a unit disk
  CHECK(tiny.radius < 1.0);
  CHECK_THROWS_AS(patch_distance(pin, tiny, tiny), Error);
  CenteredPatch ok = pinwheel_centered(pin, 4);
  CHECK_THROWS_AS(patch_distance_at(pin, ok, ok, 1.0 / (ok.radius * 2)), Error);
}

TEST_CASE("congruent subpatch: single tiles always embed") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch query = seed_patch(pin, 0);
  CongruenceResult res = congruent_subpatch(pin, query, 1);
  CHECK(res.found);
  // the witness really maps the query into F^r: re-verify through regions
  Patch target = inflate_patch(pin, seed_patch(pin, res.target_seed), 1);
  Polygon mapped = tile_polygon(pin, query.tiles[0]).transformed(res.witness);
  bool hit = false;
  for (const Tile& t : target.tiles) {
    if (!hit && polygon_contains(tile_polygon(pin, t), mapped) &&
        polygon_contains(mapped, tile_polygon(pin, t)))
      hit = true;
  }
  CHECK(hit);
}

TEST_CASE("congruent subpatch: F^1(P) embeds into F^2 patches") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch query = inflate_patch(pin, seed_patch(pin, 0), 1);
  CongruenceResult res = congruent_subpatch(pin, query, 2);
  CHECK(res.found);

  InflationRule square = builtin_rule(Builtin::square);
  Patch squery = inflate_patch(square, seed_patch(square, 0), 1);
  CHECK(congruent_subpatch(square, squery, 2).found);
}

TEST_CASE("self-membership holds whenever hypothesis (a) supplies the seed") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  for (int j = 1; j <= 2; ++j) {
    for (int r = j + 1; r <= 3; ++r) {
      Patch query = inflate_patch(pin, seed_patch(pin, 1), j);
      CHECK(congruent_subpatch(pin, query, r).found);
    }
  }
}

TEST_CASE("overlapping queries cannot embed") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch query = seed_patch(pin, 0);
  Tile shifted = query.tiles[0];
  shifted.trans = Point::exact(Rational(1, 3), Rational(1, 3));
  query.tiles.push_back(shifted);
  CongruenceResult res = congruent_subpatch(pin, query, 2);
  CHECK(!res.found);
}

TEST_CASE("adjacency census basics") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  CHECK(adjacency_census(pin, seed_patch(pin, 0)).empty());

  InflationRule square = builtin_rule(Builtin::square);
  auto c2 = adjacency_census(square, inflate_patch(square, seed_patch(square, 0), 2));
  auto c4 = adjacency_census(square, inflate_patch(square, seed_patch(square, 0), 4));
  CHECK(!c2.empty());
  CHECK(c2.size() == c4.size());  // grid adjacency saturates immediately
  CHECK(c2.size() == 2);          // one horizontal and one vertical contact type
  long long total = 0;
  for (const auto& cfg : c2) total += cfg.count;
  // a 4x4 grid has 24 interior edges
  CHECK(total == 24);
}

TEST_CASE("pinwheel census saturates: r = 5 and r = 6 agree") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  auto c5 = adjacency_census(pin, inflate_patch(pin, seed_patch(pin, 0), 5));
  auto c6 = adjacency_census(pin, inflate_patch(pin, seed_patch(pin, 0), 6));
  CHECK(c5.size() == c6.size());
  // saturation value measured, not asserted in advance; both runs landed on 13
  CHECK(c5.size() == 13);
}

TEST_CASE("census is invariant under congruences of the whole patch") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch p = inflate_patch(pin, seed_patch(pin, 0), 3);
  auto base = adjacency_census(pin, p);
  UnitRotation rot(ir5(-1, 5), ir5(2, 5), false);
  Isometry g{rot, Point::exact(Rational(7, 3), Rational(-2, 9))};
  auto moved = adjacency_census(pin, transform_patch(p, g));
  REQUIRE(base.size() == moved.size());
  for (size_t i = 0; i < base.size(); ++i) {
    CHECK(base[i].type_a == moved[i].type_a);
    CHECK(base[i].type_b == moved[i].type_b);
    CHECK(base[i].count == moved[i].count);
    CHECK(base[i].relative == moved[i].relative);
  }
}
