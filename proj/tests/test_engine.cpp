#include <doctest.h>

#include <cmath>

#include "tessella/engine.hpp"

using namespace tessella;

namespace {

Scalar ex(long long n, long long d = 1) { return Scalar::exact_rat(Rational(n, d)); }

Scalar patch_total_area(const InflationRule& rule, const Patch& p) {
  Scalar total = Scalar::zero_like(rule.lambda());
  for (const Tile& t : p.tiles) total = total + tile_polygon(rule, t).area();
  return total;
}

}  // namespace

TEST_CASE("inflating one tile produces the rule's child count") {
  InflationRule square = builtin_rule(Builtin::square);
  Patch seed = seed_patch(square, 0);
  CHECK(inflate_tile(square, seed.tiles[0]).size() == 4);

  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch pseed = seed_patch(pin, 0);
  auto kids = inflate_tile(pin, pseed.tiles[0]);
  CHECK(kids.size() == 5);

  // children exactly tile the inflated parent: areas add to (1/lambda^2) * 1
  Scalar total = Scalar::zero_like(pin.lambda());
  for (const Tile& t : kids) total = total + tile_polygon(pin, t).area();
  CHECK(total == ex(5));

  CHECK_THROWS_AS(inflate_tile(pin, Tile{7, UnitRotation(), Point::exact(0, 0)}), Error);
}

TEST_CASE("iterated inflation counts follow the substitution") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch p2 = inflate_patch(pin, seed_patch(pin, 0), 2);
  CHECK(p2.tiles.size() == 25);
  CHECK(p2.generation == 2);
  CHECK(p2.scale_exp == 2);

  InflationRule square = builtin_rule(Builtin::square);
  Patch s3 = inflate_patch(square, seed_patch(square, 0), 3);
  CHECK(s3.tiles.size() == 64);

  // r = 0 echoes the seed
  Patch s0 = inflate_patch(square, seed_patch(square, 0), 0);
  CHECK(s0.tiles.size() == 1);

  // r = 1 on a single tile agrees with inflate_tile up to canonical order
  Patch p1 = inflate_patch(pin, seed_patch(pin, 0), 1);
  auto direct = inflate_tile(pin, seed_patch(pin, 0).tiles[0]);
  canonical_sort(direct);
  REQUIRE(p1.tiles.size() == direct.size());
  for (size_t i = 0; i < direct.size(); ++i) {
    CHECK(p1.tiles[i].type == direct[i].type);
    CHECK(p1.tiles[i].rot == direct[i].rot);
    CHECK(p1.tiles[i].trans == direct[i].trans);
  }
}

TEST_CASE("exact area conservation through the generations") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  for (int r : {1, 2, 3, 4}) {
    Patch p = inflate_patch(pin, seed_patch(pin, 0), r);
    // (1/lambda^2)^r with lambda^-2 = 5
    CHECK(patch_total_area(pin, p) == ex(static_cast<long long>(std::pow(5, r))));
  }
}

TEST_CASE("pinwheel generations are pairwise interior-disjoint (exhaustive r <= 3)") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch p = inflate_patch(pin, seed_patch(pin, 0), 3);
  REQUIRE(p.tiles.size() == 125);
  std::vector<Polygon> polys;
  polys.reserve(p.tiles.size());
  for (const Tile& t : p.tiles) polys.push_back(tile_polygon(pin, t));
  for (size_t i = 0; i < polys.size(); ++i) {
    for (size_t j = i + 1; j < polys.size(); ++j) {
      auto ov = interiors_overlap(polys[i], polys[j]);
      CHECK(!ov.overlapping);
    }
  }
}

TEST_CASE("tile cap rejects oversized requests with the projected count") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  EngineOptions opts;
  opts.cap = 100;
  try {
    inflate_patch(pin, seed_patch(pin, 0), 4, opts);
    FAIL("expected PatchTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::patch_too_large);
    CHECK(std::string(e.what()).find("625") != std::string::npos);
  }
}

TEST_CASE("parallel inflation is deterministic across worker counts") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  EngineOptions one;
  one.threads = 1;
  EngineOptions many;
  many.threads = 4;
  Patch a = inflate_patch(pin, seed_patch(pin, 0), 6, one);
  Patch b = inflate_patch(pin, seed_patch(pin, 0), 6, many);
  REQUIRE(a.tiles.size() == b.tiles.size());
  for (size_t i = 0; i < a.tiles.size(); ++i) {
    CHECK(a.tiles[i].type == b.tiles[i].type);
    CHECK(a.tiles[i].rot == b.tiles[i].rot);
    CHECK(a.tiles[i].trans == b.tiles[i].trans);
  }
}

TEST_CASE("patch files round trip exactly") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch p = inflate_patch(pin, seed_patch(pin, 0), 3);
  std::string text = patch_to_json(pin, p);
  Patch q = patch_from_json(pin, text);
  REQUIRE(q.tiles.size() == p.tiles.size());
  CHECK(q.generation == p.generation);
  CHECK(q.scale_exp == p.scale_exp);
  for (size_t i = 0; i < p.tiles.size(); ++i) {
    CHECK(q.tiles[i].type == p.tiles[i].type);
    CHECK(q.tiles[i].rot == p.tiles[i].rot);
    CHECK(q.tiles[i].trans == p.tiles[i].trans);
  }
}

TEST_CASE("boundary ratio: unit square oracles") {
  Polygon sq({Point::exact(0, 0), Point::exact(1, 0), Point::exact(1, 1), Point::exact(0, 1)});

  // t = 2: every point of a 2x2 square is within 1 of the boundary
  auto r2 = boundary_ratio(sq, Rational(2));
  CHECK(r2.exact);
  CHECK(r2.exact_ratio == ex(1));

  // t = 4: inset square has side 2, ratio (16 - 4)/16 = 3/4 exactly
  auto r4 = boundary_ratio(sq, Rational(4));
  CHECK(r4.exact);
  CHECK(r4.exact_ratio == ex(3, 4));

  // t = 100: first-order 4/t - 4/t^2
  auto r100 = boundary_ratio(sq, Rational(100));
  CHECK(std::abs(r100.ratio - (4.0 / 100 - 4.0 / 10000)) < 1e-3);

  // monotone non-increasing along doubling t
  double prev = 2.0;
  for (long long t : {2, 4, 8, 16, 32}) {
    auto rep = boundary_ratio(sq, Rational(t));
    CHECK(rep.ratio <= prev + 1e-15);
    prev = rep.ratio;
  }
}

TEST_CASE("boundary ratio decays like 1/t on the builtin prototiles") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  InflationRule square = builtin_rule(Builtin::square);
  for (const Polygon* shape : {&pin.prototile(0).shape, &square.prototile(0).shape}) {
    for (long long t : {10, 16}) {
      auto a = boundary_ratio(*shape, Rational(t));
      auto b = boundary_ratio(*shape, Rational(2 * t));
      CHECK(a.exact);  // triangle edge lengths 1, 2, sqrt5 all live in the field
      CHECK(b.ratio <= 0.6 * a.ratio);
    }
  }
}

TEST_CASE("boundary ratio falls back to seeded monte carlo for non-convex shapes") {
  // L-shaped hexagon
  Polygon ell({Point::exact(0, 0), Point::exact(2, 0), Point::exact(2, 1), Point::exact(1, 1),
               Point::exact(1, 2), Point::exact(0, 2)});
  CHECK(!ell.is_convex());
  auto rep = boundary_ratio(ell, Rational(6));
  CHECK(rep.method == "monte-carlo");
  CHECK(!rep.exact);
  CHECK(rep.ratio > 0.0);
  CHECK(rep.ratio <= 1.0);
  CHECK(rep.std_error > 0.0);
  CHECK(rep.mc_seed != 0);
  // analytic check: area within 1 of the boundary of the 6x-scaled L
  // total area 3*36 = 108; the deep interior is two 4x10 rectangles sharing
  // a 4x4 corner: inset area = 2*40 - 16 = 64; ratio = 44/108
  CHECK(std::abs(rep.ratio - 44.0 / 108.0) < 5 * rep.std_error + 0.01);
}

TEST_CASE("transform patch preserves structure") {
  InflationRule pin = builtin_rule(Builtin::pinwheel);
  Patch p = inflate_patch(pin, seed_patch(pin, 0), 2);
  Isometry g{UnitRotation(ex(0), ex(1), false), Point::exact(3, 4)};
  Patch q = transform_patch(p, g);
  CHECK(q.tiles.size() == p.tiles.size());
  CHECK(patch_total_area(pin, q) == patch_total_area(pin, p));
}
