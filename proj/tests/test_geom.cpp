#include <doctest.h>

#include <cmath>
#include <random>

#include "tessella/geom.hpp"

using namespace tessella;

namespace {

Scalar ex(long long n, long long d = 1) { return Scalar::exact_rat(Rational(n, d)); }
Scalar ir5(long long n, long long d) { return Scalar::exact(Rational(0), Rational(n, d), 5); }

Polygon unit_square() {
  return Polygon({Point::exact(0, 0), Point::exact(1, 0), Point::exact(1, 1), Point::exact(0, 1)});
}

Polygon square_at(const Rational& x, const Rational& y, const Rational& side) {
  auto pt = [&](Rational px, Rational py) { return Point::exact(std::move(px), std::move(py)); };
  return Polygon({pt(x, y), pt(x + side, y), pt(x + side, y + side), pt(x, y + side)});
}

std::mt19937_64 rng(424242);

Isometry random_isometry() {
  // rotations from the exact pinwheel family composed a few times
  UnitRotation a(ir5(2, 5), ir5(1, 5), false);
  UnitRotation i(ex(0), ex(1), false);
  std::uniform_int_distribution<int> pick(0, 3);
  UnitRotation u = UnitRotation::identity(Mode::exact);
  for (int k = 0, n = pick(rng); k <= n; ++k) u = u.compose(pick(rng) % 2 ? a : i);
  if (pick(rng) == 0) u = UnitRotation(u.re(), u.im(), true);
  std::uniform_int_distribution<long long> t(-8, 8);
  return Isometry{u, Point::exact(Rational(t(rng), 3), Rational(t(rng), 5))};
}

Polygon random_triangle_approx() {
  std::uniform_real_distribution<double> c(-4, 4);
  for (;;) {
    Point a = Point::approx(c(rng), c(rng));
    Point b = Point::approx(c(rng), c(rng));
    Point p = Point::approx(c(rng), c(rng));
    double cross = (b.dx() - a.dx()) * (p.dy() - a.dy()) - (b.dy() - a.dy()) * (p.dx() - a.dx());
    if (std::abs(cross) < 0.5) continue;
    if (cross > 0) return Polygon({a, b, p});
    return Polygon({a, p, b});
  }
}

}  // namespace

TEST_CASE("isometry composition: identity, quarter turns, exact inverse") {
  Isometry id = Isometry::identity(Mode::exact);
  Isometry h{UnitRotation(ex(0), ex(1), false), Point::exact(3, -2)};
  CHECK(compose(id, h) == h);
  CHECK(compose(h, id) == h);

  UnitRotation quarter(ex(0), ex(1), false);
  UnitRotation half = quarter.compose(quarter);
  CHECK(half.re() == ex(-1));
  CHECK(half.im() == ex(0));

  // u = (2+i)/sqrt5: check |g|^2 = 5 exactly, then u . u^{-1} = 1
  Scalar g_re = ex(2), g_im = ex(1);
  CHECK(g_re * g_re + g_im * g_im == ex(5));
  UnitRotation u(ir5(2, 5), ir5(1, 5), false);
  CHECK(u.compose(u.inverse()).is_identity());

  Isometry g{u, Point::exact(Rational(1, 3), Rational(-2, 7))};
  CHECK(compose(g, g.inverse()) == Isometry::identity(Mode::exact));
  CHECK(compose(g.inverse(), g) == Isometry::identity(Mode::exact));
}

TEST_CASE("isometry group laws on randomized triples") {
  for (int i = 0; i < 100; ++i) {
    Isometry a = random_isometry(), b = random_isometry(), c = random_isometry();
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(a, a.inverse()) == Isometry::identity(Mode::exact));
    Point p = Point::exact(Rational(1, 7), Rational(2, 9));
    CHECK(compose(a, b).apply(p) == a.apply(b.apply(p)));
  }
}

TEST_CASE("polygon area oracles") {
  CHECK(unit_square().area() == ex(1));
  // shoelace on (0,0),(2,0),(2,1): 2*A = x0(y1-y2)+x1(y2-y0)+x2(y0-y1) = 0+2+0 = 2
  Polygon tri({Point::exact(0, 0), Point::exact(2, 0), Point::exact(2, 1)});
  CHECK(tri.area() == ex(1));
  // similarity scaling: area(tP) = t^2 area(P)
  for (long long t : {2, 3, 7}) {
    CHECK(tri.scaled(ex(t)).area() == ex(t * t));
  }
  CHECK_THROWS_AS(Polygon({Point::exact(0, 0), Point::exact(1, 0), Point::exact(2, 0)}), Error);
  CHECK_THROWS_AS(Polygon({Point::exact(0, 0), Point::exact(1, 1), Point::exact(1, 0)}), Error);
}

TEST_CASE("area is invariant under exact isometries") {
  Polygon tri({Point::exact(0, 0), Point::exact(2, 0), Point::exact(2, 1)});
  for (int i = 0; i < 50; ++i) {
    Isometry g = random_isometry();
    CHECK(tri.transformed(g).area() == tri.area());
    CHECK(unit_square().transformed(g).area() == ex(1));
  }
}

TEST_CASE("interior overlap oracles") {
  Polygon p = unit_square();
  auto self = interiors_overlap(p, p);
  CHECK(self.overlapping);
  CHECK(self.area == ex(1));

  // sharing exactly one edge: boundary contact only
  Polygon right = square_at(Rational(1), Rational(0), Rational(1));
  auto edge = interiors_overlap(p, right);
  CHECK(!edge.overlapping);
  CHECK(edge.area == ex(0));

  // shifted by (1/2, 0): rectangle intersection of area 1/2
  Polygon shifted = square_at(Rational(1, 2), Rational(0), Rational(1));
  auto half = interiors_overlap(p, shifted);
  CHECK(half.overlapping);
  CHECK(half.area == ex(1, 2));
}

TEST_CASE("containment oracles") {
  Polygon p = unit_square();
  CHECK(polygon_contains(p, p));
  Polygon quarter = square_at(Rational(0), Rational(0), Rational(1, 2));
  CHECK(polygon_contains(p, quarter));
  CHECK(!polygon_contains(quarter, p));
  Polygon outside = square_at(Rational(3, 4), Rational(3, 4), Rational(1, 2));
  CHECK(!polygon_contains(p, outside));
}

TEST_CASE("point containment counts the boundary") {
  Polygon p = unit_square();
  CHECK(p.contains_point(Point::exact(Rational(1, 2), Rational(1, 2))));
  CHECK(p.contains_point(Point::exact(0, 0)));
  CHECK(p.contains_point(Point::exact(Rational(1), Rational(1, 2))));
  CHECK(!p.contains_point(Point::exact(Rational(3, 2), Rational(1, 2))));
  CHECK(!p.contains_point(Point::exact(Rational(1, 2), Rational(-1, 100))));
}

TEST_CASE("hausdorff distance oracles") {
  Polygon p = unit_square();
  CHECK(hausdorff_distance(p, p) == doctest::Approx(0.0).epsilon(1e-12));

  // translate by delta: distance is exactly delta
  for (double delta : {0.25, 0.0625}) {
    Isometry g{UnitRotation::identity(Mode::exact),
               Point::exact(Rational(static_cast<long long>(delta * 16), 16), Rational(0))};
    CHECK(hausdorff_distance(p, p.transformed(g)) == doctest::Approx(delta).epsilon(1e-12));
  }

  // concentric square with side 1 + 2h: corner distance h*sqrt2
  double h = 0.25;
  Polygon big = square_at(Rational(-1, 4), Rational(-1, 4), Rational(3, 2));
  CHECK(hausdorff_distance(p, big) == doctest::Approx(h * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hausdorff triangle inequality on random triangles") {
  double saved = geom_epsilon();
  set_geom_epsilon(1e-9);
  for (int i = 0; i < 60; ++i) {
    Polygon a = random_triangle_approx();
    Polygon b = random_triangle_approx();
    Polygon c = random_triangle_approx();
    double ab = hausdorff_distance(a, b);
    double bc = hausdorff_distance(b, c);
    double ac = hausdorff_distance(a, c);
    CHECK(ac <= ab + bc + 8 * geom_epsilon());
  }
  set_geom_epsilon(saved);
}

TEST_CASE("approx isometries preserve sampled distances within tolerance") {
  double saved = geom_epsilon();
  set_geom_epsilon(1e-9);
  double c = std::cos(0.7), s = std::sin(0.7);
  Isometry g{UnitRotation(Scalar::approx(c), Scalar::approx(s), false),
             Point::approx(1.5, -0.25)};
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    Point p = Point::approx(u(rng), u(rng));
    Point q = Point::approx(u(rng), u(rng));
    double before = std::hypot(p.dx() - q.dx(), p.dy() - q.dy());
    Point gp = g.apply(p), gq = g.apply(q);
    double after = std::hypot(gp.dx() - gq.dx(), gp.dy() - gq.dy());
    CHECK(std::abs(before - after) <= 4 * geom_epsilon());
  }
  set_geom_epsilon(saved);
}

TEST_CASE("polygon congruence finds direct and mirror maps") {
  Polygon tri({Point::exact(0, 0), Point::exact(2, 0), Point::exact(2, 1)});
  Isometry g{UnitRotation(ir5(2, 5), ir5(1, 5), false), Point::exact(Rational(3), Rational(-1))};
  Polygon moved = tri.transformed(g);
  auto found = polygon_congruence(tri, moved, false);
  REQUIRE(found.has_value());
  CHECK(tri.transformed(*found).vertices() == moved.vertices());

  Polygon mirrored = tri.conjugated();
  CHECK(!polygon_congruence(tri, mirrored, false).has_value());
  auto refl = polygon_congruence(tri, mirrored, true);
  REQUIRE(refl.has_value());
  CHECK(refl->rot.reflect());
}

TEST_CASE("collinear segment overlap detects positive-length contact only") {
  Point a0 = Point::exact(0, 0), a1 = Point::exact(4, 2);
  CHECK(segments_overlap_positively(a0, a1, Point::exact(2, 1), Point::exact(6, 3)));
  // touching at a single point
  CHECK(!segments_overlap_positively(a0, a1, Point::exact(4, 2), Point::exact(8, 4)));
  // parallel but offset
  CHECK(!segments_overlap_positively(a0, a1, Point::exact(0, 1), Point::exact(4, 3)));
}
