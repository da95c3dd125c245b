#pragma once

#include <optional>
#include <vector>

#include "tessella/scalar.hpp"

namespace tessella {

struct Point {
  Scalar x, y;

  Point() = default;
  Point(Scalar px, Scalar py) : x(std::move(px)), y(std::move(py)) {}
  static Point exact(Rational px, Rational py) {
    return {Scalar::exact_rat(std::move(px)), Scalar::exact_rat(std::move(py))};
  }
  static Point approx(double px, double py) { return {Scalar::approx(px), Scalar::approx(py)}; }

  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  Point operator-() const { return {-x, -y}; }
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

  double dx() const { return x.to_double(); }
  double dy() const { return y.to_double(); }
};

// Complex-number view of points: (x, y) acts as x + iy.
Point cmul(const Point& a, const Point& b);
Point conj(const Point& a);
Point cscale(const Scalar& s, const Point& a);
Point cinv(const Point& a);  // 1/z, z nonzero

// cross(b - a, c - a): > 0 when a,b,c turn counterclockwise
Scalar cross3(const Point& a, const Point& b, const Point& c);
int orient(const Point& a, const Point& b, const Point& c);

// Rotation part of a plane congruence: z -> u*z (direct) or z -> u*conj(z)
// (indirect), with |u| = 1 held exactly in exact mode.
class UnitRotation {
 public:
  UnitRotation() : re_(Scalar::exact_rat(Rational(1))), im_(Scalar::exact_rat(Rational(0))) {}
  UnitRotation(Scalar re, Scalar im, bool reflect);

  static UnitRotation identity(Mode m) {
    return m == Mode::exact ? UnitRotation()
                            : UnitRotation(Scalar::approx(1), Scalar::approx(0), false);
  }

  // Skips the unit-modulus check; for compositions of already-verified
  // rotations where the product is unit by construction.
  static UnitRotation unchecked(Scalar re, Scalar im, bool reflect) {
    UnitRotation u;
    u.re_ = std::move(re);
    u.im_ = std::move(im);
    u.reflect_ = reflect;
    return u;
  }

  const Scalar& re() const { return re_; }
  const Scalar& im() const { return im_; }
  bool reflect() const { return reflect_; }
  double angle() const;  // arg(u) in (-pi, pi]

  Point apply(const Point& p) const;
  UnitRotation compose(const UnitRotation& o) const;  // this after o
  UnitRotation inverse() const;
  UnitRotation pow(int e) const;
  bool is_identity() const;

  friend bool operator==(const UnitRotation& a, const UnitRotation& b) {
    return a.reflect_ == b.reflect_ && a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const UnitRotation& a, const UnitRotation& b) { return !(a == b); }

 private:
  Scalar re_, im_;
  bool reflect_ = false;
};

// Plane congruence z -> rot(z) + trans.
struct Isometry {
  UnitRotation rot;
  Point trans;

  static Isometry identity(Mode m) {
    return {UnitRotation::identity(m),
            m == Mode::exact ? Point::exact(0, 0) : Point::approx(0, 0)};
  }

  Point apply(const Point& p) const { return rot.apply(p) + trans; }
  Isometry compose(const Isometry& o) const {  // this after o
    return {rot.compose(o.rot), rot.apply(o.trans) + trans};
  }
  Isometry inverse() const {
    UnitRotation ri = rot.inverse();
    return {ri, -ri.apply(trans)};
  }

  friend bool operator==(const Isometry& a, const Isometry& b) {
    return a.rot == b.rot && a.trans == b.trans;
  }
};

Isometry compose(const Isometry& g, const Isometry& h);

struct BBox {
  double minx, miny, maxx, maxy;
  bool intersects(const BBox& o, double pad = 0.0) const {
    return minx <= o.maxx + pad && o.minx <= maxx + pad && miny <= o.maxy + pad &&
           o.miny <= maxy + pad;
  }
};

// Simple polygon, counterclockwise, positive area; validated at construction.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vs_; }
  size_t size() const { return vs_.size(); }
  const Point& operator[](size_t i) const { return vs_[i]; }

  Scalar area() const;
  bool is_convex() const;
  bool contains_point(const Point& p) const;  // boundary counts as inside
  Polygon transformed(const Isometry& g) const;
  Polygon scaled(const Scalar& s) const;  // s > 0
  Polygon conjugated() const;             // mirror across the x axis, re-oriented CCW
  BBox bbox() const;
  double diameter() const;

 private:
  std::vector<Point> vs_;
};

Scalar polygon_area(const Polygon& p);

struct OverlapResult {
  bool overlapping;
  Scalar area;
};
OverlapResult interiors_overlap(const Polygon& p, const Polygon& q);
Scalar intersection_area(const Polygon& p, const Polygon& q);
bool polygon_contains(const Polygon& p, const Polygon& q);  // q subset of p
double hausdorff_distance(const Polygon& p, const Polygon& q);

std::vector<Polygon> triangulate(const Polygon& p);

// Clip a convex polygon (as a vertex loop) to the half-plane left of a->b.
std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Point& a, const Point& b);

// Direct (rotation+translation) map taking polygon a onto polygon b, if any;
// tries every vertex correspondence. With allow_reflection, also tries
// indirect maps and reports them via the rotation's reflect flag.
std::optional<Isometry> polygon_congruence(const Polygon& a, const Polygon& b,
                                           bool allow_reflection);

// Do two collinear segments share a subsegment of positive length?
bool segments_overlap_positively(const Point& a1, const Point& a2, const Point& b1,
                                 const Point& b2);

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by);

}  // namespace tessella
