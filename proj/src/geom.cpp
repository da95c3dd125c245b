#include "tessella/geom.hpp"

#include <algorithm>
#include <cmath>

namespace tessella {

Point cmul(const Point& a, const Point& b) {
  return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
}

Point conj(const Point& a) { return {a.x, -a.y}; }

Point cscale(const Scalar& s, const Point& a) { return {s * a.x, s * a.y}; }

Point cinv(const Point& a) {
  Scalar n = a.x * a.x + a.y * a.y;
  if (n.is_zero()) fail(Errc::degenerate_geometry, "complex inverse of zero");
  return {a.x / n, -(a.y / n)};
}

Scalar cross3(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int orient(const Point& a, const Point& b, const Point& c) { return cross3(a, b, c).sign(); }

UnitRotation::UnitRotation(Scalar re, Scalar im, bool reflect)
    : re_(std::move(re)), im_(std::move(im)), reflect_(reflect) {
  Scalar n = re_ * re_ + im_ * im_;
  if (n.is_exact()) {
    if (!(n - Scalar::exact_rat(Rational(1))).is_zero())
      fail(Errc::invalid_argument, "rotation is not exactly unit: |u|^2 = " + n.to_string());
  } else {
    if (std::abs(n.to_double() - 1.0) > 16 * geom_epsilon())
      fail(Errc::invalid_argument, "rotation is not unit within tolerance");
  }
}

double UnitRotation::angle() const { return std::atan2(im_.to_double(), re_.to_double()); }

Point UnitRotation::apply(const Point& p) const {
  return reflect_ ? cmul({re_, im_}, conj(p)) : cmul({re_, im_}, p);
}

UnitRotation UnitRotation::compose(const UnitRotation& o) const {
  Point u2 = reflect_ ? conj(Point{o.re_, o.im_}) : Point{o.re_, o.im_};
  Point u = cmul({re_, im_}, u2);
  UnitRotation r;
  r.re_ = u.x;
  r.im_ = u.y;
  r.reflect_ = reflect_ != o.reflect_;
  return r;
}

UnitRotation UnitRotation::inverse() const {
  UnitRotation r = *this;
  if (!reflect_) r.im_ = -r.im_;
  return r;
}

UnitRotation UnitRotation::pow(int e) const {
  if (reflect_) fail(Errc::not_a_rotation, "cannot take powers of a reflecting congruence");
  UnitRotation base = e < 0 ? inverse() : *this;
  unsigned k = e < 0 ? static_cast<unsigned>(-static_cast<long long>(e)) : static_cast<unsigned>(e);
  UnitRotation r = UnitRotation::identity(re_.mode());
  while (k) {
    if (k & 1u) r = r.compose(base);
    k >>= 1u;
    if (k) base = base.compose(base);
  }
  return r;
}

bool UnitRotation::is_identity() const {
  return !reflect_ && (re_ - Scalar::one_like(re_)).is_zero() && im_.is_zero();
}

Isometry compose(const Isometry& g, const Isometry& h) { return g.compose(h); }

namespace {

bool proper_or_improper_crossing(const Point& p1, const Point& p2, const Point& q1,
                                 const Point& q2) {
  int d1 = orient(q1, q2, p1);
  int d2 = orient(q1, q2, p2);
  int d3 = orient(p1, p2, q1);
  int d4 = orient(p1, p2, q2);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;  // proper crossing
  auto strictly_between = [](const Point& a, const Point& b, const Point& c) {
    // c collinear with a,b: is it strictly inside the segment?
    Scalar dot = (c.x - a.x) * (b.x - a.x) + (c.y - a.y) * (b.y - a.y);
    Scalar len = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    return dot.sign() > 0 && Scalar::cmp(dot, len) < 0;
  };
  if (d1 == 0 && strictly_between(q1, q2, p1)) return true;
  if (d2 == 0 && strictly_between(q1, q2, p2)) return true;
  if (d3 == 0 && strictly_between(p1, p2, q1)) return true;
  if (d4 == 0 && strictly_between(p1, p2, q2)) return true;
  return false;
}

Scalar signed_area_twice(const std::vector<Point>& vs) {
  Scalar s = Scalar::zero_like(vs[0].x);
  for (size_t i = 0; i < vs.size(); ++i) {
    const Point& a = vs[i];
    const Point& b = vs[(i + 1) % vs.size()];
    s = s + (a.x * b.y - b.x * a.y);
  }
  return s;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : vs_(std::move(vertices)) {
  size_t n = vs_.size();
  if (n < 3) fail(Errc::degenerate_geometry, "polygon needs at least 3 vertices");
  for (size_t i = 0; i < n; ++i) {
    if (vs_[i] == vs_[(i + 1) % n])
      fail(Errc::degenerate_geometry, "repeated consecutive polygon vertex");
  }
  Scalar a2 = signed_area_twice(vs_);
  if (a2.sign() < 0) fail(Errc::degenerate_geometry, "polygon vertices must be counterclockwise");
  if (a2.is_zero()) fail(Errc::degenerate_geometry, "polygon has zero area");
  // spikes: an interior angle of exactly 2*pi
  for (size_t i = 0; i < n; ++i) {
    const Point& prev = vs_[(i + n - 1) % n];
    const Point& cur = vs_[i];
    const Point& next = vs_[(i + 1) % n];
    if (orient(prev, cur, next) == 0) {
      Scalar dot = (prev.x - cur.x) * (next.x - cur.x) + (prev.y - cur.y) * (next.y - cur.y);
      if (dot.sign() > 0) fail(Errc::degenerate_geometry, "polygon has a spike vertex");
    }
  }
  // pairwise edge crossings
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (proper_or_improper_crossing(vs_[i], vs_[(i + 1) % n], vs_[j], vs_[(j + 1) % n]))
        fail(Errc::degenerate_geometry, "polygon is self-intersecting");
    }
  }
  // coincident vertices on non-adjacent corners
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (vs_[i] == vs_[j]) fail(Errc::degenerate_geometry, "polygon pinches at a vertex");
    }
  }
}

Scalar Polygon::area() const {
  Scalar two = vs_[0].x.is_exact() ? Scalar::exact_rat(Rational(2)) : Scalar::approx(2.0);
  return signed_area_twice(vs_) / two;
}

Scalar polygon_area(const Polygon& p) { return p.area(); }

bool Polygon::is_convex() const {
  size_t n = vs_.size();
  for (size_t i = 0; i < n; ++i) {
    if (orient(vs_[i], vs_[(i + 1) % n], vs_[(i + 2) % n]) < 0) return false;
  }
  return true;
}

bool Polygon::contains_point(const Point& p) const {
  size_t n = vs_.size();
  // boundary first
  for (size_t i = 0; i < n; ++i) {
    const Point& a = vs_[i];
    const Point& b = vs_[(i + 1) % n];
    if (orient(a, b, p) == 0) {
      Scalar dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
      Scalar len = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
      if (dot.sign() >= 0 && Scalar::cmp(dot, len) <= 0) return true;
    }
  }
  bool in = false;
  for (size_t i = 0; i < n; ++i) {
    const Point& a = vs_[i];
    const Point& b = vs_[(i + 1) % n];
    int ya = Scalar::cmp(a.y, p.y);
    int yb = Scalar::cmp(b.y, p.y);
    if (ya <= 0 && yb > 0) {         // upward crossing
      if (orient(a, b, p) > 0) in = !in;
    } else if (ya > 0 && yb <= 0) {  // downward crossing
      if (orient(a, b, p) < 0) in = !in;
    }
  }
  return in;
}

Polygon Polygon::transformed(const Isometry& g) const {
  std::vector<Point> out;
  out.reserve(vs_.size());
  if (g.rot.reflect()) {
    for (size_t i = vs_.size(); i-- > 0;) out.push_back(g.apply(vs_[i]));
  } else {
    for (const Point& p : vs_) out.push_back(g.apply(p));
  }
  return Polygon(std::move(out));
}

Polygon Polygon::scaled(const Scalar& s) const {
  std::vector<Point> out;
  out.reserve(vs_.size());
  for (const Point& p : vs_) out.push_back(cscale(s, p));
  return Polygon(std::move(out));
}

Polygon Polygon::conjugated() const {
  std::vector<Point> out;
  out.reserve(vs_.size());
  for (size_t i = vs_.size(); i-- > 0;) out.push_back(conj(vs_[i]));
  return Polygon(std::move(out));
}

BBox Polygon::bbox() const {
  BBox b{vs_[0].dx(), vs_[0].dy(), vs_[0].dx(), vs_[0].dy()};
  for (const Point& p : vs_) {
    b.minx = std::min(b.minx, p.dx());
    b.maxx = std::max(b.maxx, p.dx());
    b.miny = std::min(b.miny, p.dy());
    b.maxy = std::max(b.maxy, p.dy());
  }
  return b;
}

double Polygon::diameter() const {
  double d = 0;
  for (size_t i = 0; i < vs_.size(); ++i) {
    for (size_t j = i + 1; j < vs_.size(); ++j) {
      d = std::max(d, std::hypot(vs_[i].dx() - vs_[j].dx(), vs_[i].dy() - vs_[j].dy()));
    }
  }
  return d;
}

std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Point& a, const Point& b) {
  std::vector<Point> out;
  size_t n = poly.size();
  if (n == 0) return out;
  for (size_t i = 0; i < n; ++i) {
    const Point& cur = poly[i];
    const Point& nxt = poly[(i + 1) % n];
    int sc = orient(a, b, cur);
    int sn = orient(a, b, nxt);
    if (sc >= 0) out.push_back(cur);
    if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
      // segment crosses the clip line: cur + t*(nxt - cur)
      Scalar num = cross3(a, b, cur);
      Scalar den = num - cross3(a, b, nxt);
      Scalar t = num / den;
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  // drop duplicate consecutive points introduced by boundary contact
  std::vector<Point> clean;
  for (const Point& p : out) {
    if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
  }
  while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
  return clean;
}

namespace {

Scalar clipped_area(const std::vector<Point>& convex_clip, const std::vector<Point>& subject) {
  std::vector<Point> poly = subject;
  size_t n = convex_clip.size();
  for (size_t i = 0; i < n && poly.size() >= 3; ++i) {
    poly = clip_halfplane(poly, convex_clip[i], convex_clip[(i + 1) % n]);
  }
  if (poly.size() < 3) return Scalar::zero_like(convex_clip[0].x);
  Scalar s = Scalar::zero_like(poly[0].x);
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    s = s + (a.x * b.y - b.x * a.y);
  }
  Scalar two = s.is_exact() ? Scalar::exact_rat(Rational(2)) : Scalar::approx(2.0);
  return s / two;
}

}  // namespace

std::vector<Polygon> triangulate(const Polygon& p) {
  std::vector<Polygon> out;
  if (p.is_convex()) {
    const auto& vs = p.vertices();
    for (size_t i = 1; i + 1 < vs.size(); ++i) {
      if (orient(vs[0], vs[i], vs[i + 1]) > 0)
        out.push_back(Polygon({vs[0], vs[i], vs[i + 1]}));
    }
    return out;
  }
  std::vector<Point> vs = p.vertices();
  while (vs.size() > 3) {
    size_t n = vs.size();
    bool clipped = false;
    for (size_t i = 0; i < n; ++i) {
      const Point& prev = vs[(i + n - 1) % n];
      const Point& cur = vs[i];
      const Point& next = vs[(i + 1) % n];
      int o = orient(prev, cur, next);
      if (o == 0) {  // collinear vertex contributes nothing
        vs.erase(vs.begin() + static_cast<long>(i));
        clipped = true;
        break;
      }
      if (o < 0) continue;
      Polygon ear({prev, cur, next});
      bool blocked = false;
      for (size_t j = 0; j < n; ++j) {
        if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
        if (ear.contains_point(vs[j])) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      out.push_back(std::move(ear));
      vs.erase(vs.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) fail(Errc::degenerate_geometry, "triangulation failed on degenerate polygon");
  }
  if (vs.size() == 3 && orient(vs[0], vs[1], vs[2]) > 0) out.push_back(Polygon(vs));
  return out;
}

Scalar intersection_area(const Polygon& p, const Polygon& q) {
  if (p.is_convex() && q.is_convex()) {
    return clipped_area(q.vertices(), p.vertices());
  }
  Scalar total = Scalar::zero_like(p.vertices()[0].x);
  auto tp = triangulate(p);
  auto tq = triangulate(q);
  for (const Polygon& a : tp) {
    for (const Polygon& b : tq) {
      total = total + clipped_area(b.vertices(), a.vertices());
    }
  }
  return total;
}

OverlapResult interiors_overlap(const Polygon& p, const Polygon& q) {
  if (!p.bbox().intersects(q.bbox(), 1e-12)) {
    return {false, Scalar::zero_like(p.vertices()[0].x)};
  }
  Scalar a = intersection_area(p, q);
  return {a.sign() > 0, a};
}

bool polygon_contains(const Polygon& p, const Polygon& q) {
  Scalar inter = intersection_area(p, q);
  return (inter - q.area()).is_zero();
}

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  double dx = bx - ax, dy = by - ay;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

namespace {

double point_polygon_distance(const Point& v, const Polygon& q) {
  if (q.contains_point(v)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const auto& vs = q.vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    const Point& a = vs[i];
    const Point& b = vs[(i + 1) % vs.size()];
    best = std::min(best, point_segment_distance(v.dx(), v.dy(), a.dx(), a.dy(), b.dx(), b.dy()));
  }
  return best;
}

// Max of dist(., q) over p. Exact at vertices when q is convex; otherwise the
// boundary of p is sampled at 64 points per edge.
double directed_hausdorff(const Polygon& p, const Polygon& q) {
  double best = 0;
  for (const Point& v : p.vertices()) {
    best = std::max(best, point_polygon_distance(v, q));
  }
  if (!q.is_convex()) {
    constexpr int kSamplesPerEdge = 64;
    const auto& vs = p.vertices();
    for (size_t i = 0; i < vs.size(); ++i) {
      const Point& a = vs[i];
      const Point& b = vs[(i + 1) % vs.size()];
      for (int k = 1; k < kSamplesPerEdge; ++k) {
        double t = static_cast<double>(k) / kSamplesPerEdge;
        Point s = Point::approx(a.dx() + t * (b.dx() - a.dx()), a.dy() + t * (b.dy() - a.dy()));
        double d;
        if (q.vertices()[0].x.is_exact()) {
          // sampling is double precision by nature; measure against edges only
          d = std::numeric_limits<double>::infinity();
          const auto& qs = q.vertices();
          bool inside = false;
          {
            // crude double-precision containment for the sampled point
            int wn = 0;
            for (size_t j = 0; j < qs.size(); ++j) {
              double ax = qs[j].dx(), ay = qs[j].dy();
              double bx = qs[(j + 1) % qs.size()].dx(), by = qs[(j + 1) % qs.size()].dy();
              if ((ay <= s.dy()) != (by <= s.dy())) {
                double cx = ax + (s.dy() - ay) / (by - ay) * (bx - ax);
                if (s.dx() < cx) wn ^= 1;
              }
            }
            inside = wn != 0;
          }
          if (inside) {
            d = 0;
          } else {
            for (size_t j = 0; j < qs.size(); ++j) {
              const Point& qa = qs[j];
              const Point& qb = qs[(j + 1) % qs.size()];
              d = std::min(d, point_segment_distance(s.dx(), s.dy(), qa.dx(), qa.dy(), qb.dx(),
                                                     qb.dy()));
            }
          }
        } else {
          d = point_polygon_distance(s, q);
        }
        best = std::max(best, d);
      }
    }
  }
  return best;
}

}  // namespace

double hausdorff_distance(const Polygon& p, const Polygon& q) {
  return std::max(directed_hausdorff(p, q), directed_hausdorff(q, p));
}

std::optional<Isometry> polygon_congruence(const Polygon& a, const Polygon& b,
                                           bool allow_reflection) {
  if (a.size() != b.size()) return std::nullopt;
  size_t n = a.size();
  const auto& av = a.vertices();
  const auto& bv = b.vertices();
  Point ea = av[1] - av[0];
  for (size_t off = 0; off < n; ++off) {
    Point eb = bv[(off + 1) % n] - bv[off];
    // u = eb / ea must be a unit rotation
    Point u = cmul(eb, cinv(ea));
    Scalar norm = u.x * u.x + u.y * u.y;
    if (!(norm - Scalar::one_like(norm)).is_zero()) continue;
    Point t = bv[off] - cmul(u, av[0]);
    bool ok = true;
    for (size_t k = 0; k < n && ok; ++k) {
      ok = bv[(off + k) % n] == cmul(u, av[k]) + t;
    }
    if (ok) return Isometry{UnitRotation(u.x, u.y, false), t};
  }
  if (allow_reflection) {
    Polygon ac = a.conjugated();
    if (auto g = polygon_congruence(ac, b, false)) {
      // g maps conj(a) onto b, so z -> g(conj z) maps a onto b
      return Isometry{UnitRotation(g->rot.re(), g->rot.im(), true), g->trans};
    }
  }
  return std::nullopt;
}

bool segments_overlap_positively(const Point& a1, const Point& a2, const Point& b1,
                                 const Point& b2) {
  if (orient(a1, a2, b1) != 0 || orient(a1, a2, b2) != 0) return false;
  Point d = a2 - a1;
  auto param = [&](const Point& p) { return (p.x - a1.x) * d.x + (p.y - a1.y) * d.y; };
  Scalar lo = Scalar::zero_like(d.x);
  Scalar hi = d.x * d.x + d.y * d.y;
  Scalar t1 = param(b1);
  Scalar t2 = param(b2);
  if (Scalar::cmp(t1, t2) > 0) std::swap(t1, t2);
  Scalar start = Scalar::cmp(lo, t1) > 0 ? lo : t1;
  Scalar end = Scalar::cmp(hi, t2) < 0 ? hi : t2;
  return Scalar::cmp(start, end) < 0;
}

}  // namespace tessella
