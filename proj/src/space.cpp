#include "tessella/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "tessella/json_io.hpp"

namespace tessella {

using jsonio::ojson;

namespace {

// complex power sigma^s as an exact Point
Point sigma_power(const InflationRule& rule, int s) {
  Point acc = rule.mode() == Mode::exact ? Point::exact(1, 0) : Point::approx(1, 0);
  Point base = rule.sigma();
  while (s > 0) {
    if (s & 1) acc = cmul(acc, base);
    s >>= 1;
    if (s) base = cmul(base, base);
  }
  return acc;
}

struct DoublePoly {
  std::vector<double> xs, ys;
  double cx = 0, cy = 0;  // centroid of vertices
  double radius = 0;      // max vertex distance from centroid

  bool contains(double px, double py) const {
    bool in = false;
    size_t n = xs.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      if ((ys[i] <= py) != (ys[j] <= py)) {
        double cxx = xs[j] + (py - ys[j]) / (ys[i] - ys[j]) * (xs[i] - xs[j]);
        if (px < cxx) in = !in;
      }
    }
    return in;
  }

  double point_distance(double px, double py) const {
    if (contains(px, py)) return 0;
    double best = std::numeric_limits<double>::infinity();
    size_t n = xs.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      best = std::min(best, point_segment_distance(px, py, xs[j], ys[j], xs[i], ys[i]));
    }
    return best;
  }
};

double poly_hausdorff(const DoublePoly& a, const DoublePoly& b) {
  double h = 0;
  for (size_t i = 0; i < a.xs.size(); ++i) h = std::max(h, b.point_distance(a.xs[i], a.ys[i]));
  for (size_t i = 0; i < b.xs.size(); ++i) h = std::max(h, a.point_distance(b.xs[i], b.ys[i]));
  return h;
}

struct TileIndex {
  std::vector<DoublePoly> polys;
  double cell = 1;
  double max_radius = 0;
  std::unordered_map<long long, std::vector<size_t>> grid;

  static long long key(long long gx, long long gy) { return gx * 2000003LL + gy; }

  void build(const InflationRule& rule, const Patch& patch, double ox, double oy) {
    polys.reserve(patch.tiles.size());
    for (const Tile& t : patch.tiles) {
      Polygon poly = tile_polygon(rule, t);
      DoublePoly dp;
      for (const Point& v : poly.vertices()) {
        dp.xs.push_back(v.dx() - ox);
        dp.ys.push_back(v.dy() - oy);
      }
      for (size_t i = 0; i < dp.xs.size(); ++i) {
        dp.cx += dp.xs[i];
        dp.cy += dp.ys[i];
      }
      dp.cx /= static_cast<double>(dp.xs.size());
      dp.cy /= static_cast<double>(dp.ys.size());
      for (size_t i = 0; i < dp.xs.size(); ++i) {
        dp.radius = std::max(dp.radius, std::hypot(dp.xs[i] - dp.cx, dp.ys[i] - dp.cy));
      }
      max_radius = std::max(max_radius, dp.radius);
      polys.push_back(std::move(dp));
    }
    cell = std::max(1e-9, 2.5 * max_radius);
    for (size_t i = 0; i < polys.size(); ++i) {
      long long gx = static_cast<long long>(std::floor(polys[i].cx / cell));
      long long gy = static_cast<long long>(std::floor(polys[i].cy / cell));
      grid[key(gx, gy)].push_back(i);
    }
  }

  template <typename F>
  void for_neighbors(double cx, double cy, F&& f) const {
    long long gx = static_cast<long long>(std::floor(cx / cell));
    long long gy = static_cast<long long>(std::floor(cy / cell));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(key(gx + dx, gy + dy));
        if (it == grid.end()) continue;
        for (size_t idx : it->second) f(idx);
      }
    }
  }
};

}  // namespace

Polygon covered_region(const InflationRule& rule, const Patch& patch) {
  Point s = sigma_power(rule, patch.scale_exp);
  const Polygon& shape = rule.prototile(patch.seed_type).shape;
  std::vector<Point> vs;
  vs.reserve(shape.size());
  for (const Point& v : shape.vertices()) vs.push_back(cmul(s, v));
  return Polygon(std::move(vs));
}

CenteredPatch centered_patch(const InflationRule& rule, Patch patch, double origin_x,
                             double origin_y) {
  CenteredPatch cp;
  cp.origin_x = origin_x;
  cp.origin_y = origin_y;
  Polygon region = covered_region(rule, patch);
  double best = std::numeric_limits<double>::infinity();
  const auto& rv = region.vertices();
  for (size_t i = 0; i < rv.size(); ++i) {
    const Point& a = rv[i];
    const Point& b = rv[(i + 1) % rv.size()];
    best = std::min(best,
                    point_segment_distance(origin_x, origin_y, a.dx(), a.dy(), b.dx(), b.dy()));
  }
  // origin must sit inside the region for the radius to mean anything
  bool inside = false;
  {
    int wn = 0;
    size_t n = rv.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      double ay = rv[j].dy(), by = rv[i].dy();
      double ax = rv[j].dx(), bx = rv[i].dx();
      if ((by <= origin_y) != (ay <= origin_y)) {
        double cx = ax + (origin_y - ay) / (by - ay) * (bx - ax);
        if (origin_x < cx) wn ^= 1;
      }
    }
    inside = wn != 0;
  }
  cp.radius = inside ? best : 0.0;
  cp.patch = std::move(patch);
  return cp;
}

CenteredPatch translated_centered_patch(const InflationRule& rule, const CenteredPatch& base,
                                        const Scalar& dx, const Scalar& dy) {
  (void)rule;
  CenteredPatch cp;
  cp.origin_x = base.origin_x;
  cp.origin_y = base.origin_y;
  double delta = std::hypot(dx.to_double(), dy.to_double());
  cp.radius = std::max(0.0, base.radius - delta);
  Isometry g{UnitRotation::identity(dx.mode()), Point{dx, dy}};
  cp.patch = transform_patch(base.patch, g);
  return cp;
}

namespace {

bool directed_condition(const TileIndex& a, const TileIndex& b, double disk_radius, double eps) {
  for (const DoublePoly& u : a.polys) {
    double center_dist = std::hypot(u.cx, u.cy);
    if (center_dist - u.radius > disk_radius) continue;  // tile entirely outside the disk
    bool matched = false;
    b.for_neighbors(u.cx, u.cy, [&](size_t idx) {
      if (matched) return;
      const DoublePoly& v = b.polys[idx];
      if (std::hypot(v.cx - u.cx, v.cy - u.cy) > eps + u.radius + v.radius) return;
      if (poly_hausdorff(u, v) <= eps) matched = true;
    });
    if (!matched) return false;
  }
  return true;
}

}  // namespace

bool patch_distance_at(const InflationRule& rule, const CenteredPatch& a, const CenteredPatch& b,
                       double eps) {
  if (eps <= 0) fail(Errc::invalid_argument, "epsilon must be positive");
  double need = 1.0 / eps;
  if (need > a.radius || need > b.radius)
    fail(Errc::insufficient_radius,
         "epsilon " + std::to_string(eps) + " needs coverage radius " + std::to_string(need) +
             " but patches cover only " + std::to_string(std::min(a.radius, b.radius)));
  TileIndex ia, ib;
  ia.build(rule, a.patch, a.origin_x, a.origin_y);
  ib.build(rule, b.patch, b.origin_x, b.origin_y);
  return directed_condition(ia, ib, need, eps) && directed_condition(ib, ia, need, eps);
}

MetricReport patch_distance(const InflationRule& rule, const CenteredPatch& a,
                            const CenteredPatch& b) {
  double rmin = std::min(a.radius, b.radius);
  if (rmin <= 1.0)
    fail(Errc::insufficient_radius,
         "patches must cover at least a unit disk around the origin (radius = " +
             std::to_string(rmin) + ")");
  double lo = std::max(1e-3, 1.0 / rmin);
  double hi = 1.0;

  TileIndex ia, ib;
  ia.build(rule, a.patch, a.origin_x, a.origin_y);
  ib.build(rule, b.patch, b.origin_x, b.origin_y);
  auto holds = [&](double eps) {
    double disk = 1.0 / eps;
    return directed_condition(ia, ib, disk, eps) && directed_condition(ib, ia, disk, eps);
  };

  MetricReport rep;
  if (!holds(hi)) {
    rep.epsilon = 1.0;
    rep.radius_used = 1.0;
    rep.floor_hit = false;
    return rep;
  }
  if (holds(lo)) {
    rep.epsilon = lo;
    rep.radius_used = 1.0 / lo;
    rep.floor_hit = true;
    return rep;
  }
  while (hi - lo > 1e-6) {
    double mid = 0.5 * (lo + hi);
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  rep.epsilon = hi;
  rep.radius_used = 1.0 / hi;
  rep.floor_hit = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Congruent-subpatch membership

namespace {

std::string polygon_key(const Polygon& p) {
  const auto& vs = p.vertices();
  size_t n = vs.size();
  size_t start = 0;
  for (size_t i = 1; i < n; ++i) {
    int c = Scalar::cmp_strict(vs[i].x, vs[start].x);
    if (c < 0 || (c == 0 && Scalar::cmp_strict(vs[i].y, vs[start].y) < 0)) start = i;
  }
  std::string key;
  for (size_t k = 0; k < n; ++k) {
    const Point& v = vs[(start + k) % n];
    key += v.x.to_string();
    key += ",";
    key += v.y.to_string();
    key += ";";
  }
  return key;
}

}  // namespace

CongruenceResult congruent_subpatch(const InflationRule& rule, const Patch& query, int r,
                                    long long cap) {
  if (query.tiles.empty()) fail(Errc::invalid_argument, "empty query patch");
  if (query.tiles.size() > 64)
    fail(Errc::invalid_argument, "query patches are limited to 64 tiles");
  EngineOptions opts;
  opts.cap = cap;

  Isometry conj_iso{UnitRotation(Scalar::one_like(rule.lambda()), Scalar::zero_like(rule.lambda()), true),
                    rule.mode() == Mode::exact ? Point::exact(0, 0) : Point::approx(0, 0)};

  for (int seed = 0; seed < rule.prototile_count(); ++seed) {
    Patch target = inflate_patch(rule, seed_patch(rule, seed), r, opts);
    std::unordered_set<std::string> region_keys;
    region_keys.reserve(target.tiles.size() * 2);
    for (const Tile& t : target.tiles) region_keys.insert(polygon_key(tile_polygon(rule, t)));

    std::vector<Polygon> query_polys;
    query_polys.reserve(query.tiles.size());
    for (const Tile& t : query.tiles) query_polys.push_back(tile_polygon(rule, t));

    for (size_t anchor = 0; anchor < query.tiles.size(); ++anchor) {
      const Tile& qa = query.tiles[anchor];
      Isometry qa_inv = qa.pose().inverse();
      int mirror_type = rule.mirror_of(qa.type);
      for (const Tile& tt : target.tiles) {
        std::vector<Isometry> candidates;
        if (tt.type == qa.type) {
          candidates.push_back(tt.pose().compose(qa_inv));
        }
        if (mirror_type >= 0 && tt.type == mirror_type) {
          // indirect alignment through the mirror pairing
          Isometry kappa = rule.mirror_map(qa.type).compose(conj_iso);
          candidates.push_back(tt.pose().compose(kappa).compose(qa_inv));
        }
        for (const Isometry& g : candidates) {
          bool all = true;
          for (size_t i = 0; i < query_polys.size() && all; ++i) {
            all = region_keys.count(polygon_key(query_polys[i].transformed(g))) > 0;
          }
          if (all) return CongruenceResult{true, g, seed};
        }
      }
    }
  }
  return CongruenceResult{};
}

// ---------------------------------------------------------------------------
// Adjacency census

namespace {

std::string isometry_key(const Isometry& g) {
  std::string s = g.rot.reflect() ? "R|" : "D|";
  s += g.rot.re().to_string();
  s += "|" + g.rot.im().to_string();
  s += "|" + g.trans.x.to_string();
  s += "|" + g.trans.y.to_string();
  return s;
}

}  // namespace

std::vector<AdjacencyConfiguration> adjacency_census(const InflationRule& rule,
                                                     const Patch& patch) {
  size_t n = patch.tiles.size();
  std::vector<Polygon> polys;
  polys.reserve(n);
  std::vector<BBox> boxes;
  boxes.reserve(n);
  double max_dim = 0;
  for (const Tile& t : patch.tiles) {
    polys.push_back(tile_polygon(rule, t));
    boxes.push_back(polys.back().bbox());
    max_dim = std::max({max_dim, boxes.back().maxx - boxes.back().minx,
                        boxes.back().maxy - boxes.back().miny});
  }
  double cell = std::max(1e-9, max_dim * 1.01);
  std::unordered_map<long long, std::vector<size_t>> grid;
  auto keyf = [](long long x, long long y) { return x * 2000003LL + y; };
  for (size_t i = 0; i < n; ++i) {
    long long gx = static_cast<long long>(std::floor(boxes[i].minx / cell));
    long long gy = static_cast<long long>(std::floor(boxes[i].miny / cell));
    grid[keyf(gx, gy)].push_back(i);
  }

  std::map<std::string, AdjacencyConfiguration> census;
  auto consider = [&](size_t i, size_t j) {
    if (!boxes[i].intersects(boxes[j], 1e-9)) return;
    const Polygon& a = polys[i];
    const Polygon& b = polys[j];
    bool touching = false;
    for (size_t ea = 0; ea < a.size() && !touching; ++ea) {
      const Point& a1 = a[ea];
      const Point& a2 = a[(ea + 1) % a.size()];
      for (size_t eb = 0; eb < b.size() && !touching; ++eb) {
        touching = segments_overlap_positively(a1, a2, b[eb], b[(eb + 1) % b.size()]);
      }
    }
    if (!touching) return;
    const Tile& ta = patch.tiles[i];
    const Tile& tb = patch.tiles[j];
    Isometry rel_ab = ta.pose().inverse().compose(tb.pose());
    Isometry rel_ba = tb.pose().inverse().compose(ta.pose());
    std::string ka = std::to_string(ta.type) + ":" + std::to_string(tb.type) + ":" + isometry_key(rel_ab);
    std::string kb = std::to_string(tb.type) + ":" + std::to_string(ta.type) + ":" + isometry_key(rel_ba);
    bool use_ab = ka <= kb;
    const std::string& key = use_ab ? ka : kb;
    auto it = census.find(key);
    if (it == census.end()) {
      AdjacencyConfiguration cfg;
      cfg.type_a = use_ab ? ta.type : tb.type;
      cfg.type_b = use_ab ? tb.type : ta.type;
      cfg.relative = use_ab ? rel_ab : rel_ba;
      cfg.count = 1;
      census.emplace(key, std::move(cfg));
    } else {
      ++it->second.count;
    }
  };

  for (size_t i = 0; i < n; ++i) {
    long long gx = static_cast<long long>(std::floor(boxes[i].minx / cell));
    long long gy = static_cast<long long>(std::floor(boxes[i].miny / cell));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(keyf(gx + dx, gy + dy));
        if (it == grid.end()) continue;
        // each tile lives in exactly one cell, so j > i visits a pair once
        for (size_t j : it->second) {
          if (j > i) consider(i, j);
        }
      }
    }
  }

  std::vector<AdjacencyConfiguration> out;
  out.reserve(census.size());
  for (auto& [k, v] : census) {
    (void)k;
    out.push_back(std::move(v));
  }
  return out;
}

std::string census_to_json(const InflationRule& rule,
                           const std::vector<AdjacencyConfiguration>& census) {
  ojson root = ojson::object();
  root["schema"] = "tessella/census-v1";
  root["rule_hash"] = rule.hash();
  ojson arr = ojson::array();
  Scalar base = rule.inflation_base();
  for (const auto& cfg : census) {
    ojson e = ojson::object();
    e["type_a"] = cfg.type_a;
    e["type_b"] = cfg.type_b;
    ojson rel = ojson::object();
    rel["rot"] = jsonio::rotation_to_json(cfg.relative.rot, base, rule.radicand());
    rel["reflect"] = cfg.relative.rot.reflect();
    rel["trans"] = jsonio::point_to_json(cfg.relative.trans);
    e["relative_pose"] = rel;
    e["count"] = cfg.count;
    arr.push_back(e);
  }
  root["configurations"] = arr;
  root["distinct"] = census.size();
  return root.dump(2) + "\n";
}

std::string metric_report_json(const MetricReport& report) {
  ojson root = ojson::object();
  root["schema"] = "tessella/metric-v1";
  root["epsilon"] = report.epsilon;
  root["radius_used"] = report.radius_used;
  root["floor_hit"] = report.floor_hit;
  return root.dump(2) + "\n";
}

}  // namespace tessella
