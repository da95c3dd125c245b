#include "tessella/engine.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <unordered_map>
#include <thread>

#include "tessella/json_io.hpp"

namespace tessella {

using jsonio::ojson;

long long default_tile_cap() {
  if (const char* env = std::getenv("TESSELLA_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 5'000'000;
}

Patch seed_patch(const InflationRule& rule, int seed_type) {
  if (seed_type < 0 || seed_type >= rule.prototile_count())
    fail(Errc::unknown_tile_type, "seed prototile " + std::to_string(seed_type) + " does not exist");
  Patch p;
  p.rule_hash = rule.hash();
  p.seed_type = seed_type;
  p.tiles.push_back(Tile{seed_type, UnitRotation::identity(rule.mode()),
                         rule.mode() == Mode::exact ? Point::exact(0, 0) : Point::approx(0, 0)});
  return p;
}

std::vector<Tile> inflate_tile(const InflationRule& rule, const Tile& tile) {
  if (tile.type < 0 || tile.type >= rule.prototile_count())
    fail(Errc::unknown_tile_type, "tile type " + std::to_string(tile.type) + " does not exist");
  const Point& s = rule.sigma();        // full expansion factor, |s| = 1/lambda
  const Point& unit = rule.sigma_unit();  // its rotation part
  std::vector<Tile> out;
  const auto& kids = rule.children_of(tile.type);
  out.reserve(kids.size());
  for (const ChildPlacement& c : kids) {
    // new pose = sigma . (tile pose) . (child placement), which stays unit
    // scale because the child carries lambda and sigma carries 1/lambda
    Point u = cmul(unit, tile.rot.apply(Point{c.rot.re(), c.rot.im()}));
    Point t = cmul(s, tile.rot.apply(c.trans) + tile.trans);
    out.push_back(Tile{c.type,
                       UnitRotation::unchecked(std::move(u.x), std::move(u.y),
                                               tile.rot.reflect() != c.rot.reflect()),
                       std::move(t)});
  }
  return out;
}

bool tile_less(const Tile& a, const Tile& b) {
  if (a.type != b.type) return a.type < b.type;
  if (a.rot.reflect() != b.rot.reflect()) return !a.rot.reflect();
  int c = Scalar::cmp_strict(a.rot.re(), b.rot.re());
  if (c != 0) return c < 0;
  c = Scalar::cmp_strict(a.rot.im(), b.rot.im());
  if (c != 0) return c < 0;
  c = Scalar::cmp_strict(a.trans.x, b.trans.x);
  if (c != 0) return c < 0;
  return Scalar::cmp_strict(a.trans.y, b.trans.y) < 0;
}

void canonical_sort(std::vector<Tile>& tiles) { std::sort(tiles.begin(), tiles.end(), tile_less); }

BigInt projected_tile_count(const InflationRule& rule, const Patch& patch, int r) {
  int n = rule.prototile_count();
  std::vector<BigInt> counts(static_cast<size_t>(n));
  for (const Tile& t : patch.tiles) counts[static_cast<size_t>(t.type)] += BigInt(1);
  for (int step = 0; step < r; ++step) {
    std::vector<BigInt> next(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      if (counts[static_cast<size_t>(k)].is_zero()) continue;
      for (const ChildPlacement& c : rule.children_of(k)) {
        next[static_cast<size_t>(c.type)] += counts[static_cast<size_t>(k)];
      }
    }
    counts = std::move(next);
  }
  BigInt total;
  for (const BigInt& c : counts) total += c;
  return total;
}

Patch inflate_patch(const InflationRule& rule, const Patch& patch, int r,
                    const EngineOptions& opts) {
  if (!rule.validated())
    fail(Errc::invalid_argument, "inflate requires a validated rule");
  if (r < 0) fail(Errc::invalid_argument, "iteration count must be non-negative");
  BigInt projected = projected_tile_count(rule, patch, r);
  if (BigInt::cmp(projected, BigInt(opts.cap)) > 0)
    fail(Errc::patch_too_large, "projected tile count " + projected.to_string() +
                                    " exceeds cap " + std::to_string(opts.cap));

  Patch out = patch;
  out.generation += r;
  out.scale_exp += r;

  unsigned hw = std::thread::hardware_concurrency();
  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(hw ? hw : 1);
  threads = std::min(threads, 16);

  const Point& s = rule.sigma();
  const Point& unit = rule.sigma_unit();

  // A generation holds few distinct rotations, so the rotation-dependent part
  // of every child pose is shared: precompute, per distinct parent rotation,
  // the child rotations and the rotated child translations. Each tile then
  // costs one complex multiply plus one add per child.
  struct ChildTemplate {
    int type;
    UnitRotation rot;
    Point offset;  // sigma * (parent_rot applied to child trans)
  };

  for (int step = 0; step < r; ++step) {
    const std::vector<Tile>& cur = out.tiles;

    std::unordered_map<std::string, size_t> rot_index;
    std::vector<std::vector<std::vector<ChildTemplate>>> tmpl;  // [rot][type][child]
    std::vector<size_t> tile_rot(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) {
      const UnitRotation& rot = cur[i].rot;
      std::string key = rot.reflect() ? "R" : "D";
      key += rot.re().to_string();
      key += "|";
      key += rot.im().to_string();
      auto [it, fresh] = rot_index.emplace(std::move(key), tmpl.size());
      if (fresh) {
        std::vector<std::vector<ChildTemplate>> per_type(
            static_cast<size_t>(rule.prototile_count()));
        for (int ty = 0; ty < rule.prototile_count(); ++ty) {
          for (const ChildPlacement& c : rule.children_of(ty)) {
            Point u = cmul(unit, rot.apply(Point{c.rot.re(), c.rot.im()}));
            Point off = cmul(s, rot.apply(c.trans));
            per_type[static_cast<size_t>(ty)].push_back(ChildTemplate{
                c.type,
                UnitRotation::unchecked(std::move(u.x), std::move(u.y),
                                        rot.reflect() != c.rot.reflect()),
                std::move(off)});
          }
        }
        tmpl.push_back(std::move(per_type));
      }
      tile_rot[i] = it->second;
    }

    auto emit_range = [&](size_t lo, size_t hi, std::vector<Tile>& sink) {
      for (size_t i = lo; i < hi; ++i) {
        const Tile& tile = cur[i];
        Point base = cmul(s, tile.trans);
        for (const ChildTemplate& ct : tmpl[tile_rot[i]][static_cast<size_t>(tile.type)]) {
          sink.push_back(Tile{ct.type, ct.rot, ct.offset + base});
        }
      }
    };

    size_t projected = 0;
    for (size_t i = 0; i < cur.size(); ++i) {
      projected += tmpl[tile_rot[i]][static_cast<size_t>(cur[i].type)].size();
    }

    std::vector<Tile> next;
    if (threads <= 1 || cur.size() < 2048) {
      next.reserve(projected);
      emit_range(0, cur.size(), next);
    } else {
      size_t chunk = (cur.size() + static_cast<size_t>(threads) - 1) / static_cast<size_t>(threads);
      std::vector<std::vector<Tile>> parts(static_cast<size_t>(threads));
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
          size_t lo = static_cast<size_t>(w) * chunk;
          size_t hi = std::min(cur.size(), lo + chunk);
          emit_range(lo, hi, parts[static_cast<size_t>(w)]);
        });
      }
      for (auto& th : pool) th.join();
      next.reserve(projected);
      for (auto& p : parts) {
        next.insert(next.end(), std::make_move_iterator(p.begin()),
                    std::make_move_iterator(p.end()));
      }
    }
    out.tiles = std::move(next);
  }
  canonical_sort(out.tiles);
  return out;
}

Polygon tile_polygon(const InflationRule& rule, const Tile& tile) {
  return rule.prototile(tile.type).shape.transformed(tile.pose());
}

Patch transform_patch(const Patch& patch, const Isometry& g) {
  Patch out = patch;
  for (Tile& t : out.tiles) {
    Isometry p = g.compose(t.pose());
    t.rot = p.rot;
    t.trans = p.trans;
  }
  canonical_sort(out.tiles);
  return out;
}

// ---------------------------------------------------------------------------
// Eq.-3 style surface-to-volume ratio

namespace {

// Squarefree part of a positive rational, or nullopt when factoring it would
// be unreasonable. sqrt(r) = sqrt(r / kernel) * sqrt(kernel) with the first
// factor rational whenever r is kernel times a perfect square.
std::optional<int> squarefree_kernel(const Rational& r) {
  BigInt prod = r.num() * r.den();
  if (!prod.fits_int64()) return std::nullopt;
  long long v = prod.as_int64();
  if (v <= 0 || v > 1'000'000'000'000LL) return std::nullopt;
  long long kernel = 1;
  for (long long p = 2; p * p <= v; ++p) {
    int c = 0;
    while (v % p == 0) {
      v /= p;
      ++c;
    }
    if (c & 1) kernel *= p;
  }
  kernel *= v;  // leftover prime
  if (kernel > std::numeric_limits<int>::max()) return std::nullopt;
  return static_cast<int>(kernel);
}

// Exact square root of an edge length squared, reaching into Q(sqrt D) for
// whichever radicand the value demands.
std::optional<Scalar> exact_edge_length(const Scalar& len2) {
  if (len2.is_exact() && len2.irr_part().is_zero()) {
    auto kernel = squarefree_kernel(len2.rat_part());
    if (!kernel) return std::nullopt;
    return len2.exact_sqrt(*kernel);
  }
  return len2.exact_sqrt();
}

// Inward unit-offset of a convex CCW polygon by clipping against shifted edge
// lines. Returns the remaining area (zero when the inset is empty). Exact when
// every edge length has a square root in a field the coordinates can join.
bool convex_inset_area(const Polygon& poly, Scalar& inset_area) {
  const auto& vs = poly.vertices();
  size_t n = vs.size();
  std::vector<Point> cur(vs.begin(), vs.end());
  for (size_t i = 0; i < n && cur.size() >= 3; ++i) {
    const Point& a = vs[i];
    const Point& b = vs[(i + 1) % n];
    Point d = b - a;
    Scalar len2 = d.x * d.x + d.y * d.y;
    auto len = exact_edge_length(len2);
    if (!len) return false;
    // inward normal of a CCW edge is (-dy, dx)/|d|
    Point nrm{-(d.y / *len), d.x / *len};
    Point a2 = a + nrm;
    Point b2 = b + nrm;
    cur = clip_halfplane(cur, a2, b2);
  }
  if (cur.size() < 3) {
    inset_area = Scalar::zero_like(vs[0].x);
    return true;
  }
  Scalar two = cur[0].x.is_exact() ? Scalar::exact_rat(Rational(2)) : Scalar::approx(2);
  Scalar s = Scalar::zero_like(cur[0].x);
  for (size_t i = 0; i < cur.size(); ++i) {
    const Point& p = cur[i];
    const Point& q = cur[(i + 1) % cur.size()];
    s = s + (p.x * q.y - q.x * p.y);
  }
  s = s / two;
  inset_area = s.sign() > 0 ? s : Scalar::zero_like(vs[0].x);
  return true;
}

Polygon to_approx(const Polygon& p) {
  std::vector<Point> vs;
  vs.reserve(p.size());
  for (const Point& v : p.vertices()) vs.push_back(Point::approx(v.dx(), v.dy()));
  return Polygon(std::move(vs));
}

BoundaryRatioReport monte_carlo_ratio(const Polygon& scaled, double t) {
  BoundaryRatioReport rep;
  rep.t = t;
  rep.method = "monte-carlo";
  rep.mc_seed = 0x7e55e11a5eedULL;
  std::mt19937_64 rng(rep.mc_seed);
  BBox bb = scaled.bbox();
  std::uniform_real_distribution<double> ux(bb.minx, bb.maxx), uy(bb.miny, bb.maxy);
  const auto& vs = scaled.vertices();
  size_t n = vs.size();
  long long inside = 0, near = 0;
  const int samples = 400000;
  for (int i = 0; i < samples; ++i) {
    double x = ux(rng), y = uy(rng);
    // double-precision crossing test
    bool in = false;
    for (size_t a = 0; a < n; ++a) {
      double ax = vs[a].dx(), ay = vs[a].dy();
      double bx = vs[(a + 1) % n].dx(), by = vs[(a + 1) % n].dy();
      if ((ay <= y) != (by <= y)) {
        double cx = ax + (y - ay) / (by - ay) * (bx - ax);
        if (x < cx) in = !in;
      }
    }
    if (!in) continue;
    ++inside;
    double dmin = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < n && dmin > 1.0; ++a) {
      const Point& pa = vs[a];
      const Point& pb = vs[(a + 1) % n];
      dmin = std::min(dmin, point_segment_distance(x, y, pa.dx(), pa.dy(), pb.dx(), pb.dy()));
    }
    if (dmin <= 1.0) ++near;
  }
  double p = inside > 0 ? static_cast<double>(near) / static_cast<double>(inside) : 1.0;
  rep.ratio = p;
  rep.std_error = inside > 0 ? std::sqrt(p * (1 - p) / static_cast<double>(inside)) : 0.0;
  return rep;
}

}  // namespace

BoundaryRatioReport boundary_ratio(const Polygon& p, const Rational& t) {
  if (t.sign() <= 0) fail(Errc::invalid_argument, "expansion factor t must be positive");
  Scalar ts = p.vertices()[0].x.is_exact() ? Scalar::exact_rat(t) : Scalar::approx(t.to_double());
  Polygon scaled = p.scaled(ts);
  BoundaryRatioReport rep;
  rep.t = t.to_double();
  if (p.is_convex()) {
    Scalar inset;
    bool inset_ok = false;
    try {
      inset_ok = convex_inset_area(scaled, inset);
    } catch (const Error&) {
      inset_ok = false;  // edges demanded incompatible radicands
    }
    if (inset_ok) {
      Scalar total = scaled.area();
      Scalar ratio = (total - inset) / total;
      rep.method = "convex-offset";
      rep.exact = ratio.is_exact();
      rep.exact_ratio = ratio;
      rep.ratio = ratio.to_double();
      return rep;
    }
    // edge lengths leave the field: redo the offsets in doubles
    Scalar inset_d;
    Polygon approx = to_approx(scaled);
    if (convex_inset_area(approx, inset_d)) {
      Scalar total = approx.area();
      rep.method = "convex-offset";
      rep.exact = false;
      rep.ratio = ((total - inset_d) / total).to_double();
      return rep;
    }
  }
  return monte_carlo_ratio(p.vertices()[0].x.is_exact() ? to_approx(scaled) : scaled,
                           t.to_double());
}

BoundaryRatioReport boundary_ratio(const Polygon& p, double t) {
  if (!(t > 0)) fail(Errc::invalid_argument, "expansion factor t must be positive");
  // doubles are dyadic rationals, so this conversion is exact
  int exp = 0;
  double m = std::frexp(t, &exp);
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational rt =
      exp >= 0 ? Rational(BigInt(mant) * BigInt::pow(BigInt(2), static_cast<unsigned>(exp)), BigInt(1))
               : Rational(BigInt(mant), BigInt::pow(BigInt(2), static_cast<unsigned>(-exp)));
  return boundary_ratio(p, rt);
}

// ---------------------------------------------------------------------------
// Patch files

std::string patch_to_json(const InflationRule& rule, const Patch& patch) {
  ojson root = ojson::object();
  root["schema"] = "tessella/patch-v1";
  root["rule_hash"] = patch.rule_hash;
  root["seed_type"] = patch.seed_type;
  root["r"] = patch.generation;
  root["scale_exponent"] = patch.scale_exp;
  Scalar base = rule.inflation_base();
  // rotations repeat across a patch; serialize each distinct one once
  std::map<std::string, ojson> rot_cache;
  ojson tiles = ojson::array();
  for (const Tile& t : patch.tiles) {
    ojson e = ojson::object();
    e["type"] = t.type;
    std::string key = t.rot.re().to_string() + "|" + t.rot.im().to_string();
    auto it = rot_cache.find(key);
    if (it == rot_cache.end()) {
      it = rot_cache.emplace(key, jsonio::rotation_to_json(t.rot, base, rule.radicand())).first;
    }
    e["rot"] = it->second;
    e["reflect"] = t.rot.reflect();
    e["trans"] = jsonio::point_to_json(t.trans);
    tiles.push_back(std::move(e));
  }
  root["tiles"] = std::move(tiles);
  return root.dump(2) + "\n";
}

Patch patch_from_json(const InflationRule& rule, const std::string& text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line, col;
    jsonio::locate_byte(text, e.byte > 0 ? e.byte - 1 : 0, line, col);
    fail(Errc::syntax_error, std::string("patch JSON syntax error: ") + e.what(), line, col);
  }
  if (!root.is_object() || !root.contains("tiles"))
    fail(Errc::syntax_error, "patch file must be an object with a tiles array");
  Patch p;
  p.rule_hash = root.value("rule_hash", std::string());
  p.seed_type = root.value("seed_type", 0);
  p.generation = root.value("r", 0);
  p.scale_exp = root.value("scale_exponent", 0);
  Scalar base = rule.inflation_base();
  for (const auto& e : root["tiles"]) {
    if (!e.is_object() || !e.contains("type") || !e.contains("rot") || !e.contains("trans"))
      fail(Errc::syntax_error, "tile entries need type, rot and trans");
    int type = e["type"].get<int>();
    if (type < 0 || type >= rule.prototile_count())
      fail(Errc::unknown_tile_type, "tile type " + std::to_string(type) + " outside rule");
    bool reflect = e.value("reflect", false);
    UnitRotation rot = jsonio::rotation_from_json(e["rot"], rule.radicand(), rule.mode(), base, reflect);
    Point trans = jsonio::point_from_json(e["trans"], rule.radicand(), rule.mode());
    p.tiles.push_back(Tile{type, rot, trans});
  }
  return p;
}

}  // namespace tessella
