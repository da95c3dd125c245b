// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>

#include "tessella/analysis.hpp"
#include "tessella/space.hpp"

using namespace tessella;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int id, const char* label, bool ok, const std::string& detail = "") {
  printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, label,
         detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Scalar ex(long long n, long long d = 1) { return Scalar::exact_rat(Rational(n, d)); }

void incenter(const Polygon& tri, double& x, double& y) {
  double ax = tri[0].dx(), ay = tri[0].dy();
  double bx = tri[1].dx(), by = tri[1].dy();
  double cx = tri[2].dx(), cy = tri[2].dy();
  double a = std::hypot(bx - cx, by - cy);
  double b = std::hypot(ax - cx, ay - cy);
  double c = std::hypot(ax - bx, ay - by);
  x = (a * ax + b * bx + c * cx) / (a + b + c);
  y = (a * ay + b * by + c * cy) / (a + b + c);
}

}  // namespace

int main() {
  // 1. Exact validation of both builtin rules, under a second.
  {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;
    try {
      InflationRule sq = builtin_rule(Builtin::square);
      InflationRule pw = builtin_rule(Builtin::pinwheel);
      RuleValidationReport rs = validate_rule(sq);
      RuleValidationReport rp = validate_rule(pw);
      ok = rs.ok() && rp.ok();
      ok = ok && sq.mode() == Mode::exact && pw.mode() == Mode::exact;
      double t = seconds_since(start);
      char buf[80];
      snprintf(buf, sizeof buf, "square + pinwheel exact cover in %.3f s", t);
      detail = buf;
      ok = ok && t < 1.0;
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    criterion(1, "exact-cover validation of builtin rules", ok, detail);
  }

  InflationRule square = builtin_rule(Builtin::square);
  InflationRule pin = builtin_rule(Builtin::pinwheel);

  // 2. Unique-ergodicity hypotheses for pinwheel at r = 2.
  {
    auto start = Clock::now();
    HypothesisReport h = check_hypotheses(pin, 2);
    bool root_excluded = false;
    std::string detail;
    if (h.b_witness) {
      const UnitRotation& rel = h.b_witness->relative;
      root_excluded = true;
      for (int q = 1; q <= 12; ++q) {
        if (rel.pow(q).is_identity()) root_excluded = false;
      }
      detail = "witness rotation excluded as a root of unity for all q <= 12";
    }
    double t = seconds_since(start);
    bool ok = h.a_holds && h.b_holds && root_excluded && h.b_witness &&
              h.b_witness->verdict.kind == RotationVerdict::Kind::irrational && t < 1.0;
    criterion(2, "pinwheel satisfies hypotheses (a) and (b) at r = 2", ok, detail);
  }

  // 3. Square-rule negative control: (b) fails exhaustively for r <= 5.
  {
    bool ok = true;
    for (int r = 1; r <= 5 && ok; ++r) {
      HypothesisReport h = check_hypotheses(square, r);
      ok = h.a_holds && !h.b_holds && h.b_exhaustive;
    }
    criterion(3, "square rule fails hypothesis (b) for every r <= 5", ok);
  }

  // 4. Matrix identities.
  {
    bool ok = true;
    for (const InflationRule* rule : {&square, &pin}) {
      SubstitutionMatrix sm = substitution_matrix(*rule);
      TwistedMatrix a0 = twisted_matrix(*rule, 0);
      for (int i = 0; i < sm.A.n; ++i) {
        for (int j = 0; j < sm.A.n; ++j) {
          if (a0.entries[i][j] != std::complex<double>(sm.A.at(i, j).to_double(), 0.0)) ok = false;
        }
      }
      for (int m = -8; m <= 8; ++m) {
        TwistedMatrix am = twisted_matrix(*rule, m);
        for (int i = 0; i < sm.A.n; ++i) {
          for (int j = 0; j < sm.A.n; ++j) {
            if (std::abs(am.entries[i][j]) > sm.A.at(i, j).to_double() + 1e-12) ok = false;
          }
        }
      }
      Scalar base = rule->inflation_base();
      for (int k = 0; k < sm.A.n; ++k) {
        Scalar lhs = Scalar::zero_like(rule->lambda());
        for (int j = 0; j < sm.A.n; ++j) {
          lhs = lhs + ex(sm.A.at(j, k).as_int64()) * rule->prototile(j).shape.area();
        }
        if (!(lhs == base * rule->prototile(k).shape.area())) ok = false;
      }
    }
    criterion(4, "A[0] = A, |A[m]| <= A for |m| <= 8, exact column area identity", ok);
  }

  // 5. Equidistribution evidence at desk scale.
  {
    auto start = Clock::now();
    bool ok = true;
    std::string detail = "|W_6| vs |W_2|:";
    for (int m = 1; m <= 4; ++m) {
      WeylResult w2 = weyl_sum(pin, 0, 2, m);
      WeylResult w6 = weyl_sum(pin, 0, 6, m);
      char buf[80];
      snprintf(buf, sizeof buf, " m=%d %.5f<%.5f", m, std::abs(w6.value), std::abs(w2.value));
      detail += buf;
      if (!(std::abs(w6.value) < std::abs(w2.value))) ok = false;
    }
    double rho_a = spectral_radius(to_complex(substitution_matrix(pin).A));
    if (std::abs(rho_a - 5.0) > 1e-8) ok = false;
    for (int m = 1; m <= 4; ++m) {
      for (auto conv : {ReflectionConvention::plain, ReflectionConvention::conjugated}) {
        double rho = spectral_radius(twisted_matrix(pin, m, conv).entries);
        if (!(rho < rho_a)) ok = false;
      }
    }
    double t = seconds_since(start);
    ok = ok && t < 30.0;
    criterion(5, "Weyl sums shrink from r=2 to r=6; rho(A[m]) < rho(A) = 5", ok, detail);
  }

  // 6. Statistical-identity proxy via frequency vectors.
  {
    FrequencyTable ft = frequency_convergence(pin, 8);
    const FrequencyRow& last = ft.rows.back();
    bool ok = last.r == 8 && last.max_pair_l1 < 1e-3 && last.dist_to_perron[0] < 1e-3 &&
              last.dist_to_perron[1] < 1e-3;
    char buf[120];
    snprintf(buf, sizeof buf, "|nu_8(0)-nu_8(1)|_1 = %.2e, dist to Perron = %.2e / %.2e",
             last.max_pair_l1, last.dist_to_perron[0], last.dist_to_perron[1]);
    criterion(6, "seed frequencies agree and converge to the Perron vector", ok, buf);
  }

  // 7. Engine/analysis cross-check and exhaustive disjointness.
  {
    bool ok = true;
    for (const InflationRule* rule : {&square, &pin}) {
      SubstitutionMatrix sm = substitution_matrix(*rule);
      for (int k = 0; k < rule->prototile_count(); ++k) {
        for (int r = 0; r <= 6; ++r) {
          Patch p = inflate_patch(*rule, seed_patch(*rule, k), r);
          if (BigInt(static_cast<long long>(p.tiles.size())) != sm.A.pow(r).column_sum(k))
            ok = false;
        }
      }
    }
    Patch p4 = inflate_patch(pin, seed_patch(pin, 0), 4);
    std::vector<Polygon> polys;
    polys.reserve(p4.tiles.size());
    for (const Tile& t : p4.tiles) polys.push_back(tile_polygon(pin, t));
    size_t overlaps = 0;
    for (size_t i = 0; i < polys.size(); ++i) {
      for (size_t j = i + 1; j < polys.size(); ++j) {
        if (interiors_overlap(polys[i], polys[j]).overlapping) ++overlaps;
      }
    }
    ok = ok && p4.tiles.size() == 625 && overlaps == 0;
    criterion(7, "|F^r(P)| = 1'A^r e_k (r <= 6) and F^4 pinwheel disjointness (625 tiles)", ok);
  }

  // 8. Surface-to-volume ratio of the expanded unit square.
  {
    Polygon sq({Point::exact(0, 0), Point::exact(1, 0), Point::exact(1, 1), Point::exact(0, 1)});
    auto r4 = boundary_ratio(sq, Rational(4));
    bool ok = r4.exact && r4.exact_ratio == ex(3, 4);
    auto r100 = boundary_ratio(sq, Rational(100));
    ok = ok && std::abs(r100.ratio - (0.04 - 0.0004)) < 1e-3;
    double prev = 2.0;
    for (long long t : {2, 4, 8, 16, 32}) {
      double v = boundary_ratio(sq, Rational(t)).ratio;
      if (v > prev) ok = false;
      prev = v;
    }
    criterion(8, "boundary ratio: exact 3/4 at t = 4, 1/t decay, monotone", ok);
  }

  // 9. Metric sanity on centered pinwheel patches.
  {
    Patch p6 = inflate_patch(pin, seed_patch(pin, 0), 6);
    double ox, oy;
    incenter(covered_region(pin, p6), ox, oy);
    CenteredPatch base = centered_patch(pin, p6, ox, oy);
    MetricReport self = patch_distance(pin, base, base);
    bool ok = self.floor_hit;
    double prev = 2.0;
    for (auto [num, den] : {std::pair<long long, long long>{1, 5}, {1, 10}, {1, 20}, {1, 100}}) {
      CenteredPatch moved = translated_centered_patch(pin, base, ex(num, den), ex(0));
      MetricReport d1 = patch_distance(pin, base, moved);
      MetricReport d2 = patch_distance(pin, moved, base);
      if (d1.epsilon != d2.epsilon) ok = false;  // symmetric, exactly
      if (d1.epsilon > prev) ok = false;         // monotone in delta
      prev = d1.epsilon;
    }
    char buf[80];
    snprintf(buf, sizeof buf, "floor %.4f at coverage radius %.1f", self.epsilon, base.radius);
    criterion(9, "metric floor, translation monotonicity, exact symmetry", ok, buf);
  }

  // 10. Performance and determinism at r = 8.
  {
    auto start = Clock::now();
    EngineOptions def;  // hardware worker count
    Patch fast = inflate_patch(pin, seed_patch(pin, 0), 8, def);
    double t = seconds_since(start);
    EngineOptions one;
    one.threads = 1;
    Patch serial = inflate_patch(pin, seed_patch(pin, 0), 8, one);
    bool same = fast.tiles.size() == serial.tiles.size() && fast.tiles.size() == 390625;
    for (size_t i = 0; i < fast.tiles.size() && same; ++i) {
      same = fast.tiles[i].type == serial.tiles[i].type &&
             fast.tiles[i].rot == serial.tiles[i].rot &&
             fast.tiles[i].trans == serial.tiles[i].trans;
    }
    char buf[80];
    snprintf(buf, sizeof buf, "390625 tiles in %.2f s, canonical across 1/N workers", t);
    criterion(10, "pinwheel r = 8 under 5 s, deterministic", t < 5.0 && same, buf);
  }

  printf("%s: %d criteria failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
         g_failures);
  return g_failures == 0 ? 0 : 1;
}
