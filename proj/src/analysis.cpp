#include "tessella/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "tessella/json_io.hpp"

namespace tessella {

using jsonio::ojson;

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m = zero(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = BigInt(1);
  return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix r = IntMatrix::zero(x.n);
  for (int i = 0; i < x.n; ++i) {
    for (int k = 0; k < x.n; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < x.n; ++j) {
        r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    }
  }
  return r;
}

IntMatrix IntMatrix::pow(int r) const {
  IntMatrix acc = identity(n);
  IntMatrix base = *this;
  while (r > 0) {
    if (r & 1) acc = acc * base;
    r >>= 1;
    if (r) base = base * base;
  }
  return acc;
}

bool IntMatrix::entrywise_positive() const {
  for (const BigInt& v : a)
    if (v.sign() <= 0) return false;
  return true;
}

BigInt IntMatrix::column_sum(int k) const {
  BigInt s;
  for (int i = 0; i < n; ++i) s += at(i, k);
  return s;
}

SubstitutionMatrix substitution_matrix(const InflationRule& rule) {
  int n = rule.prototile_count();
  SubstitutionMatrix m{IntMatrix::zero(n)};
  for (int k = 0; k < n; ++k) {
    for (const ChildPlacement& c : rule.children_of(k)) {
      m.A.at(c.type, k) += BigInt(1);
    }
  }
  return m;
}

AngleTable angle_table(const InflationRule& rule) {
  int n = rule.prototile_count();
  AngleTable t(static_cast<size_t>(n),
               std::vector<std::vector<UnitRotation>>(static_cast<size_t>(n)));
  for (int k = 0; k < n; ++k) {
    for (const ChildPlacement& c : rule.children_of(k)) {
      t[static_cast<size_t>(c.type)][static_cast<size_t>(k)].push_back(c.rot);
    }
  }
  return t;
}

namespace {

std::complex<double> unit_to_complex(const UnitRotation& u) {
  return {u.re().to_double(), u.im().to_double()};
}

std::complex<double> int_pow(std::complex<double> z, int m) {
  if (m < 0) {
    z = std::conj(z);  // |z| = 1
    m = -m;
  }
  std::complex<double> r{1.0, 0.0};
  while (m) {
    if (m & 1) r *= z;
    m >>= 1;
    if (m) z *= z;
  }
  return r;
}

std::complex<double> child_phase(const UnitRotation& u, int m, ReflectionConvention conv) {
  std::complex<double> z = unit_to_complex(u);
  if (u.reflect() && conv == ReflectionConvention::conjugated) z = std::conj(z);
  return int_pow(z, m);
}

}  // namespace

TwistedMatrix twisted_matrix(const InflationRule& rule, int m, ReflectionConvention conv) {
  int n = rule.prototile_count();
  TwistedMatrix t;
  t.m = m;
  t.convention = conv;
  t.entries.assign(static_cast<size_t>(n),
                   std::vector<std::complex<double>>(static_cast<size_t>(n), {0.0, 0.0}));
  for (int k = 0; k < n; ++k) {
    for (const ChildPlacement& c : rule.children_of(k)) {
      t.entries[static_cast<size_t>(c.type)][static_cast<size_t>(k)] += child_phase(c.rot, m, conv);
    }
  }
  return t;
}

CMat to_complex(const IntMatrix& m) {
  CMat r(static_cast<size_t>(m.n),
         std::vector<std::complex<double>>(static_cast<size_t>(m.n)));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j).to_double();
  return r;
}

CMat cmat_mul(const CMat& x, const CMat& y) {
  size_t n = x.size();
  CMat r(n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
  return r;
}

CMat cmat_pow(const CMat& m, int r) {
  size_t n = m.size();
  CMat acc(n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
  for (size_t i = 0; i < n; ++i) acc[i][i] = 1.0;
  CMat base = m;
  while (r > 0) {
    if (r & 1) acc = cmat_mul(acc, base);
    r >>= 1;
    if (r) base = cmat_mul(base, base);
  }
  return acc;
}

double spectral_radius_power(const CMat& m, double tol, int max_iter) {
  size_t n = m.size();
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  double prev = 0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> y(n, 0.0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) y[i] += m[i][j].real() * v[j];
    double norm = 0;
    for (double x : y) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0) return 0;
    for (size_t i = 0; i < n; ++i) v[i] = y[i] / norm;
    if (std::abs(norm - prev) <= tol * std::max(1.0, norm)) return norm;
    prev = norm;
  }
  fail(Errc::spectral_no_converge,
       "power iteration did not converge; last estimate " + std::to_string(prev));
}

double spectral_radius_charpoly(const CMat& m) {
  // Faddeev-LeVerrier for the characteristic polynomial, then Durand-Kerner.
  size_t n = m.size();
  std::vector<std::complex<double>> coeff(n + 1, {0.0, 0.0});
  coeff[0] = 1.0;
  CMat M(n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
  for (size_t i = 0; i < n; ++i) M[i][i] = 1.0;  // M_0 = I
  for (size_t k = 1; k <= n; ++k) {
    M = cmat_mul(m, M);
    std::complex<double> tr{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) tr += M[i][i];
    coeff[k] = -tr / static_cast<double>(k);
    for (size_t i = 0; i < n; ++i) M[i][i] += coeff[k];
  }
  double bound = 1.0;
  for (size_t k = 1; k <= n; ++k) bound = std::max(bound, std::abs(coeff[k]));
  bound += 1.0;
  std::vector<std::complex<double>> roots(n);
  std::complex<double> seed{0.4, 0.9};
  std::complex<double> cur{1.0, 0.0};
  for (size_t i = 0; i < n; ++i) {
    cur *= seed;
    roots[i] = bound * cur;
  }
  auto eval = [&](std::complex<double> z) {
    std::complex<double> p = coeff[0];
    for (size_t k = 1; k <= n; ++k) p = p * z + coeff[k];
    return p;
  };
  for (int it = 0; it < 1000; ++it) {
    double move = 0;
    for (size_t i = 0; i < n; ++i) {
      std::complex<double> denom{1.0, 0.0};
      for (size_t j = 0; j < n; ++j) {
        if (j != i) denom *= roots[i] - roots[j];
      }
      if (std::abs(denom) < 1e-300) continue;
      std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-13 * bound) break;
  }
  double rho = 0;
  for (const auto& z : roots) rho = std::max(rho, std::abs(z));
  return rho;
}

double spectral_radius(const CMat& m) {
  bool nonneg_real = true;
  for (const auto& row : m)
    for (const auto& z : row)
      if (z.imag() != 0.0 || z.real() < 0.0) nonneg_real = false;
  if (nonneg_real) {
    // primitive non-negative case per the design contract
    try {
      return spectral_radius_power(m);
    } catch (const Error&) {
      return spectral_radius_charpoly(m);
    }
  }
  return spectral_radius_charpoly(m);
}

RotationVerdict is_rational_multiple_of_pi(const UnitRotation& u) {
  if (u.reflect()) fail(Errc::not_a_rotation, "reflecting congruence has no rotation angle");
  if (u.re().is_exact()) {
    // Roots of unity in a quartic number field have order q with phi(q) <= 4.
    static const int candidates[] = {1, 2, 3, 4, 5, 6, 8, 10, 12};
    for (int q : candidates) {
      if (u.pow(q).is_identity()) {
        int minimal = q;
        for (int d : candidates) {
          if (d < minimal && q % d == 0 && u.pow(d).is_identity()) minimal = d;
        }
        return {RotationVerdict::Kind::rational, minimal,
                "exact power test u^q = 1, q in {1,...,12}"};
      }
    }
    return {RotationVerdict::Kind::irrational, 0,
            "exact root-of-unity exclusion (field degree bound phi(q) <= 4)"};
  }
  // approx mode: continued fraction expansion of angle/pi, denominators <= 1e4
  double x = u.angle() / M_PI;
  double target = x;
  long long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents of the CF
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    long long ai = static_cast<long long>(fl);
    long long p2 = ai * p0 + p1;
    long long q2 = ai * q0 + q1;
    if (q2 > 10000) break;
    p1 = p0; q1 = q0; p0 = p2; q0 = q2;
    double approx_val = static_cast<double>(p0) / static_cast<double>(q0);
    if (std::abs(approx_val - target) < 1e-9) {
      return {RotationVerdict::Kind::rational, static_cast<int>(q0 == 0 ? 1 : q0),
              "continued fraction of angle/pi (denominator bound 1e4)"};
    }
    double rem = frac - fl;
    if (rem < 1e-12) break;
    frac = 1.0 / rem;
  }
  return {RotationVerdict::Kind::undecided, 0,
          "no small rational angle found; approx mode cannot certify irrationality"};
}

namespace {

std::string rotation_key(const UnitRotation& u) {
  std::string s = u.reflect() ? "R|" : "D|";
  s += u.re().to_string();
  s += "|";
  s += u.im().to_string();
  return s;
}

}  // namespace

HypothesisReport check_hypotheses(const InflationRule& rule, int r, long long cap) {
  if (!rule.validated()) fail(Errc::invalid_argument, "hypotheses need a validated rule");
  if (r < 1) fail(Errc::invalid_argument, "hypothesis generation r must be >= 1");
  HypothesisReport report;
  report.r = r;

  SubstitutionMatrix sm = substitution_matrix(rule);
  IntMatrix Ar = sm.A.pow(r);
  report.a_holds = true;
  for (int k = 0; k < Ar.n; ++k) {
    for (int j = 0; j < Ar.n; ++j) {
      if (Ar.at(j, k).sign() <= 0) {
        report.a_holds = false;
        report.a_missing.emplace_back(k, j);
      }
    }
  }

  report.b_holds = false;
  report.b_exhaustive = true;
  EngineOptions opts;
  opts.cap = cap;
  for (int k = 0; k < rule.prototile_count() && !report.b_holds; ++k) {
    Patch patch = inflate_patch(rule, seed_patch(rule, k), r, opts);
    // distinct rotations per (type, reflect) bucket, with a representative tile
    std::map<std::pair<int, bool>, std::map<std::string, std::pair<UnitRotation, size_t>>> buckets;
    for (size_t i = 0; i < patch.tiles.size(); ++i) {
      const Tile& t = patch.tiles[i];
      auto& bucket = buckets[{t.type, t.rot.reflect()}];
      bucket.emplace(rotation_key(t.rot), std::make_pair(t.rot, i));
    }
    for (const auto& [key, bucket] : buckets) {
      (void)key;
      std::vector<std::pair<UnitRotation, size_t>> rots;
      rots.reserve(bucket.size());
      for (const auto& [rk, entry] : bucket) {
        (void)rk;
        rots.push_back(entry);
      }
      for (size_t a = 0; a < rots.size() && !report.b_holds; ++a) {
        for (size_t b = a + 1; b < rots.size() && !report.b_holds; ++b) {
          UnitRotation rel = rots[b].first.compose(rots[a].first.inverse());
          UnitRotation rel_direct(rel.re(), rel.im(), false);
          RotationVerdict v = is_rational_multiple_of_pi(rel_direct);
          if (v.kind == RotationVerdict::Kind::irrational) {
            report.b_holds = true;
            report.b_witness =
                HypothesisWitnessB{k, rots[a].second, rots[b].second, rel_direct, v};
          } else if (v.kind == RotationVerdict::Kind::undecided) {
            report.b_exhaustive = false;
          }
        }
      }
    }
  }
  return report;
}

WeylResult weyl_sum(const InflationRule& rule, int seed_type, int r, int m, long long cap,
                    ReflectionConvention conv) {
  if (m == 0)
    fail(Errc::use_count_instead,
         "m = 0 renders every term 1; use the tile count / substitution matrix instead");
  EngineOptions opts;
  opts.cap = cap;
  Patch patch = inflate_patch(rule, seed_patch(rule, seed_type), r, opts);
  // Stored poses live in the expanding frame, rotated by sigma_unit^r against
  // the defining-prototile frame; undo that so theta is the angle "compared to
  // the defining prototile".
  std::complex<double> frame{rule.sigma_unit().dx(), rule.sigma_unit().dy()};
  std::complex<double> deframe = int_pow(std::conj(frame), patch.scale_exp);
  std::complex<double> sum{0.0, 0.0};
  for (const Tile& t : patch.tiles) {
    std::complex<double> z = deframe * unit_to_complex(t.rot);
    std::complex<double> ph = int_pow(z, m);
    if (t.rot.reflect()) ph = std::conj(ph);  // reflected tiles contribute e^{-im theta}
    sum += ph;
  }
  WeylResult res;
  res.seed_type = seed_type;
  res.r = r;
  res.m = m;
  res.tiles = patch.tiles.size();
  res.value = sum / static_cast<double>(patch.tiles.size());
  res.convention = "reflected tiles contribute exp(-i*m*theta)";

  TwistedMatrix tm = twisted_matrix(rule, m, conv);
  CMat Amr = cmat_pow(tm.entries, r);
  std::complex<double> num{0.0, 0.0};
  for (size_t i = 0; i < Amr.size(); ++i) num += Amr[i][static_cast<size_t>(seed_type)];
  SubstitutionMatrix sm = substitution_matrix(rule);
  double den = sm.A.pow(r).column_sum(seed_type).to_double();
  res.matrix_value = num / den;
  return res;
}

OrientationHistogram orientation_histogram(const Patch& patch, int bins) {
  if (bins < 1) fail(Errc::invalid_argument, "histogram needs at least one bin");
  OrientationHistogram h;
  h.bins = bins;
  h.direct.assign(static_cast<size_t>(bins), 0);
  h.reflected.assign(static_cast<size_t>(bins), 0);
  std::map<std::string, bool> distinct;
  for (const Tile& t : patch.tiles) {
    double a = t.rot.angle();
    if (a < 0) a += 2 * M_PI;
    int idx = std::min(bins - 1, static_cast<int>(a / (2 * M_PI) * bins));
    if (t.rot.reflect()) {
      ++h.reflected[static_cast<size_t>(idx)];
    } else {
      ++h.direct[static_cast<size_t>(idx)];
    }
    distinct.emplace(rotation_key(t.rot), true);
    ++h.total;
  }
  h.distinct_rotations = distinct.size();
  return h;
}

std::vector<double> perron_vector(const IntMatrix& A, double tol) {
  int n = A.n;
  std::vector<double> v(static_cast<size_t>(n), 1.0 / n);
  for (int it = 0; it < 100000; ++it) {
    std::vector<double> y(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        y[static_cast<size_t>(i)] += A.at(i, j).to_double() * v[static_cast<size_t>(j)];
    double norm = 0;
    for (double x : y) norm += std::abs(x);
    if (norm == 0) return v;
    double diff = 0;
    for (int i = 0; i < n; ++i) {
      y[static_cast<size_t>(i)] /= norm;
      diff += std::abs(y[static_cast<size_t>(i)] - v[static_cast<size_t>(i)]);
    }
    v = std::move(y);
    if (diff < tol) break;
  }
  return v;
}

FrequencyTable frequency_convergence(const InflationRule& rule, int r_max) {
  SubstitutionMatrix sm = substitution_matrix(rule);
  int n = sm.A.n;
  // Wielandt bound: A primitive iff A^((n-1)^2 + 1) is entrywise positive
  int wb = (n - 1) * (n - 1) + 1;
  if (!sm.A.pow(wb).entrywise_positive())
    fail(Errc::reducible_matrix, "substitution matrix is not primitive");

  FrequencyTable table;
  table.perron = perron_vector(sm.A);
  IntMatrix Ar = IntMatrix::identity(n);
  for (int r = 1; r <= r_max; ++r) {
    Ar = Ar * sm.A;
    FrequencyRow row;
    row.r = r;
    row.nu.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      double total = Ar.column_sum(k).to_double();
      auto& nu = row.nu[static_cast<size_t>(k)];
      nu.resize(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) nu[static_cast<size_t>(j)] = Ar.at(j, k).to_double() / total;
      double dist = 0;
      for (int j = 0; j < n; ++j)
        dist += std::abs(nu[static_cast<size_t>(j)] - table.perron[static_cast<size_t>(j)]);
      row.dist_to_perron.push_back(dist);
    }
    for (int k = 0; k < n; ++k) {
      for (int k2 = k + 1; k2 < n; ++k2) {
        double l1 = 0;
        for (int j = 0; j < n; ++j)
          l1 += std::abs(row.nu[static_cast<size_t>(k)][static_cast<size_t>(j)] -
                         row.nu[static_cast<size_t>(k2)][static_cast<size_t>(j)]);
        row.max_pair_l1 = std::max(row.max_pair_l1, l1);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

ojson cmat_to_json(const CMat& m) {
  ojson rows = ojson::array();
  for (const auto& row : m) {
    ojson r = ojson::array();
    for (const auto& z : row) r.push_back(ojson::array({z.real(), z.imag()}));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::string analysis_report_json(const InflationRule& rule, int r, const std::vector<int>& ms,
                                 long long cap) {
  ojson root = ojson::object();
  root["schema"] = "tessella/analysis-v1";
  root["rule_hash"] = rule.hash();

  SubstitutionMatrix sm = substitution_matrix(rule);
  ojson a = ojson::array();
  for (int i = 0; i < sm.A.n; ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < sm.A.n; ++j) row.push_back(sm.A.at(i, j).to_double());
    a.push_back(row);
  }
  root["A"] = a;

  ojson am = ojson::object();
  ojson am_conj = ojson::object();
  ojson rho_am = ojson::object();
  ojson rho_am_conj = ojson::object();
  for (int m : ms) {
    TwistedMatrix plain = twisted_matrix(rule, m, ReflectionConvention::plain);
    TwistedMatrix conj = twisted_matrix(rule, m, ReflectionConvention::conjugated);
    am[std::to_string(m)] = cmat_to_json(plain.entries);
    am_conj[std::to_string(m)] = cmat_to_json(conj.entries);
    rho_am[std::to_string(m)] = spectral_radius(plain.entries);
    rho_am_conj[std::to_string(m)] = spectral_radius(conj.entries);
  }
  root["A_m"] = am;
  root["A_m_conj"] = am_conj;
  ojson spectral = ojson::object();
  spectral["rho_A"] = spectral_radius(to_complex(sm.A));
  spectral["rho_A_m"] = rho_am;
  spectral["rho_A_m_conj"] = rho_am_conj;
  root["spectral"] = spectral;

  HypothesisReport hyp = check_hypotheses(rule, r, cap);
  ojson h = ojson::object();
  h["r"] = hyp.r;
  h["a"] = hyp.a_holds;
  h["b"] = hyp.b_holds;
  h["b_exhaustive"] = hyp.b_exhaustive;
  if (!hyp.a_missing.empty()) {
    ojson miss = ojson::array();
    for (auto [seed, type] : hyp.a_missing)
      miss.push_back(ojson::object({{"seed", seed}, {"missing_type", type}}));
    h["a_missing"] = miss;
  }
  if (hyp.b_witness) {
    ojson w = ojson::object();
    w["seed"] = hyp.b_witness->seed_type;
    w["tile_a"] = static_cast<long long>(hyp.b_witness->tile_a);
    w["tile_b"] = static_cast<long long>(hyp.b_witness->tile_b);
    w["relative_rotation"] = jsonio::rotation_to_json(hyp.b_witness->relative, rule.inflation_base(), rule.radicand());
    w["verdict"] = hyp.b_witness->verdict.kind == RotationVerdict::Kind::irrational
                       ? "irrational"
                       : "rational";
    w["method"] = hyp.b_witness->verdict.method;
    h["witness"] = w;
  }
  root["hypotheses"] = h;

  ojson weyl = ojson::array();
  for (int m : ms) {
    if (m == 0) continue;
    for (int k = 0; k < rule.prototile_count(); ++k) {
      WeylResult wr = weyl_sum(rule, k, r, m, cap);
      ojson w = ojson::object();
      w["m"] = m;
      w["r"] = r;
      w["seed"] = k;
      w["value"] = ojson::array({wr.value.real(), wr.value.imag()});
      w["matrix_value"] = ojson::array({wr.matrix_value.real(), wr.matrix_value.imag()});
      w["convention"] = wr.convention;
      weyl.push_back(w);
    }
  }
  root["weyl"] = weyl;

  FrequencyTable freq = frequency_convergence(rule, std::max(1, std::min(r, 24)));
  ojson f = ojson::object();
  f["perron"] = freq.perron;
  ojson rows = ojson::array();
  for (const auto& row : freq.rows) {
    ojson rj = ojson::object();
    rj["r"] = row.r;
    rj["max_pair_l1"] = row.max_pair_l1;
    rj["nu"] = row.nu;
    rj["dist_to_perron"] = row.dist_to_perron;
    rows.push_back(rj);
  }
  f["rows"] = rows;
  root["frequencies"] = f;

  return root.dump(2) + "\n";
}

}  // namespace tessella
