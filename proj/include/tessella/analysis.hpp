#pragma once

#include <complex>
#include <optional>

#include "tessella/engine.hpp"

namespace tessella {

// Small dense integer matrix with exact entries (substitution matrices and
// their powers).
struct IntMatrix {
  int n = 0;
  std::vector<BigInt> a;  // row-major

  static IntMatrix zero(int n) {
    IntMatrix m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * static_cast<size_t>(n), BigInt(0));
    return m;
  }
  static IntMatrix identity(int n);

  BigInt& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; }
  const BigInt& at(int i, int j) const {
    return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  IntMatrix pow(int r) const;
  bool entrywise_positive() const;
  BigInt column_sum(int k) const;
};

struct SubstitutionMatrix {
  IntMatrix A;  // A(j,k) = number of type-j children in F(P_k)
};

SubstitutionMatrix substitution_matrix(const InflationRule& rule);

// angle_table(rule)[j][k] lists the rotation parts (with reflect flags) of the
// type-j children in F(P_k), one entry per child.
using AngleTable = std::vector<std::vector<std::vector<UnitRotation>>>;
AngleTable angle_table(const InflationRule& rule);

using CMat = std::vector<std::vector<std::complex<double>>>;

// How reflected children enter A[m]: `plain` uses e^{+i m a}, `conjugated`
// uses e^{-i m a}. The two agree on rules without reflecting poses.
enum class ReflectionConvention { plain, conjugated };

struct TwistedMatrix {
  int m = 0;
  ReflectionConvention convention = ReflectionConvention::plain;
  CMat entries;
};

TwistedMatrix twisted_matrix(const InflationRule& rule, int m,
                             ReflectionConvention conv = ReflectionConvention::plain);

CMat to_complex(const IntMatrix& m);
CMat cmat_mul(const CMat& x, const CMat& y);
CMat cmat_pow(const CMat& m, int r);

// Largest eigenvalue modulus. Non-negative real matrices go through power
// iteration (tolerance 1e-10, at most 1e5 iterations, SpectralNoConverge on
// failure); complex matrices go through the characteristic polynomial.
double spectral_radius(const CMat& m);
double spectral_radius_power(const CMat& m, double tol = 1e-10, int max_iter = 100000);
double spectral_radius_charpoly(const CMat& m);

struct RotationVerdict {
  enum class Kind { rational, irrational, undecided } kind;
  int order = 0;  // q with u^q = 1 for rational verdicts
  std::string method;
};

RotationVerdict is_rational_multiple_of_pi(const UnitRotation& u);

struct HypothesisWitnessB {
  int seed_type = 0;
  size_t tile_a = 0, tile_b = 0;
  UnitRotation relative;
  RotationVerdict verdict;
};

struct HypothesisReport {
  int r = 0;
  bool a_holds = false;
  std::vector<std::pair<int, int>> a_missing;  // (seed prototile, missing type)
  bool b_holds = false;
  std::optional<HypothesisWitnessB> b_witness;
  bool b_exhaustive = false;  // every same-type pair was examined
};

HypothesisReport check_hypotheses(const InflationRule& rule, int r, long long cap = 5'000'000);

struct WeylResult {
  int seed_type = 0, r = 0, m = 0;
  std::complex<double> value;         // direct enumeration over F^r(P_k)
  std::complex<double> matrix_value;  // 1^T A[m]^r e_k / 1^T A^r e_k
  size_t tiles = 0;
  std::string convention;  // how reflected tiles entered the sum
};

WeylResult weyl_sum(const InflationRule& rule, int seed_type, int r, int m,
                    long long cap = 5'000'000,
                    ReflectionConvention conv = ReflectionConvention::plain);

struct OrientationHistogram {
  int bins = 0;
  std::vector<long long> direct;
  std::vector<long long> reflected;
  long long total = 0;
  size_t distinct_rotations = 0;  // exact distinct pose rotations in the patch
};

OrientationHistogram orientation_histogram(const Patch& patch, int bins);

struct FrequencyRow {
  int r = 0;
  double max_pair_l1 = 0;
  std::vector<std::vector<double>> nu;   // per seed, type-frequency vector
  std::vector<double> dist_to_perron;    // per seed, L1 distance
};

struct FrequencyTable {
  std::vector<double> perron;  // L1-normalized Perron vector of A
  std::vector<FrequencyRow> rows;
};

FrequencyTable frequency_convergence(const InflationRule& rule, int r_max);

std::vector<double> perron_vector(const IntMatrix& A, double tol = 1e-12);

// Full machine-readable report for the analyze command.
std::string analysis_report_json(const InflationRule& rule, int r, const std::vector<int>& ms,
                                 long long cap);

}  // namespace tessella
