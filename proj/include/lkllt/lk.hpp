#pragma once

#include <string>
#include <vector>

#include "lkllt/metrics.hpp"

namespace lkllt {

/// Result of the exponent algebra for ‖Δ^k f‖_q <= C ‖f‖_p^{1-β} ‖Δ^n f‖_r^β.
struct BetaExponent {
  bool admissible = false;
  double beta = 0.0;
};

/// p, q, r in [1, inf]; pass std::numeric_limits<double>::infinity() for inf.
BetaExponent beta_exponent(int k, int n, double p, double q, double r);

/// The five (d1, d2, β) rows for which the smoothed-metric inequality holds.
enum class ComboRow { LocalVsTv, LocalVsKolmogorov, LocalVsWasserstein, TvVsWasserstein,
                      KolmogorovVsWasserstein };

struct LKCombo {
  ComboRow row = ComboRow::LocalVsKolmogorov;
  MetricKind d1;
  MetricKind d2;
  int l = 1;
  int m = 1;
  double beta = 1.0;

  static LKCombo make(ComboRow row, int l, int m);
  std::string name() const;
};

struct LKReport {
  double lhs = 0.0;         // d1(F̄^m, Ḡ^m)
  double d2_value = 0.0;    // d2(F, G)
  double smooth_sum = 0.0;  // ‖Δ^{l+1} F̄^m‖_1 + ‖Δ^{l+1} Ḡ^m‖_1
  double rhs_core = 0.0;    // d2^{1-β} smooth_sum^β
  double ratio = 0.0;       // lhs / rhs_core (0 when lhs = 0)
};

/// Both sides of the inequality, no constant applied.
LKReport lk_sides(const LatticeDist& f, const LatticeDist& g, const LKCombo& combo);

/// Rows of the combination table whose constant is known (C = √2): row (ii)
/// with l = 2 and row (iv) with l = 1, plus the rows implied from them by
/// dK <= dTV. Returns 0 when no constant is known.
double known_constant(const LKCombo& combo);

/// The two parameter sets with C = √2: n = 2, p = q = r = 1 and
/// n = 3, p = q = ∞, r = 1 (both with k = 1).
enum class KnownConstantCase { N2_P1_Q1_R1, N3_Pinf_Qinf_R1 };

std::string to_string(KnownConstantCase c);

/// ‖Δf‖_q / (‖f‖_p^{1-β} ‖Δ^n f‖_r^β) for f = F̄^m - Ḡ^m (difference of
/// distribution functions), the quantity the constant bounds.
struct LKInequality {
  double lhs = 0.0;
  double rhs_core = 0.0;
  double ratio = 0.0;
};
LKInequality lk_inequality(const LatticeDist& f, const LatticeDist& g, KnownConstantCase c,
                           int m = 1);

/// Random law for fuzzing: support width uniform in [2, 50], masses from
/// normalized exponentials, with point-mass, two-point and even-supported
/// corner cases mixed in.
LatticeDist random_lattice_dist(Rng& rng);

struct LKPair {
  LatticeDist f;
  LatticeDist g;
};
/// Pair for fuzzing; occasionally G = F or G a unit shift of F.
LKPair random_lattice_pair(Rng& rng);

struct LKTrial {
  long trial = 0;
  std::string combo;
  double lhs = 0.0;
  double rhs_core = 0.0;
  double ratio = 0.0;
};

struct LKFuzzResult {
  double worst_ratio = 0.0;
  std::vector<LKTrial> trials;
};

/// Trial t uses substream(seed, t) and m drawn from {1, 2, 3}; the result is
/// independent of the worker count.
LKFuzzResult lk_fuzz(long trials, std::uint64_t seed, KnownConstantCase c);

}  // namespace lkllt
