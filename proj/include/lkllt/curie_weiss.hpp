#pragma once

#include <span>
#include <vector>

#include "lkllt/report.hpp"
#include "lkllt/smoothing.hpp"

namespace lkllt {

struct CWParams {
  long n = 1;
  double beta = 0.5;  // inverse temperature
  double h = 0.0;     // external field
};

/// Magnetization w = Σσ_i; |w| <= n and w ≡ n (mod 2).
struct CWState {
  long n = 1;
  long w = 1;
};

/// Exact law of the magnetization under the Gibbs measure, as weights
/// C(n,k) exp(β((n-2k)² - n)/(2n) + h(n-2k)) on w = n - 2k. With
/// half_lattice the law of (w + δ)/2, δ = n mod 2, is returned instead.
LatticeDist cw_exact_pmf(const CWParams& params, bool half_lattice);

/// Solution of m = tanh(βm + h) by bisection. Unique for β < 1. For β >= 1
/// only h = 0 is accepted and the nonnegative solution is returned.
double cw_m0(double beta, double h);

/// Heat-bath jump probabilities of the magnetization at state w.
struct CWJumps {
  double q2 = 0.0;            // P[W' = w + 2]
  double q_neg2 = 0.0;        // P[W' = w - 2]
  double q22 = 0.0;           // P[W' = w + 2, W'' = w + 4]
  double q_neg2_neg2 = 0.0;   // P[W' = w - 2, W'' = w - 4]
};

CWJumps cw_q(const CWState& state, const CWParams& params);

/// Glauber chain observed through its magnetization. States are drawn
/// exactly from the stationary law; only m = 2 is a possible jump size.
class CurieWeissPairModel {
 public:
  using State = CWState;

  explicit CurieWeissPairModel(const CWParams& params);

  const CWParams& params() const { return params_; }
  const LatticeDist& law() const { return law_; }

  State sample(Rng& rng) const;
  JumpProbabilities jumps(const State& state, int m) const;

 private:
  CWParams params_;
  LatticeDist law_;             // full-lattice magnetization law
  std::vector<double> cdf_;
};

/// The PairChainStats entries computed by summation over the exact law
/// (standard errors zero, replicates zero).
PairChainStats cw_exact_pair_stats(const CWParams& params);

/// For each n: exact half-lattice law against its translated Poisson target,
/// with columns n, dloc, dtv, dk, dw, thm3_bound, thm4_bound.
RateTable cw_rate_experiment(double beta, double h, std::span<const long> n_grid);

}  // namespace lkllt
