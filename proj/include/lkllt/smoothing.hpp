#pragma once

#include <concepts>
#include <optional>
#include <span>
#include <vector>

#include "lkllt/metrics.hpp"

namespace lkllt {

/// Upper bound on D_1 of a sum of independent integer variables given the
/// D_1 value of each summand: 2√(2/π) (1/4 + Σ (1 - v/2))^{-1/2}.
double mattner_roos_bound(std::span<const double> d1_values);

/// Finite-n bound on D_k(W) for a statistic containing a random number N of
/// independent blocks: 2^k tail_prob + 2 (8k / (π u (beta sigma2 - k)))^{k/2}.
double embedded_sum_bound(int k, double u, double beta, double sigma2, double tail_prob);

/// span_smoothing_term(F, n1, m) * span_smoothing_term(G, n2, m), an upper
/// bound on span_smoothing_term(F * G, n1 + n2, m).
double convolution_bound(const LatticeDist& f, int n1, const LatticeDist& g, int n2, int m);

/// Exact conditional jump probabilities of the statistic at one state:
/// up = P[W' = W + m | X], down = P[W' = W - m | X], and when the model can
/// evaluate them, the two-step probabilities of W' = W + m, W'' = W' + m
/// (and the mirror image).
struct JumpProbabilities {
  double up = 0.0;
  double down = 0.0;
  std::optional<double> up_up;
  std::optional<double> down_down;
};

/// A stationary reversible chain observed through an integer statistic.
template <class M>
concept PairModel = requires(const M& model, Rng& rng, const typename M::State& state, int m) {
  { model.sample(rng) } -> std::convertible_to<typename M::State>;
  { model.jumps(state, m) } -> std::convertible_to<JumpProbabilities>;
};

struct PairChainStats {
  int m = 1;
  long replicates = 0;
  double q_m = 0.0;  // pooled mean of Q_m and Q_{-m}
  double mean_q_plus = 0.0;
  double mean_q_minus = 0.0;
  double var_q_plus = 0.0;
  double var_q_minus = 0.0;
  bool has_ediff = false;
  double ediff_plus = 0.0;   // E|Q_{m,m} - Q_m²|
  double ediff_minus = 0.0;  // E|Q_{-m,-m} - Q_{-m}²|

  // Standard errors of the entries above.
  double se_q_m = 0.0;
  double se_var_q_plus = 0.0;
  double se_var_q_minus = 0.0;
  double se_ediff_plus = 0.0;
  double se_ediff_minus = 0.0;
  // Batch-means standard errors of the two plug-in bounds (0 when fewer than
  // two batches are available or a batch is degenerate).
  double se_thm3 = 0.0;
  double se_thm4 = 0.0;
};

/// Moments of per-state jump probabilities, in replicate order.
PairChainStats summarize_jumps(std::span<const JumpProbabilities> samples, int m);

/// (√Var Q_m + √Var Q_{-m}) / q_m, bounding span_smoothing_term(L(W), 1, m).
double bound_thm3(const PairChainStats& stats);

/// (2 Var Q_m + E|Q_{m,m} - Q_m²| + 2 Var Q_{-m} + E|Q_{-m,-m} - Q_{-m}²|) / q_m²,
/// bounding span_smoothing_term(L(W), 2, m).
double bound_thm4(const PairChainStats& stats);

/// Draws `replicates` stationary states, replicate i from substream(seed, i),
/// and summarizes their jump probabilities.
template <PairModel M>
PairChainStats pair_stats(const M& model, int m, long replicates, std::uint64_t seed) {
  require(replicates >= 2, ErrorKind::InvalidParameter, "pair_stats needs >= 2 replicates");
  require(m >= 1, ErrorKind::InvalidParameter, "jump size m must be >= 1");
  std::vector<JumpProbabilities> samples(static_cast<std::size_t>(replicates));
  parallel_for(samples.size(), [&](std::size_t i) {
    Rng rng = substream(seed, i);
    samples[i] = model.jumps(model.sample(rng), m);
  });
  return summarize_jumps(samples, m);
}

}  // namespace lkllt
