#include "lkllt/smoothing.hpp"

#include <numbers>

namespace lkllt {
namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;      // unbiased
  double se_mean = 0.0;
  double se_var = 0.0;
};

Moments moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  Moments out;
  out.mean = compensated_sum(xs) / n;
  CompensatedSum s2;
  CompensatedSum s4;
  for (double x : xs) {
    const double d = (x - out.mean) * (x - out.mean);
    s2.add(d);
    s4.add(d * d);
  }
  const double m2 = s2.value() / n;
  const double m4 = s4.value() / n;
  out.var = xs.size() > 1 ? s2.value() / (n - 1.0) : 0.0;
  out.se_mean = std::sqrt(out.var / n);
  out.se_var = std::sqrt(std::max(0.0, (m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n));
  return out;
}

double std_error(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  return moments(xs).se_mean;
}

PairChainStats summarize_slice(std::span<const JumpProbabilities> samples, int m) {
  std::vector<double> up;
  std::vector<double> down;
  std::vector<double> pooled;
  std::vector<double> ediff_up;
  std::vector<double> ediff_down;
  bool has_ediff = true;
  for (const JumpProbabilities& s : samples) {
    up.push_back(s.up);
    down.push_back(s.down);
    pooled.push_back(0.5 * (s.up + s.down));
    if (s.up_up && s.down_down) {
      ediff_up.push_back(std::abs(*s.up_up - s.up * s.up));
      ediff_down.push_back(std::abs(*s.down_down - s.down * s.down));
    } else {
      has_ediff = false;
    }
  }
  PairChainStats out;
  out.m = m;
  out.replicates = static_cast<long>(samples.size());
  const Moments mu = moments(up);
  const Moments md = moments(down);
  const Moments mq = moments(pooled);
  out.mean_q_plus = mu.mean;
  out.mean_q_minus = md.mean;
  out.q_m = mq.mean;
  out.se_q_m = mq.se_mean;
  out.var_q_plus = mu.var;
  out.var_q_minus = md.var;
  out.se_var_q_plus = mu.se_var;
  out.se_var_q_minus = md.se_var;
  out.has_ediff = has_ediff;
  if (has_ediff) {
    const Moments eu = moments(ediff_up);
    const Moments ed = moments(ediff_down);
    out.ediff_plus = eu.mean;
    out.ediff_minus = ed.mean;
    out.se_ediff_plus = eu.se_mean;
    out.se_ediff_minus = ed.se_mean;
  }
  return out;
}

}  // namespace

double mattner_roos_bound(std::span<const double> d1_values) {
  double total = 0.25;
  for (double v : d1_values) {
    require(v > 0.0 && v <= 2.0, ErrorKind::InvalidParameter, "D_1 values must lie in (0, 2]");
    total += 1.0 - 0.5 * v;
  }
  return 2.0 * std::sqrt(2.0 / std::numbers::pi) / std::sqrt(total);
}

double embedded_sum_bound(int k, double u, double beta, double sigma2, double tail_prob) {
  require(k >= 1, ErrorKind::InvalidParameter, "block bound needs k >= 1");
  require(u > 0.0 && u <= 1.0, ErrorKind::InvalidParameter, "u must lie in (0, 1]");
  require(beta > 0.0, ErrorKind::InvalidParameter, "beta must be positive");
  require(tail_prob >= 0.0 && tail_prob <= 1.0, ErrorKind::InvalidParameter,
          "tail probability must lie in [0, 1]");
  const double room = beta * sigma2 - k;
  require(room > 0.0, ErrorKind::InvalidParameter, "need beta * sigma2 > k");
  const double core = 8.0 * k / (std::numbers::pi * u * room);
  return std::ldexp(tail_prob, k) + 2.0 * std::pow(core, 0.5 * k);
}

double convolution_bound(const LatticeDist& f, int n1, const LatticeDist& g, int n2, int m) {
  return span_smoothing_term(f, n1, m) * span_smoothing_term(g, n2, m);
}

double bound_thm3(const PairChainStats& stats) {
  require(stats.q_m > 0.0, ErrorKind::DegenerateChain, "q_m is zero");
  return (std::sqrt(stats.var_q_plus) + std::sqrt(stats.var_q_minus)) / stats.q_m;
}

double bound_thm4(const PairChainStats& stats) {
  require(stats.has_ediff, ErrorKind::MissingCapability,
          "model has no two-step jump evaluators");
  require(stats.q_m > 0.0, ErrorKind::DegenerateChain, "q_m is zero");
  return (2.0 * stats.var_q_plus + stats.ediff_plus + 2.0 * stats.var_q_minus +
          stats.ediff_minus) /
         (stats.q_m * stats.q_m);
}

PairChainStats summarize_jumps(std::span<const JumpProbabilities> samples, int m) {
  require(samples.size() >= 2, ErrorKind::InvalidParameter, "need >= 2 samples");
  PairChainStats out = summarize_slice(samples, m);
  if (out.q_m <= 0.0) fail(ErrorKind::DegenerateChain, "estimated q_m is zero");

  // Bound standard errors from contiguous batches.
  const std::size_t batches = std::min<std::size_t>(20, samples.size() / 2);
  if (batches < 2) return out;
  const std::size_t width = samples.size() / batches;
  std::vector<double> thm3;
  std::vector<double> thm4;
  for (std::size_t b = 0; b < batches; ++b) {
    const PairChainStats part = summarize_slice(samples.subspan(b * width, width), m);
    if (part.q_m <= 0.0) return out;
    thm3.push_back(bound_thm3(part));
    if (part.has_ediff) thm4.push_back(bound_thm4(part));
  }
  // A batch bound has sqrt(batches) times the spread of the full-sample one.
  out.se_thm3 = std_error(thm3);
  if (out.has_ediff) out.se_thm4 = std_error(thm4);
  return out;
}

}  // namespace lkllt
