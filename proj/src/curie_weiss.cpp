#include "lkllt/curie_weiss.hpp"

#include <limits>

#include "lkllt/tp.hpp"

namespace lkllt {
namespace {

void check_params(const CWParams& p) {
  require(p.n >= 1, ErrorKind::InvalidParameter, "Curie-Weiss needs n >= 1");
  require(p.beta >= 0.0 && std::isfinite(p.beta), ErrorKind::InvalidParameter,
          "inverse temperature must be finite and >= 0");
  require(std::isfinite(p.h), ErrorKind::InvalidParameter, "field must be finite");
}

// Normalized weights indexed by k = number of down spins (w = n - 2k).
std::vector<double> down_spin_weights(const CWParams& params) {
  const long n = params.n;
  std::vector<double> log_binom(static_cast<std::size_t>(n + 1), 0.0);
  // log C(n, k) by recurrence over the lower half, mirrored so the binomial
  // part is exactly symmetric.
  for (long k = 0; k < n / 2 + 1; ++k) {
    if (k > 0) {
      log_binom[k] = log_binom[k - 1] + std::log(static_cast<double>(n - k + 1) / k);
    }
    log_binom[n - k] = log_binom[k];
  }
  std::vector<double> lw(log_binom.size());
  const double dn = static_cast<double>(n);
  double top = -std::numeric_limits<double>::infinity();
  for (long k = 0; k <= n; ++k) {
    const double w = dn - 2.0 * k;
    lw[k] = log_binom[k] + params.beta * (w * w - dn) / (2.0 * dn) + params.h * w;
    top = std::max(top, lw[k]);
  }
  CompensatedSum total;
  for (double& x : lw) {
    x = std::exp(x - top);
    total.add(x);
  }
  for (double& x : lw) x /= total.value();
  return lw;
}

double up_rate(long n, long w, double beta, double h) {
  // A down spin sees the other n-1 spins summing to w + 1.
  const double down = static_cast<double>(n - w) / 2.0;
  return down / n * 0.5 * (1.0 + std::tanh(beta * (w + 1.0) / n + h));
}

double down_rate(long n, long w, double beta, double h) {
  const double up = static_cast<double>(n + w) / 2.0;
  return up / n * 0.5 * (1.0 - std::tanh(beta * (w - 1.0) / n + h));
}

}  // namespace

LatticeDist cw_exact_pmf(const CWParams& params, bool half_lattice) {
  check_params(params);
  require(params.n <= 1'000'000, ErrorKind::TooLarge, "Curie-Weiss law limited to n <= 1e6");
  const std::vector<double> weights = down_spin_weights(params);
  const long n = params.n;
  if (half_lattice) {
    // (w + δ)/2 for k = n, n-1, ..., 0 is (δ - n)/2, (δ - n)/2 + 1, ...
    const long delta = n % 2;
    Eigen::ArrayXd pmf(n + 1);
    for (long j = 0; j <= n; ++j) pmf(j) = weights[n - j];
    return dist_from_weights((delta - n) / 2, pmf);
  }
  Eigen::ArrayXd pmf = Eigen::ArrayXd::Zero(2 * n + 1);
  for (long k = 0; k <= n; ++k) pmf(2 * (n - k)) = weights[k];
  return dist_from_weights(-n, pmf);
}

double cw_m0(double beta, double h) {
  require(beta >= 0.0 && std::isfinite(beta) && std::isfinite(h), ErrorKind::InvalidParameter,
          "beta must be finite and >= 0, h finite");
  if (beta >= 1.0) {
    require(h == 0.0, ErrorKind::InvalidParameter,
            "for beta >= 1 the fixed point is only supported with h = 0");
    if (beta == 1.0) return 0.0;
  }
  const auto f = [&](double m) { return m - std::tanh(beta * m + h); };
  // For beta < 1, f is increasing with f(-1) < 0 < f(1). For beta > 1, h = 0,
  // f < 0 just right of zero and f(1) > 0, so bisection from lo = 0 treating
  // f(lo) as negative finds the positive root.
  double lo = beta >= 1.0 ? 0.0 : -1.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double root = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
  if (!(std::abs(f(root)) < 1e-14)) fail(ErrorKind::NumericalFailure, "fixed point did not converge");
  return root;
}

CWJumps cw_q(const CWState& state, const CWParams& params) {
  const long n = state.n;
  const long w = state.w;
  require(n >= 1 && std::abs(w) <= n && (n - w) % 2 == 0, ErrorKind::InvalidParameter,
          "magnetization must satisfy |w| <= n and w = n mod 2");
  CWJumps out;
  out.q2 = up_rate(n, w, params.beta, params.h);
  out.q_neg2 = down_rate(n, w, params.beta, params.h);
  // The magnetization is itself a Markov chain, so two-step probabilities factor.
  out.q22 = w + 2 <= n ? out.q2 * up_rate(n, w + 2, params.beta, params.h) : 0.0;
  out.q_neg2_neg2 = w - 2 >= -n ? out.q_neg2 * down_rate(n, w - 2, params.beta, params.h) : 0.0;
  return out;
}

CurieWeissPairModel::CurieWeissPairModel(const CWParams& params)
    : params_(params), law_(cw_exact_pmf(params, false)) {
  cdf_.resize(static_cast<std::size_t>(law_.size()));
  double running = 0.0;
  for (long i = 0; i < law_.size(); ++i) {
    running += law_.pmf()(i);
    cdf_[i] = running;
  }
  cdf_.back() = 1.0;
}

CWState CurieWeissPairModel::sample(Rng& rng) const {
  const double u = rng.uniform();
  // First index whose CDF exceeds u; zero-mass (wrong parity) slots never
  // qualify since their CDF equals the previous one.
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return {params_.n, law_.offset() + static_cast<long>(it - cdf_.begin())};
}

JumpProbabilities CurieWeissPairModel::jumps(const State& state, int m) const {
  require(m == 2, ErrorKind::InvalidParameter, "the magnetization only jumps by 2");
  const CWJumps q = cw_q(state, params_);
  return {q.q2, q.q_neg2, q.q22, q.q_neg2_neg2};
}

PairChainStats cw_exact_pair_stats(const CWParams& params) {
  const LatticeDist law = cw_exact_pmf(params, false);
  CompensatedSum up, down, up2, down2, eup, edown;
  for (long w = law.offset(); w <= law.last(); ++w) {
    const double p = law(w);
    if (p == 0.0) continue;
    const CWJumps q = cw_q({params.n, w}, params);
    up.add(p * q.q2);
    down.add(p * q.q_neg2);
    up2.add(p * q.q2 * q.q2);
    down2.add(p * q.q_neg2 * q.q_neg2);
    eup.add(p * std::abs(q.q22 - q.q2 * q.q2));
    edown.add(p * std::abs(q.q_neg2_neg2 - q.q_neg2 * q.q_neg2));
  }
  PairChainStats out;
  out.m = 2;
  out.mean_q_plus = up.value();
  out.mean_q_minus = down.value();
  out.q_m = 0.5 * (out.mean_q_plus + out.mean_q_minus);
  out.var_q_plus = std::max(0.0, up2.value() - out.mean_q_plus * out.mean_q_plus);
  out.var_q_minus = std::max(0.0, down2.value() - out.mean_q_minus * out.mean_q_minus);
  out.has_ediff = true;
  out.ediff_plus = eup.value();
  out.ediff_minus = edown.value();
  return out;
}

RateTable cw_rate_experiment(double beta, double h, std::span<const long> n_grid) {
  require(beta > 0.0 && beta < 1.0, ErrorKind::InvalidParameter,
          "rate experiment needs 0 < beta < 1");
  require(!n_grid.empty(), ErrorKind::InvalidParameter, "empty n grid");
  const double m0 = cw_m0(beta, h);
  RateTable table;
  table.columns = {"n", "dloc", "dtv", "dk", "dw", "thm3_bound", "thm4_bound"};
  table.metadata = {{"experiment", "cw rate"},
                    {"beta", format_number(beta)},
                    {"h", format_number(h)},
                    {"m0", format_number(m0)},
                    {"target", h == 0.0 ? "TP(0, n/(4(1-beta)))"
                                        : "TP(n m0/2, n(1-m0^2)/(4(1-beta+beta m0^2)))"}};
  std::vector<std::vector<double>> rows(n_grid.size());
  parallel_for(n_grid.size(), [&](std::size_t i) {
    const CWParams params{n_grid[i], beta, h};
    const double n = static_cast<double>(params.n);
    const LatticeDist half = cw_exact_pmf(params, true);
    const TPParams target =
        h == 0.0 ? tp_params(0.0, n / (4.0 * (1.0 - beta)))
                 : tp_params(n * m0 / 2.0,
                             n * (1.0 - m0 * m0) / (4.0 * (1.0 - beta + beta * m0 * m0)));
    const LatticeDist tp = tp_dist(target);
    const PairChainStats stats = cw_exact_pair_stats(params);
    rows[i] = {n,
               local_distance(half, tp),
               total_variation_distance(half, tp),
               kolmogorov_distance(half, tp),
               wasserstein_distance(half, tp),
               bound_thm3(stats),
               bound_thm4(stats)};
  });
  for (auto& row : rows) table.add_row(std::move(row));
  table.sort_rows();
  return table;
}

}  // namespace lkllt
