#include "lkllt/lk.hpp"

#include <limits>

namespace lkllt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void check_exponent(double p) {
  require(p >= 1.0, ErrorKind::InvalidParameter, "norm exponents must lie in [1, inf]");
}

// CDF difference F(k) - G(k) as a finitely supported sequence.
SignedSeq cdf_difference(const LatticeDist& f, const LatticeDist& g) {
  const AlignedPair a = align(f, g);
  Eigen::ArrayXd gap(a.first.size());
  double running = 0.0;
  for (Eigen::Index i = 0; i < gap.size(); ++i) {
    running += a.first(i) - a.second(i);
    gap(i) = running;
  }
  gap(gap.size() - 1) = 0.0;  // both CDFs reach one at the top of the hull
  return SignedSeq(a.lo, std::move(gap));
}

double power_or_one(double base, double exponent) {
  return exponent == 0.0 ? 1.0 : std::pow(base, exponent);
}

}  // namespace

BetaExponent beta_exponent(int k, int n, double p, double q, double r) {
  require(k >= 1 && k < n, ErrorKind::InvalidParameter, "need 1 <= k < n");
  check_exponent(p);
  check_exponent(q);
  check_exponent(r);
  const double ip = reciprocal(p);
  const double iq = reciprocal(q);
  const double ir = reciprocal(r);
  BetaExponent out;
  out.beta = (k - iq + ip) / (n - ir + ip);
  out.admissible = n * iq <= (n - k) * ip + k * ir;
  return out;
}

LKCombo LKCombo::make(ComboRow row, int l, int m) {
  require(l >= 1 && m >= 1, ErrorKind::InvalidParameter, "combo needs l >= 1 and m >= 1");
  LKCombo c;
  c.row = row;
  c.l = l;
  c.m = m;
  switch (row) {
    case ComboRow::LocalVsTv:
      c.d1 = MetricKind::local();
      c.d2 = MetricKind::total_variation();
      c.beta = 1.0 / l;
      break;
    case ComboRow::LocalVsKolmogorov:
      c.d1 = MetricKind::local();
      c.d2 = MetricKind::kolmogorov();
      c.beta = 1.0 / l;
      break;
    case ComboRow::LocalVsWasserstein:
      c.d1 = MetricKind::local();
      c.d2 = MetricKind::wasserstein();
      c.beta = 2.0 / (l + 1);
      break;
    case ComboRow::TvVsWasserstein:
      c.d1 = MetricKind::total_variation();
      c.d2 = MetricKind::wasserstein();
      c.beta = 1.0 / (l + 1);
      break;
    case ComboRow::KolmogorovVsWasserstein:
      c.d1 = MetricKind::kolmogorov();
      c.d2 = MetricKind::wasserstein();
      c.beta = 1.0 / (l + 1);
      break;
  }
  return c;
}

std::string LKCombo::name() const {
  static const char* kRows[] = {"i", "ii", "iii", "iv", "v"};
  return std::string("(") + kRows[static_cast<int>(row)] + ") " + d1.name() + "/" +
         d2.name() + " l=" + std::to_string(l) + " m=" + std::to_string(m);
}

LKReport lk_sides(const LatticeDist& f, const LatticeDist& g, const LKCombo& combo) {
  LKReport out;
  out.lhs = distance(smooth_uniform(f, combo.m), smooth_uniform(g, combo.m), combo.d1);
  out.d2_value = distance(f, g, combo.d2);
  out.smooth_sum =
      (smoothing_term(f, combo.l, combo.m) + smoothing_term(g, combo.l, combo.m)) / combo.m;
  out.rhs_core =
      power_or_one(out.d2_value, 1.0 - combo.beta) * power_or_one(out.smooth_sum, combo.beta);
  if (out.lhs == 0.0) {
    out.ratio = 0.0;
  } else {
    out.ratio = out.rhs_core > 0.0 ? out.lhs / out.rhs_core : kInf;
  }
  return out;
}

double known_constant(const LKCombo& combo) {
  switch (combo.row) {
    case ComboRow::LocalVsTv:
    case ComboRow::LocalVsKolmogorov:
      return combo.l == 2 ? std::sqrt(2.0) : 0.0;
    case ComboRow::TvVsWasserstein:
    case ComboRow::KolmogorovVsWasserstein:
      return combo.l == 1 ? std::sqrt(2.0) : 0.0;
    case ComboRow::LocalVsWasserstein:
      return 0.0;
  }
  return 0.0;
}

std::string to_string(KnownConstantCase c) {
  return c == KnownConstantCase::N2_P1_Q1_R1 ? "n2_p1_q1_r1" : "n3_pinf_qinf_r1";
}

LKInequality lk_inequality(const LatticeDist& f, const LatticeDist& g, KnownConstantCase c,
                           int m) {
  const SignedSeq gap = cdf_difference(smooth_uniform(f, m), smooth_uniform(g, m));
  LKInequality out;
  const int n = c == KnownConstantCase::N2_P1_Q1_R1 ? 2 : 3;
  const Norm pq = c == KnownConstantCase::N2_P1_Q1_R1 ? Norm::L1 : Norm::Linf;
  out.lhs = seq_norm(difference(gap, 1), pq);
  const double base = seq_norm(gap, pq);
  const double top = seq_norm(difference(gap, n), Norm::L1);
  out.rhs_core = std::sqrt(base) * std::sqrt(top);  // β = 1/2 in both cases
  if (out.lhs == 0.0) {
    out.ratio = 0.0;
  } else {
    out.ratio = out.rhs_core > 0.0 ? out.lhs / out.rhs_core : kInf;
  }
  return out;
}

LatticeDist random_lattice_dist(Rng& rng) {
  const long offset = static_cast<long>(rng.below(21)) - 10;
  const double kind = rng.uniform();
  if (kind < 0.05) return LatticeDist::point_mass(offset);
  if (kind < 0.10) {
    const long gap = 1 + static_cast<long>(rng.below(5));
    Eigen::ArrayXd w = Eigen::ArrayXd::Zero(gap + 1);
    w(0) = rng.exponential();
    w(gap) = rng.exponential();
    return dist_from_weights(offset, w);
  }
  const long width = 2 + static_cast<long>(rng.below(49));
  Eigen::ArrayXd w(width);
  for (long i = 0; i < width; ++i) w(i) = rng.exponential();
  if (kind < 0.20) {
    // Parity-supported: mass only on every second point.
    for (long i = 1; i < width; i += 2) w(i) = 0.0;
  }
  return dist_from_weights(offset, w);
}

LKPair random_lattice_pair(Rng& rng) {
  LatticeDist f = random_lattice_dist(rng);
  const double kind = rng.uniform();
  if (kind < 0.05) return {f, f};
  if (kind < 0.10) return {f, f.shifted(1)};
  return {f, random_lattice_dist(rng)};
}

LKFuzzResult lk_fuzz(long trials, std::uint64_t seed, KnownConstantCase c) {
  require(trials >= 1, ErrorKind::InvalidParameter, "trials must be >= 1");
  LKFuzzResult out;
  out.trials.resize(static_cast<std::size_t>(trials));
  parallel_for(out.trials.size(), [&](std::size_t t) {
    Rng rng = substream(seed, t);
    const LKPair pair = random_lattice_pair(rng);
    const int m = 1 + static_cast<int>(rng.below(3));
    const LKInequality ineq = lk_inequality(pair.f, pair.g, c, m);
    out.trials[t] = {static_cast<long>(t), to_string(c) + "/m=" + std::to_string(m), ineq.lhs,
                     ineq.rhs_core, ineq.ratio};
  });
  for (const LKTrial& t : out.trials) out.worst_ratio = std::max(out.worst_ratio, t.ratio);
  return out;
}

}  // namespace lkllt
