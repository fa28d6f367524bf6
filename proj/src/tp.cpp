#include "lkllt/tp.hpp"

#include <numbers>
#include <vector>

namespace lkllt {
namespace {

double std_density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double std_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double std_upper(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

// Integrals of the N(mu, sigma²) distribution function Φ.
struct NormalIntegrals {
  double mu;
  double sigma;

  double z(double x) const { return (x - mu) / sigma; }
  // ∫_{-∞}^x Φ
  double lower(double x) const {
    const double t = z(x);
    return sigma * (t * std_cdf(t) + std_density(t));
  }
  // ∫_x^∞ (1 - Φ)
  double upper(double x) const {
    const double t = z(x);
    return sigma * (std_density(t) - t * std_upper(t));
  }
  // ∫_a^b Φ, using whichever antiderivative is small near [a, b].
  double between(double a, double b) const {
    if (z(0.5 * (a + b)) <= 0.0) return lower(b) - lower(a);
    return (b - a) - (upper(a) - upper(b));
  }
  double cdf(double x) const { return std_cdf(z(x)); }
};

// ∫_a^{a+1} |c - Φ(x)| dx for a constant level c.
double unit_interval_gap(const NormalIntegrals& normal, double a, double c) {
  const double b = a + 1.0;
  const double lo = normal.cdf(a);
  const double hi = normal.cdf(b);
  if (hi <= c) return c - normal.between(a, b);
  if (lo >= c) return normal.between(a, b) - c;
  double left = a;
  double right = b;
  for (int it = 0; it < 80 && right - left > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double mid = 0.5 * (left + right);
    (normal.cdf(mid) < c ? left : right) = mid;
  }
  const double cross = 0.5 * (left + right);
  return c * (cross - a) - normal.between(a, cross) + normal.between(cross, b) -
         c * (b - cross);
}

}  // namespace

double normal_cdf(double x, double mu, double sigma) { return std_cdf((x - mu) / sigma); }

double normal_density(double x, double mu, double sigma) {
  return std_density((x - mu) / sigma) / sigma;
}

TPParams tp_params(double mu, double sigma2) {
  require(std::isfinite(mu), ErrorKind::InvalidParameter, "TP mean must be finite");
  require(sigma2 > 0.0 && std::isfinite(sigma2), ErrorKind::InvalidParameter,
          "TP variance must be positive");
  TPParams out;
  out.mu = mu;
  out.sigma2 = sigma2;
  const double floor_value = std::floor(mu - sigma2);
  out.shift = static_cast<long>(floor_value);
  out.gamma = (mu - sigma2) - floor_value;
  out.lambda = sigma2 + out.gamma;
  return out;
}

LatticeDist poisson_dist(double lambda, double eps) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::InvalidParameter,
          "Poisson mean must be positive");
  // Linear-space recursion outward from the mode, anchored at the log-pmf
  // of the mode; runs until masses drop below the smallest normal double.
  const long mode = static_cast<long>(std::floor(lambda));
  const double log_mode = -lambda + static_cast<double>(mode) * std::log(lambda) -
                          std::lgamma(static_cast<double>(mode) + 1.0);
  constexpr double kTiny = 1e-300;
  std::vector<double> left;  // mode-1, mode-2, ...
  {
    double p = std::exp(log_mode);
    for (long k = mode; k > 0; --k) {
      p *= static_cast<double>(k) / lambda;
      if (p < kTiny) break;
      left.push_back(p);
    }
  }
  std::vector<double> right;  // mode, mode+1, ...
  {
    double p = std::exp(log_mode);
    right.push_back(p);
    for (long k = mode + 1;; ++k) {
      p *= lambda / static_cast<double>(k);
      if (p < kTiny) break;
      right.push_back(p);
    }
  }
  std::vector<double> masses(left.rbegin(), left.rend());
  masses.insert(masses.end(), right.begin(), right.end());
  const long start = mode - static_cast<long>(left.size());

  // Drop as many end masses as possible while each omitted tail stays < eps/2.
  std::size_t first = 0;
  CompensatedSum lower_tail;
  while (first + 1 < masses.size()) {
    lower_tail.add(masses[first]);
    if (lower_tail.value() >= 0.5 * eps) break;
    ++first;
  }
  std::size_t last = masses.size() - 1;
  CompensatedSum upper_tail;
  while (last > first) {
    upper_tail.add(masses[last]);
    if (upper_tail.value() >= 0.5 * eps) break;
    --last;
  }
  Eigen::ArrayXd kept(static_cast<Eigen::Index>(last - first + 1));
  for (std::size_t i = first; i <= last; ++i) kept(static_cast<Eigen::Index>(i - first)) = masses[i];
  return dist_from_weights(start + static_cast<long>(first), kept);
}

LatticeDist tp_dist(const TPParams& params, double eps) {
  require(eps > 0.0 && eps <= 1e-6, ErrorKind::InvalidParameter,
          "truncation eps must lie in (0, 1e-6]");
  return poisson_dist(params.lambda, eps).shifted(params.shift);
}

NormalGaps tp_normal_gaps(const TPParams& params) {
  const LatticeDist law = tp_dist(params);
  const double sigma = std::sqrt(params.sigma2);
  const NormalIntegrals normal{params.mu, sigma};
  NormalGaps out;

  for (long k = law.offset(); k <= law.last(); ++k) {
    out.local_gap = std::max(out.local_gap, std::abs(law(k) - normal_density(k, params.mu, sigma)));
  }

  // On [k, k+1) the TP distribution function is the constant F(k) while Φ
  // increases, so the sup over the interval sits at one of its ends.
  CompensatedSum area;
  area.add(normal.lower(static_cast<double>(law.offset())));
  double cdf = 0.0;
  out.kolmogorov = normal.cdf(static_cast<double>(law.offset()));
  for (long k = law.offset(); k < law.last(); ++k) {
    cdf += law(k);
    const double a = static_cast<double>(k);
    out.kolmogorov = std::max({out.kolmogorov, std::abs(cdf - normal.cdf(a)),
                               std::abs(cdf - normal.cdf(a + 1.0))});
    area.add(unit_interval_gap(normal, a, cdf));
  }
  const double top = static_cast<double>(law.last());
  out.kolmogorov = std::max(out.kolmogorov, 1.0 - normal.cdf(top));
  area.add(normal.upper(top));
  out.wasserstein = area.value();
  return out;
}

}  // namespace lkllt
