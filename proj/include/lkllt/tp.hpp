#pragma once

#include "lkllt/lattice.hpp"

namespace lkllt {

/// TP(μ, σ²): Z - shift ~ Poisson(lambda) with shift = ⌊μ - σ²⌋,
/// gamma = μ - σ² - shift and lambda = σ² + gamma, so E Z = μ and
/// σ² <= Var Z < σ² + 1.
struct TPParams {
  double mu = 0.0;
  double sigma2 = 1.0;
  long shift = 0;
  double gamma = 0.0;
  double lambda = 1.0;
};

TPParams tp_params(double mu, double sigma2);

/// Poisson(lambda) pmf on the range keeping each omitted tail below eps / 2,
/// renormalized.
LatticeDist poisson_dist(double lambda, double eps = 1e-12);

/// TP law as a LatticeDist; requires 0 < eps <= 1e-6.
LatticeDist tp_dist(const TPParams& params, double eps = 1e-12);

struct NormalGaps {
  double local_gap = 0.0;   // sup_k |TP{k} - φ_{μ,σ}(k)|
  double kolmogorov = 0.0;  // sup_x |P[Z <= x] - Φ_{μ,σ}(x)|
  double wasserstein = 0.0; // ∫ |P[Z <= x] - Φ_{μ,σ}(x)| dx
};

/// Distances between TP(μ, σ²) and N(μ, σ²).
NormalGaps tp_normal_gaps(const TPParams& params);

double normal_cdf(double x, double mu, double sigma);
double normal_density(double x, double mu, double sigma);

}  // namespace lkllt
