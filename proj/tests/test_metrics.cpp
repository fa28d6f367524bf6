#include <doctest.h>

#include "lkllt/metrics.hpp"
#include "oracles.hpp"

using namespace lkllt;

namespace {

LatticeDist be_half() { return oracle::to_dist({{0, 0.5}, {1, 0.5}}); }

}  // namespace

TEST_CASE("metric examples") {
  const LatticeDist d0 = LatticeDist::point_mass(0), d1 = LatticeDist::point_mass(1);
  CHECK(wasserstein_distance(d0, d1) == 1.0);
  CHECK(kolmogorov_distance(d0, d1) == 1.0);
  CHECK(total_variation_distance(d0, d1) == 1.0);
  CHECK(local_distance(d0, d1) == 1.0);

  const LatticeDist be = be_half();
  CHECK(kolmogorov_distance(be, d0) == 0.5);
  CHECK(wasserstein_distance(be, d0) == 0.5);
  CHECK(total_variation_distance(be, d0) == 0.5);
  CHECK(local_distance(be, d0) == 0.5);

  CHECK(distance(be, d0, MetricKind::kolmogorov()) == 0.5);
  CHECK(distance(be, d0, MetricKind::local_m(1)) == 0.5);
  CHECK_THROWS_AS(MetricKind::local_m(0), Error);
}

TEST_CASE("metrics agree with map-based oracles, including the interval form of dloc[m]") {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 300; ++t) {
    const oracle::Law a = oracle::random_law(gen, 15), b = oracle::random_law(gen, 15);
    const LatticeDist f = oracle::to_dist(a), g = oracle::to_dist(b);
    CHECK(std::abs(kolmogorov_distance(f, g) - oracle::kolmogorov(a, b)) <= 1e-12);
    CHECK(std::abs(wasserstein_distance(f, g) - oracle::wasserstein(a, b)) <= 1e-12);
    CHECK(std::abs(total_variation_distance(f, g) - oracle::total_variation(a, b)) <= 1e-12);
    for (int m = 1; m <= 5; ++m) {
      const double d = distance(f, g, MetricKind::local_m(m));
      CHECK(std::abs(d - oracle::local_interval(a, b, m)) <= 1e-12);
    }
  }
}

TEST_CASE("metric inequalities, symmetry and triangle inequality") {
  std::mt19937_64 gen(22);
  const MetricKind kinds[] = {MetricKind::kolmogorov(), MetricKind::wasserstein(),
                              MetricKind::total_variation(), MetricKind::local(),
                              MetricKind::local_m(3)};
  for (int t = 0; t < 300; ++t) {
    const LatticeDist f = oracle::to_dist(oracle::random_law(gen));
    const LatticeDist g = oracle::to_dist(oracle::random_law(gen));
    const LatticeDist h = oracle::to_dist(oracle::random_law(gen));
    const double tv = total_variation_distance(f, g);
    CHECK(kolmogorov_distance(f, g) <= tv + 1e-15);
    CHECK(local_distance(f, g) <= 2 * tv + 1e-15);
    CHECK(kolmogorov_distance(f, g) <= wasserstein_distance(f, g) + 1e-15);
    for (const MetricKind& k : kinds) {
      const double fg = distance(f, g, k);
      CHECK(fg >= 0.0);
      CHECK(distance(f, f, k) == 0.0);
      CHECK(std::abs(fg - distance(g, f, k)) <= 1e-12);
      CHECK(fg <= distance(f, h, k) + distance(h, g, k) + 1e-12);
      if (!(k == MetricKind::wasserstein())) CHECK(fg <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("smoothing_term examples") {
  CHECK(smoothing_term(LatticeDist::point_mass(0), 1, 1) == doctest::Approx(2.0));
  CHECK(smoothing_term(oracle::to_dist(oracle::uniform(0, 4)), 1, 1) == doctest::Approx(0.4));
  CHECK(smoothing_term(be_half(), 1, 1) == doctest::Approx(1.0));
  CHECK(smoothing_term_dual(LatticeDist::point_mass(0), 1, 1) == doctest::Approx(2.0));
  const LatticeDist b = oracle::to_dist(oracle::binomial(10, 0.5));
  CHECK(std::abs(smoothing_term_dual(b, 1, 1) - smoothing_term(b, 1, 1)) <= 1e-12);
  CHECK(std::abs(smoothing_term_dual(b, 2, 2) - smoothing_term(b, 2, 2)) <= 1e-12);
  CHECK_THROWS_AS(smoothing_term(b, 0, 1), Error);
  CHECK_THROWS_AS(smoothing_term(b, 1, 0), Error);
  CHECK_THROWS_AS(smoothing_term_dual(b, 0, 1), Error);
  CHECK_THROWS_AS(span_smoothing_term(b, 1, 0), Error);
}

TEST_CASE("smoothing terms against CDF-based oracles") {
  std::mt19937_64 gen(23);
  for (int t = 0; t < 300; ++t) {
    const oracle::Law a = oracle::random_law(gen, 15);
    const LatticeDist f = oracle::to_dist(a);
    for (int n = 1; n <= 3; ++n) {
      for (int m = 1; m <= 3; ++m) {
        const double d = smoothing_term(f, n, m);
        CHECK(std::abs(d - oracle::smoothing_by_cdf(a, n, m)) <= 1e-11);
        CHECK(std::abs(span_smoothing_term(f, n, m) - oracle::span_smoothing(a, n, m)) <= 1e-11);
        CHECK(d > 0.0);
        CHECK(d <= std::pow(2.0, n + 1) * m + 1e-12);
      }
      // the two definitions coincide when one of n, m is 1
      CHECK(std::abs(span_smoothing_term(f, n, 1) - smoothing_term(f, n, 1)) <= 1e-12);
      CHECK(std::abs(span_smoothing_term(f, 1, n) - smoothing_term(f, 1, n)) <= 1e-12);
    }
  }
}

TEST_CASE("the norm and span forms differ once n and m are both at least 2") {
  const LatticeDist be = be_half();
  CHECK(smoothing_term(be, 2, 2) == doctest::Approx(2.0));
  CHECK(span_smoothing_term(be, 2, 2) == doctest::Approx(4.0));
}

TEST_CASE("dual form matches the norm form") {
  std::mt19937_64 gen(24);
  for (int t = 0; t < 1000; ++t) {
    const LatticeDist f = oracle::to_dist(oracle::random_law(gen, 30));
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) CHECK(std::abs(smoothing_term_dual(f, n, m) - smoothing_term(f, n, m)) <= 1e-10);
  }
}

TEST_CASE("smoothing over spans is dominated by the unit span") {
  std::mt19937_64 gen(25);
  for (int t = 0; t < 300; ++t) {
    const LatticeDist f = oracle::to_dist(oracle::random_law(gen, 20));
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 4; ++m) CHECK(smoothing_term(f, n, m) <= m * smoothing_term(f, n, 1) + 1e-12);
  }
}

TEST_CASE("mixtures are no rougher than their components on average") {
  std::mt19937_64 gen(26);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int parts = 2 + static_cast<int>(gen() % 3);
    std::vector<oracle::Law> comp;
    std::vector<double> w;
    double total = 0.0;
    for (int i = 0; i < parts; ++i) {
      comp.push_back(oracle::random_law(gen));
      w.push_back(u(gen));
      total += w.back();
    }
    oracle::Law mix;
    for (int i = 0; i < parts; ++i)
      for (const auto& [k, v] : comp[i]) mix[k] += v * w[i] / total;
    const LatticeDist f = oracle::to_dist(mix);
    for (int n = 1; n <= 3; ++n) {
      for (int m = 1; m <= 3; ++m) {
        double bound = 0.0, span_bound = 0.0;
        for (int i = 0; i < parts; ++i) {
          bound += w[i] / total * smoothing_term(oracle::to_dist(comp[i]), n, m);
          span_bound += w[i] / total * span_smoothing_term(oracle::to_dist(comp[i]), n, m);
        }
        CHECK(smoothing_term(f, n, m) <= bound + 1e-12);
        CHECK(span_smoothing_term(f, n, m) <= span_bound + 1e-12);
      }
    }
  }
}

TEST_CASE("product law for convolutions") {
  std::mt19937_64 gen(27);
  for (int t = 0; t < 300; ++t) {
    const LatticeDist f = oracle::to_dist(oracle::random_law(gen));
    const LatticeDist g = oracle::to_dist(oracle::random_law(gen));
    const LatticeDist fg = convolve(f, g);
    for (int n1 = 1; n1 <= 2; ++n1) {
      for (int n2 = 1; n2 <= 2; ++n2) {
        CHECK(smoothing_term(fg, n1 + n2, 1) <= smoothing_term(f, n1, 1) * smoothing_term(g, n2, 1) + 1e-12);
        for (int m = 1; m <= 3; ++m) {
          CHECK(span_smoothing_term(fg, n1 + n2, m) <=
                span_smoothing_term(f, n1, m) * span_smoothing_term(g, n2, m) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("product law fails for the norm form at span 2") {
  // mass 1/2 at 0 and at 2
  const LatticeDist f = oracle::to_dist({{0, 0.5}, {2, 0.5}});
  const LatticeDist ff = convolve(f, f);
  const double lhs = smoothing_term(ff, 2, 2);
  const double rhs = smoothing_term(f, 1, 2) * smoothing_term(f, 1, 2);
  CHECK(lhs == doctest::Approx(2.0));
  CHECK(rhs == doctest::Approx(1.0));
  CHECK(lhs > rhs);
}
