#include <doctest.h>

#include <cstdlib>

#include "lkllt/lk.hpp"
#include "lkllt/tp.hpp"
#include "oracles.hpp"

using namespace lkllt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

constexpr ComboRow kRows[] = {ComboRow::LocalVsTv, ComboRow::LocalVsKolmogorov, ComboRow::LocalVsWasserstein,
                              ComboRow::TvVsWasserstein, ComboRow::KolmogorovVsWasserstein};

}  // namespace

TEST_CASE("beta_exponent examples") {
  BetaExponent b = beta_exponent(1, 3, kInf, kInf, 1);
  CHECK(b.admissible);
  CHECK(b.beta == doctest::Approx(0.5));
  b = beta_exponent(1, 2, 1, 1, 1);
  CHECK(b.admissible);
  CHECK(b.beta == doctest::Approx(0.5));
  CHECK_FALSE(beta_exponent(1, 2, kInf, 1, kInf).admissible);
  CHECK_THROWS_AS(beta_exponent(2, 2, 1, 1, 1), Error);
  CHECK_THROWS_AS(beta_exponent(1, 2, 0.5, 1, 1), Error);
}

TEST_CASE("combination table exponents follow from the exponent formula") {
  for (int l = 1; l <= 6; ++l) {
    const int n = l + 1;
    // sup-norm of f against sup-norm: dloc vs dK
    CHECK(LKCombo::make(ComboRow::LocalVsKolmogorov, l, 1).beta ==
          doctest::Approx(beta_exponent(1, n, kInf, kInf, 1).beta));
    // sup-norm against l1: dloc vs dW
    CHECK(LKCombo::make(ComboRow::LocalVsWasserstein, l, 1).beta ==
          doctest::Approx(beta_exponent(1, n, 1, kInf, 1).beta));
    // l1 against l1: dTV vs dW
    CHECK(LKCombo::make(ComboRow::TvVsWasserstein, l, 1).beta ==
          doctest::Approx(beta_exponent(1, n, 1, 1, 1).beta));
    CHECK(LKCombo::make(ComboRow::LocalVsTv, l, 1).beta == doctest::Approx(1.0 / l));
    CHECK(LKCombo::make(ComboRow::KolmogorovVsWasserstein, l, 1).beta == doctest::Approx(1.0 / (l + 1)));
    for (double p : {1.0, 2.0, kInf})
      for (double q : {1.0, 2.0, kInf}) {
        const BetaExponent b = beta_exponent(1, n, p, q, 1);
        if (b.admissible) CHECK(b.beta > 0.0);
      }
  }
  CHECK_THROWS_AS(LKCombo::make(ComboRow::LocalVsTv, 0, 1), Error);
}

TEST_CASE("lk_sides on identical laws") {
  const LatticeDist f = oracle::to_dist(oracle::binomial(7, 0.4));
  for (ComboRow row : kRows) {
    const LKReport r = lk_sides(f, f, LKCombo::make(row, 2, 2));
    CHECK(r.lhs == 0.0);
    CHECK(r.ratio == 0.0);
    CHECK(r.d2_value == 0.0);
    CHECK(r.smooth_sum > 0.0);
  }
}

TEST_CASE("binomial against its translated Poisson stays within the known constant") {
  const LatticeDist f = oracle::to_dist(oracle::binomial(20, 0.5));
  const LatticeDist g = tp_dist(tp_params(10.0, 5.0));
  const LKReport ii = lk_sides(f, g, LKCombo::make(ComboRow::LocalVsKolmogorov, 2, 1));
  CHECK(ii.ratio > 0.0);
  CHECK(ii.ratio <= kSqrt2);
  const LKReport iv = lk_sides(f, g, LKCombo::make(ComboRow::TvVsWasserstein, 1, 1));
  CHECK(iv.ratio > 0.0);
  CHECK(iv.ratio <= kSqrt2);
  // sides computed by hand from the metrics module
  const LatticeDist fs = smooth_uniform(f, 1), gs = smooth_uniform(g, 1);
  CHECK(ii.lhs == doctest::Approx(local_distance(fs, gs)));
  CHECK(ii.d2_value == doctest::Approx(kolmogorov_distance(f, g)));
  CHECK(ii.smooth_sum == doctest::Approx(smoothing_term(f, 2, 1) + smoothing_term(g, 2, 1)));
  CHECK(ii.rhs_core == doctest::Approx(std::sqrt(ii.d2_value * ii.smooth_sum)));
}

TEST_CASE("known-constant rows hold on random pairs; other rows only report") {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 400; ++t) {
    const LatticeDist f = oracle::to_dist(oracle::random_law(gen, 25));
    const LatticeDist g = oracle::to_dist(oracle::random_law(gen, 25));
    for (int m = 1; m <= 3; ++m) {
      for (int l = 1; l <= 3; ++l) {
        for (ComboRow row : kRows) {
          const LKCombo combo = LKCombo::make(row, l, m);
          const LKReport r = lk_sides(f, g, combo);
          CHECK(r.lhs >= 0.0);
          CHECK(std::isfinite(r.ratio));
          const double c = known_constant(combo);
          if (c > 0.0) CHECK(r.lhs <= c * r.rhs_core + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("smoothing does not increase the coarse metrics") {
  std::mt19937_64 gen(32);
  for (int t = 0; t < 300; ++t) {
    const LatticeDist f = oracle::to_dist(oracle::random_law(gen, 25));
    const LatticeDist g = oracle::to_dist(oracle::random_law(gen, 25));
    for (int m = 1; m <= 4; ++m) {
      const LatticeDist fs = smooth_uniform(f, m), gs = smooth_uniform(g, m);
      CHECK(kolmogorov_distance(fs, gs) <= kolmogorov_distance(f, g) + 1e-12);
      CHECK(total_variation_distance(fs, gs) <= total_variation_distance(f, g) + 1e-12);
      CHECK(wasserstein_distance(fs, gs) <= wasserstein_distance(f, g) + 1e-12);
    }
  }
}

TEST_CASE("lk_inequality for the two known cases") {
  std::mt19937_64 gen(33);
  for (int t = 0; t < 500; ++t) {
    const LatticeDist f = oracle::to_dist(oracle::random_law(gen, 30));
    const LatticeDist g = oracle::to_dist(oracle::random_law(gen, 30));
    for (KnownConstantCase c : {KnownConstantCase::N2_P1_Q1_R1, KnownConstantCase::N3_Pinf_Qinf_R1}) {
      const LKInequality r = lk_inequality(f, g, c, 1 + static_cast<int>(t % 3));
      CHECK(r.ratio <= kSqrt2);
    }
  }
  const LatticeDist f = LatticeDist::point_mass(0);
  CHECK(lk_inequality(f, f, KnownConstantCase::N2_P1_Q1_R1).ratio == 0.0);
}

TEST_CASE("random generators cover the corner cases") {
  Rng rng(5);
  int point = 0, two = 0;
  for (int t = 0; t < 2000; ++t) {
    const LatticeDist d = random_lattice_dist(rng);
    CHECK(d.size() <= 50);
    CHECK(std::abs(d.pmf().sum() - 1.0) <= 1e-12);
    point += d.size() == 1;
    two += (d.pmf() > 0).count() == 2;
  }
  CHECK(point > 0);
  CHECK(two > 0);
}

TEST_CASE("lk_fuzz is deterministic and respects the constant") {
  for (KnownConstantCase c : {KnownConstantCase::N2_P1_Q1_R1, KnownConstantCase::N3_Pinf_Qinf_R1}) {
    const LKFuzzResult a = lk_fuzz(500, 1, c);
    const LKFuzzResult b = lk_fuzz(500, 1, c);
    CHECK(a.worst_ratio == b.worst_ratio);
    CHECK(a.trials.size() == 500);
    CHECK(a.worst_ratio <= kSqrt2);
    CHECK(a.worst_ratio > 0.5);
    // a prefix of a longer run is the shorter run
    const LKFuzzResult longer = lk_fuzz(600, 1, c);
    for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(a.trials[i].ratio == longer.trials[i].ratio);
    CHECK(lk_fuzz(500, 2, c).worst_ratio != a.worst_ratio);
  }
  CHECK(to_string(KnownConstantCase::N2_P1_Q1_R1) != to_string(KnownConstantCase::N3_Pinf_Qinf_R1));
}

TEST_CASE("lk_fuzz does not depend on the worker count") {
  setenv("LKLLT_THREADS", "1", 1);
  const LKFuzzResult serial = lk_fuzz(300, 9, KnownConstantCase::N3_Pinf_Qinf_R1);
  setenv("LKLLT_THREADS", "4", 1);
  const LKFuzzResult parallel = lk_fuzz(300, 9, KnownConstantCase::N3_Pinf_Qinf_R1);
  unsetenv("LKLLT_THREADS");
  CHECK(serial.worst_ratio == parallel.worst_ratio);
}
