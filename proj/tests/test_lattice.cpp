#include <doctest.h>

#include "lkllt/lattice.hpp"
#include "oracles.hpp"

using namespace lkllt;

namespace {

Eigen::ArrayXd arr(std::initializer_list<double> v) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) a(i++) = x;
  return a;
}

void check_same(const LatticeDist& a, const oracle::Law& b, double tol = 1e-12) {
  for (long k = std::min(a.offset(), b.begin()->first); k <= std::max(a.last(), b.rbegin()->first); ++k)
    CHECK(std::abs(a(k) - oracle::mass(b, k)) <= tol);
}

void check_close(const SignedSeq& a, const SignedSeq& b, double tol = 1e-12) {
  const long lo = std::min(a.offset(), b.offset());
  const long hi = std::max(a.last(), b.last());
  for (long k = lo; k <= hi; ++k) CHECK(std::abs(a(k) - b(k)) <= tol);
}

SignedSeq random_seq(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int w = 1 + static_cast<int>(gen() % 10);
  Eigen::ArrayXd v(w);
  for (int i = 0; i < w; ++i) v(i) = u(gen);
  return SignedSeq(static_cast<long>(gen() % 11) - 5, v);
}

}  // namespace

TEST_CASE("dist_from_weights normalizes and trims") {
  const LatticeDist be = dist_from_weights(0, arr({1, 1}));
  CHECK(be.offset() == 0);
  CHECK(be.size() == 2);
  CHECK(be(0) == doctest::Approx(0.5));

  const LatticeDist two = dist_from_weights(-3, arr({0, 2, 0, 0, 2, 0}));
  CHECK(two.offset() == -2);
  CHECK(two.size() == 4);
  CHECK(two(-2) == 0.5);
  CHECK(two(1) == 0.5);
  CHECK(two(0) == 0.0);
}

TEST_CASE("dist_from_weights rejects bad weights") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::NumericalFailure;
  };
  CHECK(kind([] { dist_from_weights(0, arr({0, 0})); }) == ErrorKind::InvalidDistribution);
  CHECK(kind([] { dist_from_weights(0, arr({1, -1})); }) == ErrorKind::InvalidDistribution);
  CHECK(kind([] { dist_from_weights(0, arr({1, std::nan("")})); }) == ErrorKind::InvalidDistribution);
  CHECK(kind([] { LatticeDist::from_pmf(0, arr({0.5, 0.4})); }) == ErrorKind::InvalidDistribution);
}

TEST_CASE("from_pmf renormalizes tiny drift") {
  const LatticeDist d = LatticeDist::from_pmf(3, arr({0.5, 0.5 + 1e-10}));
  CHECK(std::abs(d.pmf().sum() - 1.0) <= 1e-15);
  CHECK(d.offset() == 3);
}

TEST_CASE("smooth_uniform examples") {
  const LatticeDist d0 = LatticeDist::point_mass(0);
  const LatticeDist s1 = smooth_uniform(d0, 1);
  CHECK(s1.offset() == 0);
  CHECK(s1.size() == 1);
  const LatticeDist s2 = smooth_uniform(d0, 2);
  CHECK(s2(0) == 0.5);
  CHECK(s2(1) == 0.5);
  const LatticeDist be = dist_from_weights(0, arr({1, 1}));
  check_same(smooth_uniform(be, 2), oracle::Law{{0, 0.25}, {1, 0.5}, {2, 0.25}});
  CHECK_THROWS_AS(smooth_uniform(d0, 0), Error);
}

TEST_CASE("smooth_uniform matches direct convolution and shifts the mean") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 200; ++t) {
    const oracle::Law law = oracle::random_law(gen, 20);
    const int m = 1 + static_cast<int>(gen() % 5);
    const LatticeDist f = oracle::to_dist(law);
    const LatticeDist s = smooth_uniform(f, m);
    check_same(s, oracle::convolve(law, oracle::uniform(0, m - 1)));
    CHECK(std::abs(s.mean() - (f.mean() + (m - 1) / 2.0)) <= 1e-10);
  }
}

TEST_CASE("difference examples") {
  const SignedSeq delta = LatticeDist::point_mass(0).as_seq();
  const SignedSeq d1 = difference(delta, 1);
  CHECK(d1.offset() == -1);
  CHECK(d1(-1) == 1.0);
  CHECK(d1(0) == -1.0);
  check_close(difference(delta, 0), delta, 0.0);

  const SignedSeq u = oracle::to_dist(oracle::uniform(0, 4)).as_seq();
  const SignedSeq du = difference(u, 1);
  CHECK(du(-1) == doctest::Approx(0.2));
  CHECK(du(4) == doctest::Approx(-0.2));
  for (long k = 0; k < 4; ++k) CHECK(std::abs(du(k)) <= 1e-15);
}

TEST_CASE("difference of a pmf sums to zero and composes") {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 200; ++t) {
    const SignedSeq s = oracle::to_dist(oracle::random_law(gen, 30)).as_seq();
    for (int n = 1; n <= 6; ++n) CHECK(std::abs(difference(s, n).values().sum()) <= 1e-11);
    const SignedSeq r = random_seq(gen);
    const int a = static_cast<int>(gen() % 6);
    const int b = static_cast<int>(gen() % 6);
    check_close(difference(r, a + b), difference(difference(r, a), b), 1e-9);
  }
}

TEST_CASE("span_difference") {
  const SignedSeq delta = LatticeDist::point_mass(0).as_seq();
  const SignedSeq d = span_difference(delta, 1, 2);
  CHECK(d.offset() == -2);
  CHECK(d(-2) == 1.0);
  CHECK(d(-1) == 0.0);
  CHECK(d(0) == -1.0);
  CHECK_THROWS_AS(span_difference(delta, 1, 0), Error);

  std::mt19937_64 gen(13);
  for (int t = 0; t < 100; ++t) {
    const SignedSeq s = random_seq(gen);
    check_close(span_difference(s, 0, 3), s, 0.0);
    for (int n = 0; n <= 4; ++n) check_close(span_difference(s, n, 1), difference(s, n), 0.0);
    // n-fold composition of the span-m step
    const int m = 1 + static_cast<int>(gen() % 4);
    const int n = 1 + static_cast<int>(gen() % 4);
    SignedSeq composed = s;
    for (int i = 0; i < n; ++i) composed = span_difference(composed, 1, m);
    check_close(span_difference(s, n, m), composed, 1e-12);
  }
}

TEST_CASE("seq_norm") {
  const SignedSeq d1 = difference(LatticeDist::point_mass(0).as_seq(), 1);
  CHECK(seq_norm(d1, 1.0) == 2.0);
  CHECK(seq_norm(d1, std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(seq_norm(d1, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(seq_norm(dist_from_weights(0, arr({1, 1})).as_seq(), 1.0) == 1.0);
  CHECK(seq_norm(SignedSeq(), Norm::L1) == 0.0);
  CHECK(seq_norm(SignedSeq(), Norm::Linf) == 0.0);
  CHECK_THROWS_AS(seq_norm(d1, 3.0), Error);
}

TEST_CASE("signed sequences trim exact zeros") {
  const SignedSeq s(4, arr({0, 0, 1.5, 0}));
  CHECK(s.offset() == 6);
  CHECK(s.size() == 1);
  CHECK(SignedSeq(0, arr({0, 0})).is_zero());
}

TEST_CASE("convolve examples") {
  const LatticeDist c = convolve(LatticeDist::point_mass(2), LatticeDist::point_mass(3));
  CHECK(c.offset() == 5);
  CHECK(c.size() == 1);
  const LatticeDist be = dist_from_weights(0, arr({1, 1}));
  check_same(convolve(be, be), oracle::binomial(2, 0.5));
  check_same(convolve(oracle::to_dist(oracle::binomial(4, 0.3)), oracle::to_dist(oracle::binomial(6, 0.3))),
             oracle::binomial(10, 0.3));
}

TEST_CASE("convolve is commutative and associative") {
  std::mt19937_64 gen(14);
  for (int t = 0; t < 100; ++t) {
    const oracle::Law la = oracle::random_law(gen), lb = oracle::random_law(gen), lc = oracle::random_law(gen);
    const LatticeDist a = oracle::to_dist(la), b = oracle::to_dist(lb), c = oracle::to_dist(lc);
    const LatticeDist ab = convolve(a, b);
    check_same(ab, oracle::convolve(la, lb));
    check_same(convolve(b, a), oracle::to_law(ab));
    check_same(convolve(ab, c), oracle::to_law(convolve(a, convolve(b, c))));
    CHECK(std::abs(ab.pmf().sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("moments and shifts") {
  const LatticeDist b = oracle::to_dist(oracle::binomial(10, 0.3));
  CHECK(b.mean() == doctest::Approx(3.0));
  CHECK(b.variance() == doctest::Approx(2.1));
  const LatticeDist s = b.shifted(-7);
  CHECK(s.offset() == -7);
  CHECK(s.mean() == doctest::Approx(-4.0));
  CHECK(b.cdf(-1) == 0.0);
  CHECK(b.cdf(10) == doctest::Approx(1.0));
}
