#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "nw/verifiers.hpp"

using nw::SeededRng;

namespace {

using big = boost::multiprecision::cpp_dec_float_50;

// Independent oracle for integer shape: Pr(Gamma(n,1) <= x) = 1 - sum_{k<n} e^-x x^k / k!.
big gamma_cdf_poisson(unsigned n, const big& x) {
  big term = exp(-x);
  big sum = term;
  for (unsigned k = 1; k < n; ++k) {
    term *= x / k;
    sum += term;
  }
  return 1 - sum;
}

double outside_oracle(unsigned n) {
  const big lo = gamma_cdf_poisson(n, big(n) / 2);
  const big hi = gamma_cdf_poisson(n, big(3 * n) / 2);
  return static_cast<double>(lo + (1 - hi));
}

}  // namespace

TEST_CASE("KS statistic") {
  const std::vector<double> a{1, 2, 3, 4};
  CHECK(nw::ks_statistic(a, a) == 0.0);
  CHECK(nw::ks_statistic(a, std::vector<double>{5, 6}) == 1.0);
  CHECK(nw::ks_statistic(std::vector<double>{1, 2}, std::vector<double>{2, 3}) == doctest::Approx(0.5));
  // Ties across samples are stepped over together.
  CHECK(nw::ks_statistic(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 2}) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(nw::ks_critical_1pct(10'000) == doctest::Approx(0.023052).epsilon(1e-4));
  CHECK_THROWS_AS(nw::ks_statistic({}, a), std::invalid_argument);
}

TEST_CASE("order statistic representation") {
  SUBCASE("m = 1 compares two uniform laws") {
    SeededRng rng(1);
    const auto r = nw::order_stat_representation_check(1, 1, 10'000, rng);
    CHECK(r.statistic < 0.023);
    CHECK(r.pass);
  }
  SUBCASE("m = 100, i = 10 passes") {
    SeededRng rng(2);
    const auto r = nw::order_stat_representation_check(100, 10, 10'000, rng);
    CHECK(r.threshold == doctest::Approx(0.0231).epsilon(1e-2));
    CHECK(r.pass);
  }
  SUBCASE("dropping the last exponential from the normalizer is detected") {
    SeededRng rng(3);
    const auto r = nw::order_stat_representation_check(100, 10, 100'000, rng, 100);
    CHECK_FALSE(r.pass);
  }
  SUBCASE("index validation") {
    SeededRng rng(4);
    CHECK_THROWS_AS(nw::order_stat_representation_check(10, 11, 1000, rng), std::invalid_argument);
    CHECK_THROWS_AS(nw::order_stat_representation_check(10, 0, 1000, rng), std::invalid_argument);
    CHECK_THROWS_AS(nw::order_stat_representation_check(10, 1, 999, rng), std::invalid_argument);
  }
}

TEST_CASE("exponential partial sum tails") {
  // Closed form for n = 1: (1 - e^-1/2) + e^-3/2.
  CHECK(nw::exp_sum_outside_prob(1) == doctest::Approx(0.6165995004357964).epsilon(1e-13));

  // Frozen 50-digit values, cross-checked against the Poisson-sum oracle.
  CHECK(nw::exp_sum_outside_prob(5) == doctest::Approx(0.24088383737356936547).epsilon(1e-12));
  CHECK(nw::exp_sum_outside_prob(20) == doctest::Approx(0.025327810417247660998).epsilon(1e-12));
  CHECK(nw::exp_sum_outside_prob(100) == doctest::Approx(5.9248603420163743419e-6).epsilon(1e-10));
  for (unsigned n : {1u, 2u, 5u, 20u, 100u, 200u}) {
    CHECK(nw::exp_sum_outside_prob(n) == doctest::Approx(outside_oracle(n)).epsilon(1e-10));
  }

  CHECK(nw::exp_sum_outside_prob(200) < nw::exp_sum_outside_prob(20));
  CHECK(nw::exp_sum_outside_prob(20) < nw::exp_sum_outside_prob(2));

  SeededRng rng(5);
  const auto r = nw::exp_partial_sum_tail(20, 100'000, rng);
  CHECK(r.pass);
  CHECK(std::abs(r.empirical_prob - r.exact_prob) < r.band);
}

TEST_CASE("local CDF check on the uniform ball") {
  SUBCASE("d = 1, r = 1, beta = 1: quantile is 2u") {
    SeededRng rng(6);
    const std::vector<double> grid{0.0, 0.1};
    const auto rep = nw::local_cdf_check(1, 1.0, 1.0, grid, 1'000'000, rng);
    CHECK(rep.mu == doctest::Approx(0.5));
    CHECK(rep.rows[0].empirical == 0.0);
    CHECK(rep.rows[0].exact == 0.0);
    CHECK(rep.rows[1].exact == doctest::Approx(0.2));
    CHECK(std::abs(rep.rows[1].empirical - 0.2) < 0.01);
    CHECK(rep.pass);
  }
  SUBCASE("exact quantile always sits inside the bracket on the test grid") {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (double beta : {d / 2.0, double(d), 2.0 * d}) {
        SeededRng rng(7 + d);
        const std::vector<double> grid{0.01, 0.05, 0.1};
        const auto rep = nw::local_cdf_check(d, 1.0, beta, grid, 200'000, rng);
        for (const auto& row : rep.rows) {
          CHECK(row.exact >= row.lower);
          CHECK(row.exact <= row.upper);
        }
        CHECK(rep.pass);
      }
    }
  }
  SUBCASE("u beyond the validity range is rejected") {
    SeededRng rng(8);
    const std::vector<double> grid{1.5};
    CHECK_THROWS_AS(nw::local_cdf_check(1, 1.0, 1.0, grid, 1000, rng), std::invalid_argument);
    // With r = 0.1 the range shrinks to (V_d r^d)^alpha.
    const std::vector<double> grid2{0.5};
    CHECK_THROWS_AS(nw::local_cdf_check(2, 0.1, 2.0, grid2, 1000, rng), std::invalid_argument);
  }
}

TEST_CASE("knn agreement") {
  SUBCASE("beta = 200 d agrees with 1-NN") {
    SeededRng rng(9);
    const auto r = nw::knn_agreement(nw::UnitCube{2}, 400.0, 500, 1000, 1, rng);
    CHECK(r.rate >= 0.99);
    CHECK(r.ci_low <= r.rate);
    CHECK(r.ci_high >= r.rate);
  }
  SUBCASE("single training point") {
    for (double beta : {1.5, 4.0, 100.0}) {
      SeededRng rng(10);
      CHECK(nw::knn_agreement(nw::UnitCube{1}, beta, 1, 200, 1, rng).rate == 1.0);
    }
  }
  SUBCASE("locality strengthens with beta") {
    double strong = 0.0, weak = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SeededRng a(100 + seed), b(100 + seed);
      strong += nw::knn_agreement(nw::UnitCube{2}, 8.0, 200, 300, 1, a).rate;
      weak += nw::knn_agreement(nw::UnitCube{2}, 2.2, 200, 300, 1, b).rate;
    }
    CHECK(strong >= weak);
  }
  SUBCASE("bit-exact reproducibility") {
    SeededRng a(11), b(11);
    const auto r1 = nw::knn_agreement(nw::SphereCap{}, 5.0, 300, 300, 3, a);
    const auto r2 = nw::knn_agreement(nw::SphereCap{}, 5.0, 300, 300, 3, b);
    CHECK(r1.rate == r2.rate);
  }
  SUBCASE("outside the locality regime") {
    SeededRng rng(12);
    CHECK_THROWS_AS(nw::knn_agreement(nw::UnitCube{2}, 2.0, 10, 10, 1, rng), std::invalid_argument);
  }
}
