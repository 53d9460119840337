#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "nw/predictor.hpp"
#include "nw/rng.hpp"

using nw::Label;
using nw::PredictorConfig;
using nw::TieBreak;
using nw::TrainingSet;

namespace {

TrainingSet line(std::initializer_list<std::pair<double, int>> pts) {
  TrainingSet s(1);
  for (auto [x, y] : pts) s.add(std::vector<double>{x}, nw::label_from_int(y));
  return s;
}

TrainingSet random_set(nw::SeededRng& rng, std::size_t m, std::size_t d) {
  TrainingSet s(d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < m; ++i) {
    for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
    s.add(x, rng.uniform() < 0.5 ? Label::Negative : Label::Positive);
  }
  return s;
}

// Brute-force oracle: the plain double-precision sum of y_i |x - x_i|^-beta.
double naive_sum(std::span<const double> x, const TrainingSet& s, double beta) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double sq = 0.0;
    for (std::size_t j = 0; j < s.dim(); ++j) sq += (x[j] - s.point(i)[j]) * (x[j] - s.point(i)[j]);
    sum += nw::to_int(s.label(i)) * std::pow(std::sqrt(sq), -beta);
  }
  return sum;
}

// Query whose score is far from a tie, so floating-point reassociation cannot flip it.
bool clear_margin(std::span<const double> x, const TrainingSet& s, double beta) {
  const auto r = nw::raw_score(x, s, beta);
  std::vector<double> ld(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) ld[i] = nw::log_distance(x, s.point(i));
  const auto sums = nw::class_log_sums(ld, s.labels(), beta);
  return r.sign != 0 && std::abs(sums.positive - sums.negative) > 1e-6;
}

}  // namespace

TEST_CASE("raw_score: single point at distance one half") {
  const auto s = line({{0.0, +1}});
  const std::vector<double> x{0.5};
  const auto r = nw::raw_score(x, s, 1.0);
  CHECK(r.sign == 1);
  CHECK(r.log_magnitude == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK_FALSE(r.exact_hit.has_value());
}

TEST_CASE("raw_score: mirror symmetry gives an exact tie") {
  const auto s = line({{-1.0, +1}, {1.0, -1}});
  const std::vector<double> x{0.0};
  for (double beta : {0.3, 1.0, 2.0, 17.0}) {
    const auto r = nw::raw_score(x, s, beta);
    CHECK(r.sign == 0);
    CHECK(r.log_magnitude == -std::numeric_limits<double>::infinity());
    CHECK(nw::predict(x, s, {beta, TieBreak::PlusOne}) == Label::Positive);
    CHECK(nw::predict(x, s, {beta, TieBreak::MinusOne}) == Label::Negative);
  }
}

TEST_CASE("raw_score: large beta") {
  const auto s = line({{0.0, +1}, {1.0, -1}});
  const std::vector<double> x{0.25};
  const auto r = nw::raw_score(x, s, 400.0);
  CHECK(r.sign == 1);
  // log(4^400 - (4/3)^400) = 400 log 4 + log1p(-3^-400)
  CHECK(r.log_magnitude == doctest::Approx(400.0 * std::log(4.0)).epsilon(1e-12));

  // 4^600 is past the double range; the log-domain score is not.
  REQUIRE(std::isinf(naive_sum(x, s, 600.0)));
  const auto big = nw::raw_score(x, s, 600.0);
  CHECK(big.sign == 1);
  CHECK(big.log_magnitude == doctest::Approx(600.0 * std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("raw_score: exact hit reports the index and label") {
  const auto s = line({{0.1, +1}, {0.2, +1}, {0.3, +1}, {0.4, -1}, {0.5, +1}});
  const std::vector<double> x{0.4};
  const auto r = nw::raw_score(x, s, 2.0);
  REQUIRE(r.exact_hit.has_value());
  CHECK(*r.exact_hit == 3);
  CHECK(r.sign == -1);
  CHECK(nw::predict(x, s, {2.0}) == Label::Negative);
}

TEST_CASE("raw_score: near duplicate at distance 1e-300 keeps a finite weight") {
  const auto s = line({{0.0, -1}, {0.5, +1}});
  const std::vector<double> x{1e-300};
  CHECK(std::isfinite(nw::log_distance(x, s.point(0))));
  CHECK(nw::log_distance(x, s.point(0)) == doctest::Approx(std::log(1e-300)));
  const auto r = nw::raw_score(x, s, 3.0);
  CHECK_FALSE(r.exact_hit.has_value());
  CHECK(r.sign == -1);
  CHECK(std::isfinite(r.log_magnitude));
}

TEST_CASE("log_distance handles overflow of the squared sum") {
  const std::vector<double> a{1e200, 0.0};
  const std::vector<double> b{-1e200, 0.0};
  CHECK(nw::log_distance(a, b) == doctest::Approx(std::log(2e200)));
  const std::vector<double> c{1.7e308};
  const std::vector<double> d{-1.7e308};
  CHECK(nw::log_distance(c, d) == doctest::Approx(std::log(1.7e308) + std::log(2.0)));
}

TEST_CASE("predict: worked examples") {
  CHECK(nw::predict(std::vector<double>{0.9}, line({{0.0, +1}}), {3.0}) == Label::Positive);
  const auto s = line({{0.0, +1}, {1.0, -1}});
  CHECK(nw::predict(std::vector<double>{0.25}, s, {2.0}) == Label::Positive);
  CHECK(nw::predict(std::vector<double>{0.75}, s, {2.0}) == Label::Negative);
}

TEST_CASE("raw_score: input validation") {
  const auto s = line({{0.0, +1}});
  CHECK_THROWS_AS(nw::raw_score(std::vector<double>{0.0, 1.0}, s, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(nw::raw_score(std::vector<double>{0.5}, TrainingSet(1), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(nw::raw_score(std::vector<double>{0.5}, s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(nw::raw_score(std::vector<double>{0.5}, s, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(nw::raw_score(std::vector<double>{std::nan("")}, s, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(nw::raw_score(std::vector<double>{INFINITY}, s, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(nw::label_from_int(0), std::invalid_argument);
  TrainingSet bad(1);
  CHECK_THROWS_AS(bad.add(std::vector<double>{NAN}, Label::Positive), std::invalid_argument);
}

TEST_CASE("predict_batch") {
  nw::SeededRng rng(11);
  const auto s = random_set(rng, 10, 2);
  const PredictorConfig cfg{1.5};

  SUBCASE("empty query list") { CHECK(nw::predict_batch({}, s, cfg).empty()); }

  SUBCASE("training inputs return the training labels") {
    const auto out = nw::predict_batch(s.coords(), s, cfg);
    REQUIRE(out.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(out[i] == s.label(i));
  }

  SUBCASE("matches sequential predict") {
    std::vector<double> q(2 * 200);
    for (double& v : q) v = 2.0 * rng.uniform() - 1.0;
    const auto out = nw::predict_batch(q, s, cfg);
    for (std::size_t i = 0; i < 200; ++i) {
      CHECK(out[i] == nw::predict(std::span<const double>(q).subspan(2 * i, 2), s, cfg));
    }
  }

  SUBCASE("invalid query reports its index") {
    std::vector<double> q{0.1, 0.2, 0.3, NAN, 0.5, 0.6};
    try {
      (void)nw::predict_batch(q, s, cfg);
      FAIL("expected BatchError");
    } catch (const nw::BatchError& e) {
      CHECK(e.index() == 1);
    }
    CHECK_THROWS_AS(nw::predict_batch(std::vector<double>{0.1, 0.2, 0.3}, s, cfg), nw::BatchError);
  }
}

TEST_CASE("knn_predict") {
  const auto s = line({{0.0, +1}, {0.1, +1}, {0.2, -1}});
  CHECK(nw::knn_predict(std::vector<double>{0.05}, s, 3) == Label::Positive);
  CHECK(nw::knn_predict(std::vector<double>{0.19}, s, 1) == Label::Negative);
  CHECK(nw::knn_predict(std::vector<double>{0.19}, s, 3) == Label::Positive);  // global majority

  // Equidistant neighbours: the lower index wins the single vote.
  const auto tie = line({{-1.0, -1}, {1.0, +1}});
  CHECK(nw::knn_predict(std::vector<double>{0.0}, tie, 1) == Label::Negative);
  // Split vote goes to +1.
  CHECK(nw::knn_predict(std::vector<double>{0.0}, tie, 2) == Label::Positive);

  CHECK_THROWS_AS(nw::knn_predict(std::vector<double>{0.0}, s, 0), std::invalid_argument);
  CHECK_THROWS_AS(nw::knn_predict(std::vector<double>{0.0}, s, 4), std::invalid_argument);
}

TEST_CASE("property: interpolation, permutation, scaling, antisymmetry") {
  nw::SeededRng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng.uniform_index(3);
    const std::size_t m = 1 + rng.uniform_index(40);
    const double beta = 0.25 + 8.0 * rng.uniform();
    const auto s = random_set(rng, m, d);
    const PredictorConfig cfg{beta};

    for (std::size_t i = 0; i < m; ++i) REQUIRE(nw::predict(s.point(i), s, cfg) == s.label(i));

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    TrainingSet permuted(d);
    for (auto i : perm) permuted.add(s.point(i), s.label(i));

    std::vector<Label> negated_labels;
    for (auto y : s.labels()) negated_labels.push_back(nw::negate(y));
    const auto negated = s.with_labels(negated_labels);

    const double lambda = 0.1 + 10.0 * rng.uniform();
    std::vector<double> scaled_coords(s.coords().begin(), s.coords().end());
    for (double& v : scaled_coords) v *= lambda;
    const auto scaled = s.with_coords(scaled_coords);

    for (int q = 0; q < 20; ++q) {
      std::vector<double> x(d);
      for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
      const auto r = nw::raw_score(x, s, beta);

      // Negating every label swaps the class sums exactly.
      const auto rn = nw::raw_score(x, negated, beta);
      CHECK(rn.sign == -r.sign);

      if (!clear_margin(x, s, beta)) continue;
      CHECK(nw::predict(x, permuted, cfg) == nw::predict(x, s, cfg));
      std::vector<double> xs(x);
      for (double& v : xs) v *= lambda;
      CHECK(nw::predict(xs, scaled, cfg) == nw::predict(x, s, cfg));
    }
  }
}

TEST_CASE("property: rigid motions leave predictions unchanged") {
  nw::SeededRng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + rng.uniform_index(30);
    const double beta = 0.5 + 6.0 * rng.uniform();
    const auto s = random_set(rng, m, 2);
    const double th = 6.283185307179586 * rng.uniform();
    const double tx = rng.uniform() - 0.5;
    const double ty = rng.uniform() - 0.5;
    auto move = [&](std::span<const double> p) {
      return std::vector<double>{std::cos(th) * p[0] - std::sin(th) * p[1] + tx,
                                 std::sin(th) * p[0] + std::cos(th) * p[1] + ty};
    };
    TrainingSet moved(2);
    for (std::size_t i = 0; i < m; ++i) moved.add(move(s.point(i)), s.label(i));
    for (int q = 0; q < 20; ++q) {
      std::vector<double> x{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
      if (!clear_margin(x, s, beta)) continue;
      CHECK(nw::predict(move(x), moved, {beta}) == nw::predict(x, s, {beta}));
    }
  }
}

TEST_CASE("property: log-domain sign matches the naive sum away from zero") {
  nw::SeededRng rng(5150);
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + rng.uniform_index(3);
    const std::size_t m = 1 + rng.uniform_index(50);
    const double beta = 8.0 * rng.uniform_open();
    const auto s = random_set(rng, m, d);
    std::vector<double> x(d);
    for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
    const double naive = naive_sum(x, s, beta);
    if (std::abs(naive) <= 1e-8) continue;
    ++compared;
    CHECK(nw::raw_score(x, s, beta).sign == (naive > 0 ? 1 : -1));
  }
  CHECK(compared > 450);
}

TEST_CASE("property: large beta approaches 1-NN") {
  nw::SeededRng rng(99);
  for (int inst = 0; inst < 100; ++inst) {
    TrainingSet s(2);
    for (int i = 0; i < 500; ++i) {
      s.add(std::vector<double>{rng.uniform(), rng.uniform()}, rng.uniform() < 0.5 ? Label::Negative : Label::Positive);
    }
    int agree = 0;
    for (int q = 0; q < 1000; ++q) {
      const std::vector<double> x{rng.uniform(), rng.uniform()};
      agree += nw::predict(x, s, {400.0}) == nw::knn_predict(x, s, 1);
    }
    CHECK(agree >= 990);
  }
}
