#include "nw/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "nw/predictor.hpp"

namespace nw {

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS statistic needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());

  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    // Step past every copy of the smallest pending value in both samples
    // before comparing the ECDFs, so ties do not inflate the statistic.
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_critical_1pct(std::size_t n_trials) {
  return 1.63 * std::sqrt(2.0 / static_cast<double>(n_trials));
}

double sorted_uniform_order_stat(std::size_t m, std::size_t i, SeededRng& rng) {
  std::vector<double> u(m);
  for (double& v : u) v = rng.uniform();
  auto nth = u.begin() + static_cast<std::ptrdiff_t>(i - 1);
  std::nth_element(u.begin(), nth, u.end());
  return *nth;
}

double exponential_spacing_order_stat(std::size_t i, std::size_t terms, SeededRng& rng) {
  double head = 0.0;
  double total = 0.0;
  for (std::size_t j = 1; j <= terms; ++j) {
    const double e = rng.exponential();
    if (j <= i) head += e;
    total += e;
  }
  return head / total;
}

KsReport order_stat_representation_check(std::size_t m, std::size_t i, std::size_t n_trials,
                                         SeededRng& rng, std::optional<std::size_t> denominator_terms) {
  if (m == 0 || i == 0 || i > m) {
    throw std::invalid_argument("order statistic index " + std::to_string(i) + " out of range [1, " +
                                std::to_string(m) + "]");
  }
  if (n_trials < 1000) throw std::invalid_argument("n_trials must be at least 1000");
  const std::size_t terms = denominator_terms.value_or(m + 1);
  if (terms < i) throw std::invalid_argument("denominator must include the numerator terms");

  std::vector<double> sorted(n_trials);
  std::vector<double> spacing(n_trials);
  for (double& v : sorted) v = sorted_uniform_order_stat(m, i, rng);
  for (double& v : spacing) v = exponential_spacing_order_stat(i, terms, rng);

  KsReport r;
  r.statistic = ks_statistic(sorted, spacing);
  r.n_trials = n_trials;
  r.threshold = ks_critical_1pct(n_trials);
  r.pass = r.statistic < r.threshold;
  return r;
}

double exp_sum_outside_prob(std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  const double a = static_cast<double>(n);
  return boost::math::gamma_p(a, 0.5 * a) + boost::math::gamma_q(a, 1.5 * a);
}

TailReport exp_partial_sum_tail(std::size_t n, std::size_t n_trials, SeededRng& rng) {
  if (n == 0 || n_trials == 0) throw std::invalid_argument("n and n_trials must be positive");
  const double lo = 0.5 * static_cast<double>(n);
  const double hi = 1.5 * static_cast<double>(n);
  std::size_t outside = 0;
  for (std::size_t t = 0; t < n_trials; ++t) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += rng.exponential();
    if (sum < lo || sum > hi) ++outside;
  }

  TailReport r;
  r.n = n;
  r.empirical_prob = static_cast<double>(outside) / static_cast<double>(n_trials);
  r.exact_prob = exp_sum_outside_prob(n);
  r.band = 4.0 * std::sqrt(r.exact_prob * (1.0 - r.exact_prob) / static_cast<double>(n_trials)) + 1e-4;
  const bool decays = exp_sum_outside_prob(2 * n) < r.exact_prob;
  r.pass = std::abs(r.empirical_prob - r.exact_prob) < r.band && decays;
  return r;
}

LocalCdfReport local_cdf_check(std::size_t d, double r, double beta, std::span<const double> u_grid,
                               std::size_t n_samples, SeededRng& rng, double eps) {
  if (d == 0 || !(r > 0.0) || !(beta > 0.0) || n_samples == 0) {
    throw std::invalid_argument("local CDF check needs d >= 1, r > 0, beta > 0, n_samples >= 1");
  }
  const double dd = static_cast<double>(d);
  const double vd = unit_ball_volume(d);
  const double alpha = beta / dd;
  const double mu = 1.0 / (vd * std::pow(r, dd));
  const double valid = std::min(1.0, std::pow(vd, alpha) * std::pow(r, beta));
  for (double u : u_grid) {
    if (!(u >= 0.0 && u <= valid)) {
      throw std::invalid_argument("u = " + std::to_string(u) + " outside validity range [0, " +
                                  std::to_string(valid) + "]");
    }
  }

  std::vector<double> w(n_samples);
  std::vector<double> z(d);
  for (double& v : w) {
    sample_in_ball(z, r, rng);
    double sumsq = 0.0;
    for (double c : z) sumsq += c * c;
    v = std::pow(vd, alpha) * std::pow(sumsq, 0.5 * beta);
  }
  std::sort(w.begin(), w.end());

  const double n = static_cast<double>(n_samples);
  auto inverse_cdf = [&](double u) { return std::pow(u / mu, alpha); };
  auto empirical_quantile = [&](double u) {
    if (u <= 0.0) return 0.0;
    const auto k = static_cast<std::size_t>(std::ceil(u * n));
    return w[std::min(k, n_samples) - 1];
  };

  LocalCdfReport rep;
  rep.d = d;
  rep.beta = beta;
  rep.mu = mu;
  rep.alpha = alpha;
  rep.pass = true;
  for (double u : u_grid) {
    QuantileRow row;
    row.u = u;
    row.empirical = empirical_quantile(u);
    row.exact = inverse_cdf(u);
    // Inverting (1 -+ 1/2) mu w^(1/alpha) gives the bracket in the form
    // (2 / (3 mu))^alpha u^alpha <= F^-1(u) <= (2 / mu)^alpha u^alpha.
    row.lower = std::pow(2.0 / (3.0 * mu), alpha) * std::pow(u, alpha) * (1.0 - eps);
    row.upper = std::pow(2.0 / mu, alpha) * std::pow(u, alpha) * (1.0 + eps);
    const double slack = 5.0 * std::sqrt(u * (1.0 - u) / n) + 1.0 / n;
    row.exact_low = inverse_cdf(std::max(0.0, u - slack));
    row.exact_high = inverse_cdf(std::min(1.0, u + slack));
    row.in_bracket = row.empirical >= row.lower && row.empirical <= row.upper;
    row.matches_exact = row.empirical >= row.exact_low && row.empirical <= row.exact_high;
    rep.pass = rep.pass && row.in_bracket && row.matches_exact;
    rep.rows.push_back(row);
  }
  return rep;
}

AgreementReport knn_agreement(const DistributionSpec& distribution, double beta, std::size_t m,
                              std::size_t n_queries, std::size_t k, SeededRng& rng) {
  validate(distribution);
  const std::size_t d = dimension(distribution);
  if (!(beta > static_cast<double>(d))) {
    throw std::invalid_argument("knn agreement is defined for the locality regime beta > d");
  }
  if (m == 0 || n_queries == 0) throw std::invalid_argument("m and n_queries must be positive");
  if (k == 0 || k > m) throw std::invalid_argument("k must lie in [1, m]");

  TrainingSet train = sample(distribution, m, rng);
  std::vector<Label> coin(m);
  for (Label& y : coin) y = rng.uniform() < 0.5 ? Label::Negative : Label::Positive;
  train = train.with_labels(std::move(coin));
  const TrainingSet queries = sample(distribution, n_queries, rng);

  const PredictorConfig cfg{beta, TieBreak::PlusOne};
  std::size_t agree = 0;
  for (std::size_t q = 0; q < n_queries; ++q) {
    const auto x = queries.point(q);
    if (predict(x, train, cfg) == knn_predict(x, train, k)) ++agree;
  }

  AgreementReport r;
  r.n_queries = n_queries;
  const double n = static_cast<double>(n_queries);
  r.rate = static_cast<double>(agree) / n;
  // Wilson score interval.
  const double z = 1.959963984540054;
  const double denom = 1.0 + z * z / n;
  const double centre = (r.rate + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(r.rate * (1.0 - r.rate) / n + z * z / (4.0 * n * n)) / denom;
  r.ci_low = std::max(0.0, centre - half);
  r.ci_high = std::min(1.0, centre + half);
  return r;
}

}  // namespace nw
