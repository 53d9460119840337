#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nw/rng.hpp"
#include "nw/synthetic.hpp"

namespace nw {

struct KsReport {
  double statistic = 0.0;
  std::size_t n_trials = 0;
  double threshold = 0.0;
  bool pass = false;
};

struct TailReport {
  std::size_t n = 0;
  double empirical_prob = 0.0;
  double exact_prob = 0.0;
  double band = 0.0;
  bool pass = false;
};

struct QuantileRow {
  double u = 0.0;
  double empirical = 0.0;   // empirical u-quantile of W
  double exact = 0.0;       // (u / mu)^alpha
  double lower = 0.0;       // bracket lower edge, relaxed by (1 - eps)
  double upper = 0.0;       // bracket upper edge, relaxed by (1 + eps)
  double exact_low = 0.0;   // sampling band for the exact identity
  double exact_high = 0.0;
  bool in_bracket = false;
  bool matches_exact = false;
};

struct LocalCdfReport {
  std::size_t d = 0;
  double beta = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
  std::vector<QuantileRow> rows;
  bool pass = false;
};

struct AgreementReport {
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_queries = 0;
};

/// Two-sample Kolmogorov-Smirnov statistic sup|F_a - G_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic 1% critical value of the equal-size two-sample KS test.
double ks_critical_1pct(std::size_t n_trials);

/// i-th uniform order statistic of m draws, by sorting.
double sorted_uniform_order_stat(std::size_t m, std::size_t i, SeededRng& rng);

/// (E_1 + ... + E_i) / (E_1 + ... + E_terms) with standard exponentials.
/// terms = m + 1 reproduces the law of the i-th of m uniform order statistics.
double exponential_spacing_order_stat(std::size_t i, std::size_t terms, SeededRng& rng);

/// KS comparison of the two routes to U_(i). `denominator_terms` overrides
/// the m + 1 exponentials in the normalizer (mutation testing only).
KsReport order_stat_representation_check(std::size_t m, std::size_t i, std::size_t n_trials,
                                         SeededRng& rng,
                                         std::optional<std::size_t> denominator_terms = std::nullopt);

/// Pr(sum of n standard exponentials falls outside [n/2, 3n/2]) from the
/// regularized incomplete gamma functions.
double exp_sum_outside_prob(std::size_t n);

TailReport exp_partial_sum_tail(std::size_t n, std::size_t n_trials, SeededRng& rng);

/// Checks the quantile bracket of W = V_d^alpha |x - z|^beta, z uniform in the
/// ball B(0, r), at the centre x = 0, for each u in the grid. eps relaxes the
/// bracket edges multiplicatively.
LocalCdfReport local_cdf_check(std::size_t d, double r, double beta, std::span<const double> u_grid,
                               std::size_t n_samples, SeededRng& rng, double eps = 0.05);

/// Fraction of queries (drawn from the distribution) on which the singular
/// kernel predictor and k-NN agree. Training inputs come from the distribution
/// and carry independent fair-coin labels, so both rules are non-trivial.
AgreementReport knn_agreement(const DistributionSpec& distribution, double beta, std::size_t m,
                              std::size_t n_queries, std::size_t k, SeededRng& rng);

}  // namespace nw
