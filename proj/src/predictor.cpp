#include "nw/predictor.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "nw/parallel.hpp"

namespace nw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_query(std::span<const double> x, const TrainingSet& s) {
  if (s.empty()) throw std::invalid_argument("training set is empty");
  if (x.size() != s.dim()) {
    throw std::invalid_argument("query has dimension " + std::to_string(x.size()) +
                                ", training set has " + std::to_string(s.dim()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("query has a non-finite coordinate");
  }
}

void validate_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be a positive finite number");
  }
}

// Slow path of log_distance: scale by the largest |difference| first.
double scaled_log_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double shift = 0.0;
  double scale = 0.0;
  bool halve = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i] - b[i])) halve = true;
  }
  auto diff = [&](std::size_t i) { return halve ? 0.5 * a[i] - 0.5 * b[i] : a[i] - b[i]; };
  if (halve) shift = std::numbers::ln2;

  for (std::size_t i = 0; i < a.size(); ++i) scale = std::max(scale, std::abs(diff(i)));
  if (scale == 0.0) return -kInf;
  double sumsq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = diff(i) / scale;
    sumsq += t * t;
  }
  return shift + std::log(scale) + 0.5 * std::log(sumsq);
}

}  // namespace

BatchError::BatchError(std::size_t index, const std::string& what)
    : std::invalid_argument("query " + std::to_string(index) + ": " + what), index_(index) {}

double log_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sumsq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sumsq += d * d;
  }
  if (sumsq >= DBL_MIN && sumsq < kInf) return 0.5 * std::log(sumsq);
  return scaled_log_distance(a, b);
}

std::optional<std::size_t> find_exact_hit(std::span<const double> x, const TrainingSet& s) noexcept {
  const std::size_t dim = s.dim();
  const double* p = s.coords().data();
  for (std::size_t i = 0; i < s.size(); ++i, p += dim) {
    std::size_t j = 0;
    while (j < dim && p[j] == x[j]) ++j;
    if (j == dim) return i;
  }
  return std::nullopt;
}

ClassLogSums class_log_sums(std::span<const double> log_dist, std::span<const Label> labels,
                            double beta) noexcept {
  double max_pos = -kInf;
  double max_neg = -kInf;
  for (std::size_t i = 0; i < log_dist.size(); ++i) {
    const double w = -beta * log_dist[i];
    if (labels[i] == Label::Positive) {
      max_pos = std::max(max_pos, w);
    } else {
      max_neg = std::max(max_neg, w);
    }
  }
  double sum_pos = 0.0;
  double sum_neg = 0.0;
  for (std::size_t i = 0; i < log_dist.size(); ++i) {
    const double w = -beta * log_dist[i];
    if (labels[i] == Label::Positive) {
      sum_pos += std::exp(w - max_pos);
    } else {
      sum_neg += std::exp(w - max_neg);
    }
  }
  return {
      max_pos == -kInf ? -kInf : max_pos + std::log(sum_pos),
      max_neg == -kInf ? -kInf : max_neg + std::log(sum_neg),
  };
}

ScoreResult score_from_log_distances(std::span<const double> log_dist,
                                     std::span<const Label> labels, double beta) {
  for (std::size_t i = 0; i < log_dist.size(); ++i) {
    if (log_dist[i] == -kInf) return {to_int(labels[i]), kInf, i};
  }
  const auto [pos, neg] = class_log_sums(log_dist, labels, beta);
  ScoreResult r;
  if (pos == neg) {
    r.sign = 0;
    r.log_magnitude = -kInf;
    return r;
  }
  r.sign = pos > neg ? 1 : -1;
  const double gap = std::abs(pos - neg);
  r.log_magnitude = std::max(pos, neg) + std::log1p(-std::exp(-gap));
  return r;
}

ScoreResult raw_score(std::span<const double> x, const TrainingSet& s, double beta) {
  validate_beta(beta);
  validate_query(x, s);
  if (auto hit = find_exact_hit(x, s)) return {to_int(s.label(*hit)), kInf, hit};

  std::vector<double> log_dist(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) log_dist[i] = log_distance(x, s.point(i));
  return score_from_log_distances(log_dist, s.labels(), beta);
}

Label resolve(const ScoreResult& score, TieBreak tie_break) noexcept {
  if (score.sign > 0) return Label::Positive;
  if (score.sign < 0) return Label::Negative;
  return tie_break == TieBreak::PlusOne ? Label::Positive : Label::Negative;
}

Label predict(std::span<const double> x, const TrainingSet& s, const PredictorConfig& cfg) {
  return resolve(raw_score(x, s, cfg.beta), cfg.tie_break);
}

std::vector<Label> predict_batch(std::span<const double> queries, const TrainingSet& s,
                                 const PredictorConfig& cfg) {
  validate_beta(cfg.beta);
  const std::size_t dim = s.dim();
  if (queries.size() % dim != 0) {
    throw BatchError(queries.size() / dim,
                     "trailing query has fewer than " + std::to_string(dim) + " coordinates");
  }
  const std::size_t n = queries.size() / dim;
  if (n == 0) return {};
  if (s.empty()) throw BatchError(0, "training set is empty");
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (!std::isfinite(queries[q * dim + j])) throw BatchError(q, "non-finite coordinate");
    }
  }

  std::vector<Label> out(n);
  parallel_for(n, [&](std::size_t q) { out[q] = predict(queries.subspan(q * dim, dim), s, cfg); });
  return out;
}

Label knn_predict(std::span<const double> x, const TrainingSet& s, std::size_t k) {
  validate_query(x, s);
  if (k == 0 || k > s.size()) {
    throw std::invalid_argument("k must lie in [1, " + std::to_string(s.size()) + "], got " +
                                std::to_string(k));
  }
  std::vector<std::pair<double, std::size_t>> dist(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto p = s.point(i);
    double sumsq = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double d = x[j] - p[j];
      sumsq += d * d;
    }
    dist[i] = {sumsq, i};
  }
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
  int votes = 0;
  for (std::size_t i = 0; i < k; ++i) votes += to_int(s.label(dist[i].second));
  return votes < 0 ? Label::Negative : Label::Positive;
}

}  // namespace nw
