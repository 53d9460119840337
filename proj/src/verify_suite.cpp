#include "nw/verify_suite.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>

#include "nw/predictor.hpp"
#include "nw/rng.hpp"
#include "nw/verifiers.hpp"

namespace nw {

namespace {

SeededRng verify_stream(std::uint64_t seed, std::uint64_t index) {
  return SeededRng::stream(seed, StreamPurpose::Verification, index);
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

void append(std::vector<CheckResult>& out, std::vector<CheckResult> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"order-stats", "tails", "local-cdf", "knn-agreement",
                                                 "interpolation", "all"};
  return names;
}

std::vector<CheckResult> order_stats_checks(std::uint64_t seed) {
  constexpr std::array<std::pair<std::size_t, std::size_t>, 5> pairs = {
      {{1, 1}, {10, 1}, {10, 5}, {100, 10}, {100, 100}}};
  constexpr std::size_t kTrials = 10'000;
  std::vector<CheckResult> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [m, i] = pairs[k];
    // The 1% test fails by chance once in a hundred runs; allow one retry on a fresh stream.
    auto rng = verify_stream(seed, 100 + 2 * k);
    KsReport rep = order_stat_representation_check(m, i, kTrials, rng);
    if (!rep.pass) {
      auto retry = verify_stream(seed, 101 + 2 * k);
      rep = order_stat_representation_check(m, i, kTrials, retry);
    }
    out.push_back({fmt("order-stats[m=%g,i=%g]", double(m), double(i)), rep.statistic, rep.threshold, rep.pass});
  }
  return out;
}

std::vector<CheckResult> tail_checks(std::uint64_t seed) {
  constexpr std::array<std::size_t, 4> ns = {1, 5, 20, 100};
  std::vector<CheckResult> out;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    auto rng = verify_stream(seed, 200 + k);
    const TailReport rep = exp_partial_sum_tail(ns[k], 100'000, rng);
    out.push_back({fmt("tails[n=%g]", double(ns[k])), std::abs(rep.empirical_prob - rep.exact_prob), rep.band,
                   rep.pass});
  }
  return out;
}

std::vector<CheckResult> local_cdf_checks(std::uint64_t seed) {
  constexpr std::array<double, 3> u_grid = {0.01, 0.05, 0.1};
  constexpr double kEps = 0.05;
  std::vector<CheckResult> out;
  std::uint64_t index = 300;
  for (std::size_t d = 1; d <= 3; ++d) {
    const double dd = static_cast<double>(d);
    for (double beta : {dd / 2.0, dd, 2.0 * dd}) {
      auto rng = verify_stream(seed, index++);
      const LocalCdfReport rep = local_cdf_check(d, 1.0, beta, u_grid, 1'000'000, rng, kEps);
      double worst = 0.0;
      for (const auto& row : rep.rows) worst = std::max(worst, std::abs(row.empirical / row.exact - 1.0));
      out.push_back({fmt("local-cdf[d=%g,beta=%g]", dd, beta), worst, kEps, rep.pass});
    }
  }
  return out;
}

std::vector<CheckResult> knn_agreement_checks(std::uint64_t seed) {
  constexpr std::size_t kInstances = 100;
  constexpr std::size_t d = 2;
  double worst = 1.0;
  for (std::size_t t = 0; t < kInstances; ++t) {
    auto rng = verify_stream(seed, 400 + t);
    const AgreementReport rep = knn_agreement(UnitCube{d}, 200.0 * d, 500, 1000, 1, rng);
    worst = std::min(worst, rep.rate);
  }
  return {{"knn-agreement[beta=200d,k=1]", worst, 0.99, worst >= 0.99}};
}

std::vector<CheckResult> interpolation_checks(std::uint64_t seed) {
  constexpr std::size_t kSets = 100;
  constexpr std::array<double, 5> betas = {0.5, 1.0, 2.0, 8.0, 200.0};
  std::size_t ok = 0;
  for (std::size_t t = 0; t < kSets; ++t) {
    auto rng = verify_stream(seed, 500 + t);
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform_index(3));
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform_index(500));
    const double beta = betas[rng.uniform_index(betas.size())];
    TrainingSet s(d);
    std::vector<double> x(d);
    for (std::size_t i = 0; i < m; ++i) {
      for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
      s.add(x, rng.uniform() < 0.5 ? Label::Negative : Label::Positive);
    }
    bool all = true;
    for (std::size_t i = 0; i < m && all; ++i) all = predict(s.point(i), s, {beta, TieBreak::PlusOne}) == s.label(i);
    if (all) ++ok;
  }
  return {{"interpolation[100 sets]", double(ok), double(kSets), ok == kSets}};
}

std::vector<CheckResult> run_verify_suite(std::string_view suite, std::uint64_t seed) {
  if (suite == "order-stats") return order_stats_checks(seed);
  if (suite == "tails") return tail_checks(seed);
  if (suite == "local-cdf") return local_cdf_checks(seed);
  if (suite == "knn-agreement") return knn_agreement_checks(seed);
  if (suite == "interpolation") return interpolation_checks(seed);
  if (suite == "all") {
    std::vector<CheckResult> out;
    append(out, order_stats_checks(seed));
    append(out, tail_checks(seed));
    append(out, local_cdf_checks(seed));
    append(out, knn_agreement_checks(seed));
    append(out, interpolation_checks(seed));
    return out;
  }
  std::string valid;
  for (const auto& n : verify_suite_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'; valid suites: " + valid);
}

std::string format_check(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-32s statistic=%-12.6g threshold=%-12.6g %s", r.name.c_str(), r.statistic,
                r.threshold, r.pass ? "PASS" : "FAIL");
  return buf;
}

}  // namespace nw
