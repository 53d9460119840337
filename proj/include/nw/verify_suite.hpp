#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nw {

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

inline constexpr std::uint64_t kDefaultVerifySeed = 20240601;

/// "order-stats", "tails", "local-cdf", "knn-agreement", "interpolation", "all".
const std::vector<std::string>& verify_suite_names();

// KS checks for (m, i) in {(1,1), (10,1), (10,5), (100,10), (100,100)}; one retry each.
std::vector<CheckResult> order_stats_checks(std::uint64_t seed);
// Gamma-tail agreement for n in {1, 5, 20, 100} at 1e5 trials.
std::vector<CheckResult> tail_checks(std::uint64_t seed);
// Quantile brackets on the unit ball for d in {1,2,3}, beta in {d/2, d, 2d}.
std::vector<CheckResult> local_cdf_checks(std::uint64_t seed);
// Kernel predictor at beta = 200 d versus 1-NN on 100 uniform instances (statistic: worst instance).
std::vector<CheckResult> knn_agreement_checks(std::uint64_t seed);
// Interpolation on 100 random training sets (statistic: number of sets fully interpolated).
std::vector<CheckResult> interpolation_checks(std::uint64_t seed);

/// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_verify_suite(std::string_view suite, std::uint64_t seed = kDefaultVerifySeed);

/// "name  statistic=..  threshold=..  PASS|FAIL"
std::string format_check(const CheckResult& r);

}  // namespace nw
