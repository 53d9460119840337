#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nw/predictor.hpp"
#include "nw/rng.hpp"
#include "nw/synthetic.hpp"
#include "nw/types.hpp"

namespace nw {

/// Where training and test points come from. Both samplers return clean
/// labels (the target evaluated at the point).
class DataSource {
 public:
  virtual ~DataSource() = default;
  virtual std::size_t dim() const = 0;
  virtual TrainingSet sample_training(std::size_t m, SeededRng& rng) const = 0;
  virtual TrainingSet sample_test(std::size_t n, SeededRng& rng) const = 0;
};

class SyntheticSource final : public DataSource {
 public:
  explicit SyntheticSource(DistributionSpec spec);
  std::size_t dim() const override;
  TrainingSet sample_training(std::size_t m, SeededRng& rng) const override;
  TrainingSet sample_test(std::size_t n, SeededRng& rng) const override;
  const DistributionSpec& spec() const noexcept { return spec_; }

 private:
  DistributionSpec spec_;
};

/// Finite pools, e.g. a labelled image dataset. Training draws m points from
/// the training pool without replacement (the whole pool, in order, when m
/// equals its size); test draws likewise from the test pool.
class PoolSource final : public DataSource {
 public:
  PoolSource(TrainingSet train_pool, TrainingSet test_pool);
  std::size_t dim() const override { return train_.dim(); }
  TrainingSet sample_training(std::size_t m, SeededRng& rng) const override;
  TrainingSet sample_test(std::size_t n, SeededRng& rng) const override;
  std::size_t train_pool_size() const noexcept { return train_.size(); }
  std::size_t test_pool_size() const noexcept { return test_.size(); }

 private:
  TrainingSet train_;
  TrainingSet test_;
};

/// Everything about a sweep except the data distribution.
struct SweepSettings {
  std::size_t m = 2000;
  std::vector<double> p_values;
  std::vector<double> betas;
  std::size_t reps = 50;
  std::size_t n_test = 1000;
  std::uint64_t base_seed = 0;
  double input_noise_sigma = 0.0;
};

struct ExperimentConfig {
  DistributionSpec distribution;
  SweepSettings sweep;
};

void validate(const SweepSettings& s);

struct ErrorRow {
  double beta = 0.0;
  double p = 0.0;
  std::size_t m = 0;
  std::size_t reps = 0;
  double mean_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t tie_count = 0;
};

struct ErrorCurve {
  std::vector<ErrorRow> rows;  // ordered by (p, beta)
};

/// Training and test data of one repetition, before label noise.
struct RepData {
  TrainingSet train;  // inputs after input noise; labels clean (target at the pre-noise point)
  TrainingSet test;   // clean
};

/// Draws one repetition's data from its dedicated streams. Training inputs,
/// input noise, label flips and test points each use their own stream keyed
/// by (base_seed, purpose, rep), so they do not depend on beta or p.
RepData draw_rep(const DataSource& source, const SweepSettings& s, std::size_t rep);

/// Label-noise stream for a repetition; flip_labels on it gives nested flips across p.
SeededRng flip_stream(const SweepSettings& s, std::size_t rep);

using Classifier = std::function<Label(std::span<const double>, const TrainingSet&)>;

struct RepOutcome {
  double error = 0.0;
  std::size_t ties = 0;
};

/// Clean test error of one repetition for one (beta, p). `classifier`
/// replaces the singular-kernel predictor when given (ties are then 0).
RepOutcome clean_error_outcome(const DataSource& source, const SweepSettings& s, double beta,
                               double p, std::size_t rep, const Classifier& classifier = {});
double clean_error_estimate(const DataSource& source, const SweepSettings& s, double beta, double p,
                            std::size_t rep, const Classifier& classifier = {});

/// Mean clean error and normal-approximation 95% interval for every (p, beta).
/// Repetitions run on NW_THREADS workers; the result does not depend on the
/// worker count. Each repetition also checks that predictions at the training
/// inputs reproduce the flipped labels exactly (throws std::logic_error otherwise).
ErrorCurve beta_sweep(const DataSource& source, const SweepSettings& s);
ErrorCurve beta_sweep(const ExperimentConfig& cfg);

enum class OverfitProfile { CatastrophicLike, TemperedLike, BenignLike };
std::string to_string(OverfitProfile p);

struct ProfileTag {
  double beta;
  OverfitProfile profile;
};

/// Finite-sample tagging of each beta in the curve by comparing its errors at
/// the smallest and largest p.
std::vector<ProfileTag> profile_classification(const ErrorCurve& curve, double inner_mass);

/// Beta with minimal mean error for the given p (first one on ties).
double best_beta(const ErrorCurve& curve, double p);

struct NoisySweepEntry {
  double sigma = 0.0;
  std::vector<double> best_betas;  // aligned with the sweep's p_values
  ErrorCurve curve;
};

/// One beta sweep per sigma (input noise standard deviation), ordered as given.
std::vector<NoisySweepEntry> noisy_input_sweep(const DataSource& source, const SweepSettings& s,
                                               std::span<const double> sigmas);

}  // namespace nw
