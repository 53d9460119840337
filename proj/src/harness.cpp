#include "nw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nw/parallel.hpp"

namespace nw {

namespace {

std::vector<double> sorted_copy(const std::vector<double>& v) {
  std::vector<double> out(v);
  std::sort(out.begin(), out.end());
  return out;
}

// Draws n of the pool's points without replacement (partial Fisher-Yates).
TrainingSet draw_from_pool(const TrainingSet& pool, std::size_t n, SeededRng& rng, const char* what) {
  if (n > pool.size()) {
    throw std::invalid_argument(std::string(what) + " size " + std::to_string(n) +
                                " exceeds pool of " + std::to_string(pool.size()));
  }
  if (n == pool.size()) return pool;
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  TrainingSet out(pool.dim());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(idx.size() - i));
    std::swap(idx[i], idx[j]);
    out.add(pool.point(idx[i]), pool.label(idx[i]));
  }
  return out;
}

void self_check_interpolation(const TrainingSet& clean, const TrainingSet& noisy, double beta,
                              std::size_t rep, double p) {
  // Training error against the clean labels must equal the number of flips.
  // A repeated input resolves to its first occurrence, so repeats are left out.
  std::size_t flips = 0;
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    const auto hit = find_exact_hit(noisy.point(i), noisy);
    if (!hit) throw std::logic_error("training input " + std::to_string(i) + " not found in its own set");
    if (*hit != i) continue;
    if (noisy.label(i) != clean.label(i)) ++flips;
    if (predict(noisy.point(i), noisy, {beta, TieBreak::PlusOne}) != clean.label(i)) ++mismatches;
  }
  if (mismatches != flips) {
    throw std::logic_error("interpolation self-check failed in rep " + std::to_string(rep) + " at p=" +
                           std::to_string(p) + ": " + std::to_string(mismatches) +
                           " training errors vs " + std::to_string(flips) + " flipped labels");
  }
}

}  // namespace

SyntheticSource::SyntheticSource(DistributionSpec spec) : spec_(std::move(spec)) { validate(spec_); }

std::size_t SyntheticSource::dim() const { return dimension(spec_); }

TrainingSet SyntheticSource::sample_training(std::size_t m, SeededRng& rng) const {
  return sample(spec_, m, rng);
}

TrainingSet SyntheticSource::sample_test(std::size_t n, SeededRng& rng) const { return sample(spec_, n, rng); }

PoolSource::PoolSource(TrainingSet train_pool, TrainingSet test_pool)
    : train_(std::move(train_pool)), test_(std::move(test_pool)) {
  if (train_.dim() != test_.dim()) throw std::invalid_argument("train and test pools differ in dimension");
  if (train_.empty() || test_.empty()) throw std::invalid_argument("pools must be nonempty");
}

TrainingSet PoolSource::sample_training(std::size_t m, SeededRng& rng) const {
  return draw_from_pool(train_, m, rng, "training sample");
}

TrainingSet PoolSource::sample_test(std::size_t n, SeededRng& rng) const {
  return draw_from_pool(test_, n, rng, "test sample");
}

void validate(const SweepSettings& s) {
  if (s.m == 0) throw std::invalid_argument("m must be positive");
  if (s.reps == 0) throw std::invalid_argument("reps must be positive");
  if (s.n_test == 0) throw std::invalid_argument("n_test must be positive");
  if (s.p_values.empty()) throw std::invalid_argument("p_values must be nonempty");
  if (s.betas.empty()) throw std::invalid_argument("betas must be nonempty");
  for (double p : s.p_values) validate(NoiseSpec{p});
  for (double b : s.betas) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("every beta must be positive and finite");
  }
  if (!(s.input_noise_sigma >= 0.0) || !std::isfinite(s.input_noise_sigma)) {
    throw std::invalid_argument("input_noise_sigma must be nonnegative");
  }
  for (const auto* list : {&s.p_values, &s.betas}) {
    auto sorted = sorted_copy(*list);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate entries in p_values or betas");
    }
  }
}

RepData draw_rep(const DataSource& source, const SweepSettings& s, std::size_t rep) {
  auto train_rng = SeededRng::stream(s.base_seed, StreamPurpose::TrainPoints, rep);
  auto noise_rng = SeededRng::stream(s.base_seed, StreamPurpose::InputNoise, rep);
  auto test_rng = SeededRng::stream(s.base_seed, StreamPurpose::TestPoints, rep);
  RepData d{source.sample_training(s.m, train_rng), source.sample_test(s.n_test, test_rng)};
  d.train = add_gaussian_input_noise(d.train, s.input_noise_sigma, noise_rng);
  return d;
}

SeededRng flip_stream(const SweepSettings& s, std::size_t rep) {
  return SeededRng::stream(s.base_seed, StreamPurpose::LabelFlips, rep);
}

RepOutcome clean_error_outcome(const DataSource& source, const SweepSettings& s, double beta, double p,
                               std::size_t rep, const Classifier& classifier) {
  validate(NoiseSpec{p});
  const RepData data = draw_rep(source, s, rep);
  auto flips = flip_stream(s, rep);
  const TrainingSet noisy = flip_labels(data.train, NoiseSpec{p}, flips);

  RepOutcome out;
  std::size_t wrong = 0;
  for (std::size_t q = 0; q < data.test.size(); ++q) {
    const auto x = data.test.point(q);
    Label y;
    if (classifier) {
      y = classifier(x, noisy);
    } else {
      const ScoreResult sc = raw_score(x, noisy, beta);
      if (sc.sign == 0) ++out.ties;
      y = resolve(sc, TieBreak::PlusOne);
    }
    if (y != data.test.label(q)) ++wrong;
  }
  out.error = static_cast<double>(wrong) / static_cast<double>(data.test.size());
  return out;
}

double clean_error_estimate(const DataSource& source, const SweepSettings& s, double beta, double p,
                            std::size_t rep, const Classifier& classifier) {
  return clean_error_outcome(source, s, beta, p, rep, classifier).error;
}

ErrorCurve beta_sweep(const DataSource& source, const SweepSettings& s) {
  validate(s);
  if (source.dim() == 0) throw std::invalid_argument("source has zero dimension");
  const auto ps = sorted_copy(s.p_values);
  const auto betas = sorted_copy(s.betas);
  const std::size_t cells = ps.size() * betas.size();

  // outcomes[rep * cells + pi * |betas| + bi]
  std::vector<RepOutcome> outcomes(s.reps * cells);

  parallel_for(s.reps, [&](std::size_t rep) {
    const RepData data = draw_rep(source, s, rep);
    const std::size_t m = data.train.size();
    const std::size_t n = data.test.size();

    // log-distances depend only on the inputs, so one matrix serves every (p, beta).
    std::vector<double> log_dist(n * m);
    for (std::size_t q = 0; q < n; ++q) {
      const auto x = data.test.point(q);
      for (std::size_t i = 0; i < m; ++i) log_dist[q * m + i] = log_distance(x, data.train.point(i));
    }

    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      auto flips = flip_stream(s, rep);
      const TrainingSet noisy = flip_labels(data.train, NoiseSpec{ps[pi]}, flips);
      self_check_interpolation(data.train, noisy, betas.front(), rep, ps[pi]);

      for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        RepOutcome& out = outcomes[rep * cells + pi * betas.size() + bi];
        std::size_t wrong = 0;
        for (std::size_t q = 0; q < n; ++q) {
          const ScoreResult sc = score_from_log_distances(
              std::span<const double>(log_dist.data() + q * m, m), noisy.labels(), betas[bi]);
          if (sc.sign == 0) ++out.ties;
          if (resolve(sc, TieBreak::PlusOne) != data.test.label(q)) ++wrong;
        }
        out.error = static_cast<double>(wrong) / static_cast<double>(n);
      }
    }
  });

  ErrorCurve curve;
  const double reps = static_cast<double>(s.reps);
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      double sum = 0.0;
      std::size_t ties = 0;
      for (std::size_t rep = 0; rep < s.reps; ++rep) {
        const auto& o = outcomes[rep * cells + pi * betas.size() + bi];
        sum += o.error;
        ties += o.ties;
      }
      const double mean = sum / reps;
      double ss = 0.0;
      for (std::size_t rep = 0; rep < s.reps; ++rep) {
        const double dev = outcomes[rep * cells + pi * betas.size() + bi].error - mean;
        ss += dev * dev;
      }
      const double sd = s.reps > 1 ? std::sqrt(ss / (reps - 1.0)) : 0.0;
      const double half = 1.96 * sd / std::sqrt(reps);

      ErrorRow row;
      row.beta = betas[bi];
      row.p = ps[pi];
      row.m = s.m;
      row.reps = s.reps;
      row.mean_error = mean;
      row.ci_low = std::clamp(mean - half, 0.0, 1.0);
      row.ci_high = std::clamp(mean + half, 0.0, 1.0);
      row.tie_count = ties;
      curve.rows.push_back(row);
    }
  }
  return curve;
}

ErrorCurve beta_sweep(const ExperimentConfig& cfg) {
  const SyntheticSource source(cfg.distribution);
  return beta_sweep(source, cfg.sweep);
}

std::string to_string(OverfitProfile p) {
  switch (p) {
    case OverfitProfile::CatastrophicLike:
      return "catastrophic-like";
    case OverfitProfile::TemperedLike:
      return "tempered-like";
    case OverfitProfile::BenignLike:
      return "benign-like";
  }
  return "unknown";
}

std::vector<ProfileTag> profile_classification(const ErrorCurve& curve, double inner_mass) {
  std::vector<double> betas;
  for (const auto& r : curve.rows) betas.push_back(r.beta);
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

  std::vector<ProfileTag> tags;
  for (double beta : betas) {
    const ErrorRow* lo = nullptr;
    const ErrorRow* hi = nullptr;
    for (const auto& r : curve.rows) {
      if (r.beta != beta) continue;
      if (!lo || r.p < lo->p) lo = &r;
      if (!hi || r.p > hi->p) hi = &r;
    }
    if (lo->p == hi->p) {
      throw std::invalid_argument("profile classification needs two distinct p values for beta=" +
                                  std::to_string(beta));
    }

    OverfitProfile tag = OverfitProfile::TemperedLike;
    const double e_lo = lo->mean_error;
    const double e_hi = hi->mean_error;
    if (e_lo >= 0.8 * inner_mass && std::abs(e_hi - e_lo) < 0.25 * e_lo) {
      tag = OverfitProfile::CatastrophicLike;
    } else if (e_hi < 0.25 * hi->p) {
      tag = OverfitProfile::BenignLike;
    }
    tags.push_back({beta, tag});
  }
  return tags;
}

double best_beta(const ErrorCurve& curve, double p) {
  const ErrorRow* best = nullptr;
  for (const auto& r : curve.rows) {
    if (r.p != p) continue;
    if (!best || r.mean_error < best->mean_error) best = &r;
  }
  if (!best) throw std::invalid_argument("curve has no rows for p=" + std::to_string(p));
  return best->beta;
}

std::vector<NoisySweepEntry> noisy_input_sweep(const DataSource& source, const SweepSettings& s,
                                               std::span<const double> sigmas) {
  if (sigmas.empty()) throw std::invalid_argument("sigma grid must be nonempty");
  std::vector<NoisySweepEntry> out;
  for (double sigma : sigmas) {
    SweepSettings local = s;
    local.input_noise_sigma = sigma;
    NoisySweepEntry e;
    e.sigma = sigma;
    e.curve = beta_sweep(source, local);
    for (double p : s.p_values) e.best_betas.push_back(best_beta(e.curve, p));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace nw
