#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nw/types.hpp"

namespace nw {

enum class TieBreak { PlusOne, MinusOne };

struct PredictorConfig {
  double beta = 1.0;
  TieBreak tie_break = TieBreak::PlusOne;
};

/// Outcome of evaluating sum_i y_i * |x - x_i|^(-beta).
///
/// `log_magnitude` is the log of the absolute value of that sum, obtained
/// from the per-class log-sums; it is -inf on an exact tie. When the query
/// coincides with a training input, `exact_hit` holds the lowest such index
/// and `sign` is that point's label (log_magnitude is +inf there).
struct ScoreResult {
  int sign = 0;
  double log_magnitude = 0.0;
  std::optional<std::size_t> exact_hit;
};

/// Per-class log-sums of the singular weights, log sum_{y_i = c} |x - x_i|^(-beta).
/// A class with no members has log-sum -inf.
struct ClassLogSums {
  double positive;
  double negative;
};

/// Thrown by predict_batch; carries the position of the offending query.
class BatchError : public std::invalid_argument {
 public:
  BatchError(std::size_t index, const std::string& what);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// log|a - b| from accumulated squared differences. Returns -inf iff every
/// coordinate difference is zero. Rescales internally when the squared sum
/// would underflow or overflow, so a distance of 1e-300 stays finite.
double log_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Index of the first training input equal to x coordinate-wise, if any.
std::optional<std::size_t> find_exact_hit(std::span<const double> x, const TrainingSet& s) noexcept;

/// Log-domain class sums from precomputed log-distances (one per training
/// point, aligned with `labels`). Entries equal to -inf are not allowed here.
ClassLogSums class_log_sums(std::span<const double> log_dist, std::span<const Label> labels,
                            double beta) noexcept;

/// Score from precomputed log-distances. This is the evaluation kernel shared
/// by raw_score and by callers that cache distances across several betas.
ScoreResult score_from_log_distances(std::span<const double> log_dist,
                                     std::span<const Label> labels, double beta);

ScoreResult raw_score(std::span<const double> x, const TrainingSet& s, double beta);

Label predict(std::span<const double> x, const TrainingSet& s, const PredictorConfig& cfg);

/// Resolves a score to a label: exact hits and nonzero signs pass through,
/// sign 0 goes to the tie-break policy.
Label resolve(const ScoreResult& score, TieBreak tie_break) noexcept;

/// Row-major queries of dimension s.dim(). Evaluated across NW_THREADS workers;
/// results are identical to calling predict in sequence.
std::vector<Label> predict_batch(std::span<const double> queries, const TrainingSet& s,
                                 const PredictorConfig& cfg);

/// k-nearest-neighbour majority vote under Euclidean distance. Distance ties
/// go to the lower training index, vote ties to +1.
Label knn_predict(std::span<const double> x, const TrainingSet& s, std::size_t k);

}  // namespace nw
