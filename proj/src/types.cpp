#include "nw/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nw {

namespace {

void require_finite(std::span<const double> coords) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      throw std::invalid_argument("non-finite coordinate at flat offset " + std::to_string(i));
    }
  }
}

void require_labels(std::span<const Label> labels) {
  for (Label y : labels) {
    if (y != Label::Positive && y != Label::Negative) {
      throw std::invalid_argument("label must be -1 or +1");
    }
  }
}

}  // namespace

Label label_from_int(int v) {
  if (v == 1) return Label::Positive;
  if (v == -1) return Label::Negative;
  throw std::invalid_argument("label must be -1 or +1, got " + std::to_string(v));
}

TrainingSet::TrainingSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
}

TrainingSet::TrainingSet(std::size_t dim, std::vector<double> coords, std::vector<Label> labels)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
  if (dim_ == 0) throw std::invalid_argument("dimension must be positive");
  if (coords_.size() != labels_.size() * dim_) {
    throw std::invalid_argument("coordinate count " + std::to_string(coords_.size()) +
                                " does not match " + std::to_string(labels_.size()) +
                                " points of dimension " + std::to_string(dim_));
  }
  require_finite(coords_);
  require_labels(labels_);
}

TrainingSet TrainingSet::from_points(std::span<const LabeledPoint> points) {
  if (points.empty()) throw std::invalid_argument("cannot infer dimension of an empty point list");
  TrainingSet s(points.front().x.size());
  for (const auto& p : points) s.add(p.x, p.y);
  return s;
}

void TrainingSet::add(std::span<const double> x, Label y) {
  if (x.size() != dim_) {
    throw std::invalid_argument("point has " + std::to_string(x.size()) +
                                " coordinates, expected " + std::to_string(dim_));
  }
  require_finite(x);
  require_labels(std::span<const Label>(&y, 1));
  coords_.insert(coords_.end(), x.begin(), x.end());
  labels_.push_back(y);
}

TrainingSet TrainingSet::with_labels(std::vector<Label> labels) const {
  return TrainingSet(dim_, coords_, std::move(labels));
}

TrainingSet TrainingSet::with_coords(std::vector<double> coords) const {
  return TrainingSet(dim_, std::move(coords), labels_);
}

}  // namespace nw
