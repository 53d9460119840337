#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nw {

enum class Label : std::int8_t { Negative = -1, Positive = 1 };

constexpr int to_int(Label y) noexcept { return static_cast<int>(y); }
constexpr Label negate(Label y) noexcept {
  return y == Label::Positive ? Label::Negative : Label::Positive;
}

// Throws std::invalid_argument unless v is exactly -1 or +1.
Label label_from_int(int v);

struct LabeledPoint {
  std::vector<double> x;
  Label y = Label::Positive;
};

/// An immutable-by-convention labeled sample in `dim` dimensions, stored
/// row-major so that each point is a contiguous span.
class TrainingSet {
 public:
  explicit TrainingSet(std::size_t dim = 1);
  TrainingSet(std::size_t dim, std::vector<double> coords, std::vector<Label> labels);

  static TrainingSet from_points(std::span<const LabeledPoint> points);

  void add(std::span<const double> x, Label y);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  Label label(std::size_t i) const noexcept { return labels_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const Label> labels() const noexcept { return labels_; }

  TrainingSet with_labels(std::vector<Label> labels) const;
  TrainingSet with_coords(std::vector<double> coords) const;

  friend bool operator==(const TrainingSet&, const TrainingSet&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<Label> labels_;
};

}  // namespace nw
