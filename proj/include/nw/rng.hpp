#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace nw {

// Purpose tags that keep experiment streams disjoint. Values are part of the
// reproducibility contract: changing them changes every published seed.
enum class StreamPurpose : std::uint64_t {
  TrainPoints = 1,
  LabelFlips = 2,
  TestPoints = 3,
  InputNoise = 4,
  Verification = 5,
};

/// 64-bit stream id from (base seed, purpose, index), built from chained
/// SplitMix64 finalizers.
std::uint64_t stream_seed(std::uint64_t base_seed, StreamPurpose purpose, std::uint64_t index) noexcept;

/// mt19937_64 seeded with a derived stream id. Uniform variates are taken
/// from the top 53 bits of one engine draw, so they are identical across
/// standard libraries; normals use std::normal_distribution and are only
/// reproducible within one standard library.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static SeededRng stream(std::uint64_t base_seed, StreamPurpose purpose, std::uint64_t index) {
    return SeededRng(stream_seed(base_seed, purpose, index));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // (0, 1)
  double uniform_open() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
  }
  double exponential();
  // Uniform integer in [0, n), by rejection; n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  double normal() { return normal_(engine_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace nw
