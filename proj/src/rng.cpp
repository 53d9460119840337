#include "nw/rng.hpp"

#include <cmath>

namespace nw {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t base_seed, StreamPurpose purpose, std::uint64_t index) noexcept {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  return splitmix64(h ^ splitmix64(index));
}

double SeededRng::exponential() { return -std::log(uniform_open()); }

std::uint64_t SeededRng::uniform_index(std::uint64_t n) {
  const std::uint64_t limit = max() - max() % n;
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) return v % n;
  }
}

}  // namespace nw
