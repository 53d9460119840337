#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "nw/types.hpp"

namespace nw {

/// Unsigned-byte IDX tensor: dims in file order, payload row-major.
struct IdxTensor {
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> data;

  std::size_t element_count() const noexcept;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// Parses an in-memory IDX file. The magic is 0x000008NN (unsigned bytes,
/// NN dimensions), then NN big-endian uint32 sizes, then the payload.
/// Fails closed: unknown magic, short headers and truncated or oversized
/// payloads all throw std::runtime_error.
IdxTensor parse_idx(std::span<const std::uint8_t> bytes);

/// Reads and parses an IDX file. Paths ending in ".gz" are gunzipped.
IdxTensor load_idx(const std::filesystem::path& path);

/// Serializes a tensor to IDX bytes (used to build fixtures).
std::vector<std::uint8_t> encode_idx(const IdxTensor& t);

/// Keeps the examples labelled digit_neg (-> -1) or digit_pos (-> +1), in file
/// order, flattening each image and scaling pixels by 1/255.
TrainingSet mnist_binary_subset(const IdxTensor& images, const IdxTensor& labels, int digit_neg,
                                int digit_pos);

}  // namespace nw
