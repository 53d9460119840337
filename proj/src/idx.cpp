#include "nw/idx.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nw {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t off) {
  return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) |
         (std::uint32_t{b[off + 2]} << 8) | std::uint32_t{b[off + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::string hex(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08X", v);
  return buf;
}

std::vector<std::uint8_t> read_plain(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_gzip(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (f == nullptr) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> out;
  std::uint8_t buf[1 << 16];
  for (;;) {
    const int n = gzread(f, buf, sizeof buf);
    if (n < 0) {
      int code = 0;
      std::string msg = gzerror(f, &code);
      gzclose(f);
      throw std::runtime_error("gzip error in " + path.string() + ": " + msg);
    }
    if (n == 0) break;
    out.insert(out.end(), buf, buf + n);
  }
  gzclose(f);
  return out;
}

}  // namespace

std::size_t IdxTensor::element_count() const noexcept {
  if (dims.empty()) return 0;
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t a, std::uint32_t d) { return a * d; });
}

IdxTensor parse_idx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw std::runtime_error("IDX header truncated: fewer than 4 bytes");
  const std::uint32_t magic = read_be32(bytes, 0);
  const std::uint32_t rank = magic & 0xFF;
  if ((magic & 0xFFFFFF00u) != 0x00000800u || rank == 0) {
    throw std::runtime_error("unknown IDX magic " + hex(magic));
  }
  const std::size_t header = 4 + 4 * std::size_t{rank};
  if (bytes.size() < header) {
    throw std::runtime_error("IDX header truncated: expected " + std::to_string(header) + " bytes, got " +
                             std::to_string(bytes.size()));
  }

  IdxTensor t;
  std::size_t expected = 1;
  for (std::uint32_t k = 0; k < rank; ++k) {
    const std::uint32_t d = read_be32(bytes, 4 + 4 * k);
    t.dims.push_back(d);
    if (d != 0 && expected > std::numeric_limits<std::size_t>::max() / d) {
      throw std::runtime_error("IDX dims overflow the addressable size");
    }
    expected *= d;
  }
  const std::size_t actual = bytes.size() - header;
  if (actual != expected) {
    throw std::runtime_error(std::string(actual < expected ? "truncated" : "oversized") +
                             " IDX payload: expected " + std::to_string(expected) + " bytes, got " +
                             std::to_string(actual));
  }
  t.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header), bytes.end());
  return t;
}

IdxTensor load_idx(const std::filesystem::path& path) {
  const bool gz = path.extension() == ".gz";
  const auto bytes = gz ? read_gzip(path) : read_plain(path);
  try {
    return parse_idx(bytes);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_idx(const IdxTensor& t) {
  if (t.dims.empty() || t.dims.size() > 255) throw std::invalid_argument("IDX rank must be in [1, 255]");
  if (t.element_count() != t.data.size()) throw std::invalid_argument("IDX dims do not match payload");
  std::vector<std::uint8_t> out;
  write_be32(out, 0x00000800u | static_cast<std::uint32_t>(t.dims.size()));
  for (auto d : t.dims) write_be32(out, d);
  out.insert(out.end(), t.data.begin(), t.data.end());
  return out;
}

TrainingSet mnist_binary_subset(const IdxTensor& images, const IdxTensor& labels, int digit_neg,
                                int digit_pos) {
  if (digit_neg == digit_pos) throw std::invalid_argument("digits must be distinct");
  for (int d : {digit_neg, digit_pos}) {
    if (d < 0 || d > 9) throw std::invalid_argument("digits must lie in 0..9");
  }
  if (images.dims.size() < 2 || labels.dims.size() != 1) {
    throw std::invalid_argument("expected an image tensor of rank >= 2 and a rank-1 label tensor");
  }
  const std::size_t count = images.dims[0];
  if (count != labels.dims[0]) {
    throw std::invalid_argument("image count " + std::to_string(count) + " differs from label count " +
                                std::to_string(labels.dims[0]));
  }
  const std::size_t pixels = count == 0 ? 0 : images.data.size() / count;
  if (pixels == 0) throw std::invalid_argument("images have no pixels");

  TrainingSet out(pixels);
  std::vector<double> x(pixels);
  bool seen_neg = false;
  bool seen_pos = false;
  for (std::size_t i = 0; i < count; ++i) {
    const int digit = labels.data[i];
    if (digit != digit_neg && digit != digit_pos) continue;
    const std::uint8_t* px = images.data.data() + i * pixels;
    for (std::size_t j = 0; j < pixels; ++j) x[j] = static_cast<double>(px[j]) / 255.0;
    const bool neg = digit == digit_neg;
    seen_neg = seen_neg || neg;
    seen_pos = seen_pos || !neg;
    out.add(x, neg ? Label::Negative : Label::Positive);
  }
  if (!seen_neg || !seen_pos) {
    throw std::invalid_argument("digit pair (" + std::to_string(digit_neg) + ", " + std::to_string(digit_pos) +
                                ") absent from data");
  }
  return out;
}

}  // namespace nw
