#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nw/harness.hpp"

namespace nw {

inline constexpr std::string_view kCsvHeader = "beta,p,m,reps,mean_error,ci_low,ci_high,tie_count,seed";

/// One CSV record; `sigma` is present only for noisy-input sweeps, which add
/// a leading sigma column.
struct CsvRecord {
  std::optional<double> sigma;
  ErrorRow row;
  std::uint64_t seed = 0;
};

/// Shortest round-trip fixed-point decimal, independent of the global locale.
std::string format_decimal(double v);

/// Writes the header and one LF-terminated line per record.
void write_csv(std::ostream& out, const std::vector<CsvRecord>& records);
/// Parses what write_csv produces; throws std::runtime_error on malformed input.
std::vector<CsvRecord> read_csv(std::istream& in);

std::vector<CsvRecord> to_records(const ErrorCurve& curve, std::uint64_t seed,
                                  std::optional<double> sigma = std::nullopt);

/// Error-vs-beta line chart: one polyline per series (p, and sigma when
/// present) with the confidence interval drawn as a shaded band.
std::string render_svg(const std::vector<CsvRecord>& records);

}  // namespace nw
