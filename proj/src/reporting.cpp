#include "nw/reporting.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <locale>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace nw {

namespace {

template <class T>
T parse_field(std::string_view text, std::size_t line, const char* name) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("CSV line " + std::to_string(line) + ": bad " + name + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

std::string format_decimal(double v) {
  std::array<char, 512> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  if (ec != std::errc()) throw std::runtime_error("cannot format value");
  return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const std::vector<CsvRecord>& records) {
  const bool with_sigma = std::any_of(records.begin(), records.end(), [](const CsvRecord& r) { return r.sigma.has_value(); });
  if (with_sigma) out << "sigma,";
  out << kCsvHeader << '\n';
  for (const auto& rec : records) {
    const auto& r = rec.row;
    if (with_sigma) out << format_decimal(rec.sigma.value_or(0.0)) << ',';
    out << format_decimal(r.beta) << ',' << format_decimal(r.p) << ',' << r.m << ',' << r.reps << ','
        << format_decimal(r.mean_error) << ',' << format_decimal(r.ci_low) << ',' << format_decimal(r.ci_high) << ','
        << r.tie_count << ',' << rec.seed << '\n';
  }
}

std::vector<CsvRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV is empty");
  bool with_sigma = false;
  if (line == "sigma," + std::string(kCsvHeader)) {
    with_sigma = true;
  } else if (line != kCsvHeader) {
    throw std::runtime_error("unexpected CSV header '" + line + "'");
  }

  std::vector<CsvRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split(line);
    const std::size_t off = with_sigma ? 1 : 0;
    if (f.size() != 9 + off) {
      throw std::runtime_error("CSV line " + std::to_string(lineno) + ": expected " + std::to_string(9 + off) + " fields");
    }
    CsvRecord rec;
    if (with_sigma) rec.sigma = parse_field<double>(f[0], lineno, "sigma");
    rec.row.beta = parse_field<double>(f[off + 0], lineno, "beta");
    rec.row.p = parse_field<double>(f[off + 1], lineno, "p");
    rec.row.m = parse_field<std::size_t>(f[off + 2], lineno, "m");
    rec.row.reps = parse_field<std::size_t>(f[off + 3], lineno, "reps");
    rec.row.mean_error = parse_field<double>(f[off + 4], lineno, "mean_error");
    rec.row.ci_low = parse_field<double>(f[off + 5], lineno, "ci_low");
    rec.row.ci_high = parse_field<double>(f[off + 6], lineno, "ci_high");
    rec.row.tie_count = parse_field<std::size_t>(f[off + 7], lineno, "tie_count");
    rec.seed = parse_field<std::uint64_t>(f[off + 8], lineno, "seed");
    out.push_back(rec);
  }
  return out;
}

std::vector<CsvRecord> to_records(const ErrorCurve& curve, std::uint64_t seed, std::optional<double> sigma) {
  std::vector<CsvRecord> out;
  out.reserve(curve.rows.size());
  for (const auto& r : curve.rows) out.push_back({sigma, r, seed});
  return out;
}

std::string render_svg(const std::vector<CsvRecord>& records) {
  constexpr double kWidth = 720, kHeight = 480, kLeft = 70, kRight = 160, kTop = 30, kBottom = 60;
  constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  double bmin = 0, bmax = 1, ymax = 0.01;
  if (!records.empty()) {
    bmin = bmax = records.front().row.beta;
    for (const auto& r : records) {
      bmin = std::min(bmin, r.row.beta);
      bmax = std::max(bmax, r.row.beta);
      ymax = std::max(ymax, r.row.ci_high);
    }
  }
  if (bmax == bmin) bmax = bmin + 1;
  ymax *= 1.05;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double b) { return kLeft + (b - bmin) / (bmax - bmin) * pw; };
  auto sy = [&](double e) { return kTop + (1.0 - e / ymax) * ph; };

  // Series keyed by (sigma, p), in first-appearance order.
  std::vector<std::pair<std::optional<double>, double>> keys;
  std::map<std::pair<double, double>, std::vector<const ErrorRow*>> series;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.sigma.value_or(-1.0), r.row.p);
    if (!series.count(key)) keys.emplace_back(r.sigma, r.row.p);
    series[key].push_back(&r.row);
  }

  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph
    << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double b = bmin + (bmax - bmin) * t / 4.0;
    const double e = ymax * t / 4.0;
    s << "<text x=\"" << sx(b) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << format_decimal(b)
      << "</text>\n";
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(e) + 4 << "\" text-anchor=\"end\">"
      << format_decimal(std::round(e * 1000) / 1000) << "</text>\n";
  }
  s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">beta</text>\n";
  s << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 18 " << kTop + ph / 2
    << ")\" text-anchor=\"middle\">clean test error</text>\n";

  for (std::size_t k = 0; k < keys.size(); ++k) {
    const char* color = kColors[k % kColors.size()];
    auto rows = series[{keys[k].first.value_or(-1.0), keys[k].second}];
    std::sort(rows.begin(), rows.end(), [](const ErrorRow* a, const ErrorRow* b) { return a->beta < b->beta; });

    s << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (const auto* r : rows) s << sx(r->beta) << ',' << sy(r->ci_high) << ' ';
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) s << sx((*it)->beta) << ',' << sy((*it)->ci_low) << ' ';
    s << "\"/>\n";
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto* r : rows) s << sx(r->beta) << ',' << sy(r->mean_error) << ' ';
    s << "\"/>\n";

    const double ly = kTop + 16.0 * static_cast<double>(k);
    s << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 32 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly + 4 << "\">p=" << format_decimal(keys[k].second);
    if (keys[k].first) s << " sigma=" << format_decimal(*keys[k].first);
    s << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace nw
