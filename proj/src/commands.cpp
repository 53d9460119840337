#include "nw/commands.hpp"

#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nw/harness.hpp"
#include "nw/idx.hpp"
#include "nw/reporting.hpp"
#include "nw/run_config.hpp"
#include "nw/verify_suite.hpp"

namespace nw {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (f) f << content;
  if (!f) {
    err << "error: cannot write " << path.string() << '\n';
    return false;
  }
  return true;
}

std::vector<CsvRecord> run_grid(const DataSource& source, const RunConfig& cfg, std::ostream& out) {
  std::vector<CsvRecord> records;
  if (cfg.sigma_grid.empty()) {
    records = to_records(beta_sweep(source, cfg.sweep), cfg.sweep.base_seed);
    return records;
  }
  for (const auto& entry : noisy_input_sweep(source, cfg.sweep, cfg.sigma_grid)) {
    auto recs = to_records(entry.curve, cfg.sweep.base_seed, entry.sigma);
    records.insert(records.end(), recs.begin(), recs.end());
    for (std::size_t k = 0; k < cfg.sweep.p_values.size(); ++k) {
      out << "sigma=" << format_decimal(entry.sigma) << " p=" << format_decimal(cfg.sweep.p_values[k])
          << " best_beta=" << format_decimal(entry.best_betas[k]) << '\n';
    }
  }
  return records;
}

int emit(const std::vector<CsvRecord>& records, const RunConfig& cfg, const std::optional<std::filesystem::path>& csv_flag,
         const std::optional<std::filesystem::path>& svg_flag, std::ostream& out, std::ostream& err) {
  const auto csv_path = csv_flag ? csv_flag : cfg.output.csv;
  const auto svg_path = svg_flag ? svg_flag : cfg.output.svg;
  if (!csv_path) {
    err << "error: no CSV output path (pass --out or set output.csv)\n";
    return kUsage;
  }
  std::ostringstream csv;
  write_csv(csv, records);
  if (!write_file(*csv_path, csv.str(), err)) return kIo;
  out << "wrote " << records.size() << " rows to " << csv_path->string() << '\n';
  if (svg_path) {
    if (!write_file(*svg_path, render_svg(records), err)) return kIo;
    out << "wrote chart to " << svg_path->string() << '\n';
  }
  return kOk;
}

// Splits one pool into (train, test) with a seeded permutation; the test part has n_test points.
std::pair<TrainingSet, TrainingSet> holdout_split(const TrainingSet& pool, std::size_t n_test, std::uint64_t seed) {
  if (n_test >= pool.size()) throw std::invalid_argument("n_test leaves no training examples in the pool");
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto rng = SeededRng::stream(seed, StreamPurpose::TestPoints, ~std::uint64_t{0});
  for (std::size_t i = idx.size() - 1; i > 0; --i) std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
  TrainingSet train(pool.dim());
  TrainingSet test(pool.dim());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    (k < n_test ? test : train).add(pool.point(idx[k]), pool.label(idx[k]));
  }
  return {std::move(train), std::move(test)};
}

}  // namespace

int run_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(cmd.config);
  } catch (const ConfigError& e) {
    err << "config error at " << e.what() << '\n';
    return kUsage;
  }
  if (!cfg.distribution) {
    err << "config error at distribution.type: the sweep command needs a synthetic distribution (use `mnist` for MNIST)\n";
    return kUsage;
  }
  try {
    const SyntheticSource source(*cfg.distribution);
    return emit(run_grid(source, cfg, out), cfg, cmd.out_csv, cmd.out_svg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int run_verify(std::string_view suite, std::ostream& out, std::ostream& err) {
  std::vector<CheckResult> results;
  try {
    results = run_verify_suite(suite);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  bool all = true;
  for (const auto& r : results) {
    out << format_check(r) << '\n';
    all = all && r.pass;
  }
  return all ? kOk : kCheckFailed;
}

int run_mnist(const MnistCommand& cmd, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(cmd.config);
  } catch (const ConfigError& e) {
    err << "config error at " << e.what() << '\n';
    return kUsage;
  }
  const MnistDigits digits = cfg.mnist.value_or(MnistDigits{});
  if (cfg.distribution) {
    err << "config error at distribution.type: the mnist command expects type \"mnist\"\n";
    return kUsage;
  }
  if (cmd.test_images.has_value() != cmd.test_labels.has_value()) {
    err << "error: --test-images and --test-labels must be given together\n";
    return kUsage;
  }

  try {
    const TrainingSet train_pool =
        mnist_binary_subset(load_idx(cmd.images), load_idx(cmd.labels), digits.digit_neg, digits.digit_pos);
    out << "training pool: " << train_pool.size() << " examples of dimension " << train_pool.dim() << '\n';

    std::optional<PoolSource> source;
    if (cmd.test_images) {
      TrainingSet test_pool = mnist_binary_subset(load_idx(*cmd.test_images), load_idx(*cmd.test_labels),
                                                  digits.digit_neg, digits.digit_pos);
      out << "test pool: " << test_pool.size() << " examples\n";
      source.emplace(train_pool, std::move(test_pool));
    } else {
      auto [train, test] = holdout_split(train_pool, cfg.sweep.n_test, cfg.sweep.base_seed);
      out << "test pool: " << test.size() << " held-out training examples\n";
      source.emplace(std::move(train), std::move(test));
    }
    return emit(run_grid(*source, cfg, out), cfg, cmd.out_csv, cmd.out_svg, out, err);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace nw
