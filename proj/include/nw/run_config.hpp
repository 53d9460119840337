#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nw/harness.hpp"
#include "nw/synthetic.hpp"

namespace nw {

/// Schema violation; `key_path` names the offending key, e.g. "experiment.betas[2]".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& message);
  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

struct MnistDigits {
  int digit_neg = 0;
  int digit_pos = 1;
};

struct OutputPaths {
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> svg;
};

/// A parsed run configuration. Exactly one of `distribution` / `mnist` is set.
struct RunConfig {
  SweepSettings sweep;
  std::vector<double> sigma_grid;  // nonempty selects the noisy-input sweep
  std::optional<DistributionSpec> distribution;
  std::optional<MnistDigits> mnist;
  OutputPaths output;
};

/// Strict JSON schema: unknown keys and wrong types raise ConfigError.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace nw
