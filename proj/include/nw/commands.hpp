#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace nw {

struct SweepCommand {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_csv;  // overrides output.csv of the config
  std::optional<std::filesystem::path> out_svg;  // overrides output.svg of the config
};

struct MnistCommand {
  std::filesystem::path images;
  std::filesystem::path labels;
  // Official test split. When absent, test points come from the training
  // files' examples left out of the training sample (requires m < pool size).
  std::optional<std::filesystem::path> test_images;
  std::optional<std::filesystem::path> test_labels;
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_csv;
  std::optional<std::filesystem::path> out_svg;
};

// Each returns a process exit status and reports problems on `err`.
int run_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err);
int run_verify(std::string_view suite, std::ostream& out, std::ostream& err);
int run_mnist(const MnistCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace nw
