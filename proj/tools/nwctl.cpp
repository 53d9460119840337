// nwctl: sweeps, verification checks and MNIST runs for the singular-kernel
// Nadaraya-Watson classifier.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nw/commands.hpp"
#include "nw/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interpolating Nadaraya-Watson classifier with singular kernel |x - x_i|^-beta"};
  app.require_subcommand(1);

  nw::SweepCommand sweep;
  std::string sweep_out, sweep_plot;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a beta sweep from a JSON config and write CSV");
  sweep_cmd->add_option("--config", sweep.config, "run configuration (JSON)")->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (overrides output.csv)");
  sweep_cmd->add_option("--plot", sweep_plot, "SVG chart path (overrides output.svg)");

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run numerical verification checks");
  verify_cmd->add_option("--suite", suite, "order-stats | tails | local-cdf | knn-agreement | interpolation | all")
      ->required();

  nw::MnistCommand mnist;
  std::string mnist_out, mnist_plot, test_images, test_labels;
  auto* mnist_cmd = app.add_subcommand("mnist", "run a beta sweep on a two-digit MNIST subset");
  mnist_cmd->add_option("--images", mnist.images, "training images (IDX, optionally .gz)")->required();
  mnist_cmd->add_option("--labels", mnist.labels, "training labels (IDX, optionally .gz)")->required();
  mnist_cmd->add_option("--test-images", test_images, "test images (IDX); default holds out training examples");
  mnist_cmd->add_option("--test-labels", test_labels, "test labels (IDX)");
  mnist_cmd->add_option("--config", mnist.config, "run configuration (JSON)")->required();
  mnist_cmd->add_option("--out", mnist_out, "CSV output path (overrides output.csv)");
  mnist_cmd->add_option("--plot", mnist_plot, "SVG chart path (overrides output.svg)");

  CLI11_PARSE(app, argc, argv);

  auto opt = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
  };

  try {
    (void)nw::worker_count();  // reject a malformed NW_THREADS up front
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (*sweep_cmd) {
    sweep.out_csv = opt(sweep_out);
    sweep.out_svg = opt(sweep_plot);
    return nw::run_sweep(sweep, std::cout, std::cerr);
  }
  if (*verify_cmd) return nw::run_verify(suite, std::cout, std::cerr);

  mnist.out_csv = opt(mnist_out);
  mnist.out_svg = opt(mnist_plot);
  mnist.test_images = opt(test_images);
  mnist.test_labels = opt(test_labels);
  return nw::run_mnist(mnist, std::cout, std::cerr);
}
