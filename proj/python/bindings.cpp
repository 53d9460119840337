#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "nw/harness.hpp"
#include "nw/idx.hpp"
#include "nw/predictor.hpp"
#include "nw/run_config.hpp"
#include "nw/synthetic.hpp"
#include "nw/verifiers.hpp"
#include "nw/verify_suite.hpp"

namespace py = pybind11;

namespace {

using Coords = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Labels = py::array_t<int, py::array::c_style | py::array::forcecast>;

nw::TrainingSet make_training_set(const Coords& x, const Labels& y) {
  if (x.ndim() != 2) throw py::value_error("coordinates must be a 2-D array (m, d)");
  if (y.ndim() != 1 || y.shape(0) != x.shape(0)) throw py::value_error("labels must be a 1-D array of length m");
  const auto m = static_cast<std::size_t>(x.shape(0));
  const auto d = static_cast<std::size_t>(x.shape(1));
  std::vector<double> coords(x.data(), x.data() + m * d);
  std::vector<nw::Label> labels;
  labels.reserve(m);
  for (std::size_t i = 0; i < m; ++i) labels.push_back(nw::label_from_int(y.data()[i]));
  return nw::TrainingSet(d, std::move(coords), std::move(labels));
}

std::span<const double> as_span(const Coords& x) {
  return {x.data(), static_cast<std::size_t>(x.size())};
}

nw::TieBreak tie_break_from(int v) {
  if (v == 1) return nw::TieBreak::PlusOne;
  if (v == -1) return nw::TieBreak::MinusOne;
  throw py::value_error("tie_break must be +1 or -1");
}

py::array_t<double> coords_array(const nw::TrainingSet& s) {
  py::array_t<double> out({static_cast<py::ssize_t>(s.size()), static_cast<py::ssize_t>(s.dim())});
  std::copy(s.coords().begin(), s.coords().end(), out.mutable_data());
  return out;
}

py::array_t<int> labels_array(const nw::TrainingSet& s) {
  py::array_t<int> out(static_cast<py::ssize_t>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) out.mutable_data()[i] = nw::to_int(s.label(i));
  return out;
}

py::list curve_rows(const nw::ErrorCurve& curve, std::optional<double> sigma) {
  py::list rows;
  for (const auto& r : curve.rows) {
    py::dict d;
    if (sigma) d["sigma"] = *sigma;
    d["beta"] = r.beta;
    d["p"] = r.p;
    d["m"] = r.m;
    d["reps"] = r.reps;
    d["mean_error"] = r.mean_error;
    d["ci_low"] = r.ci_low;
    d["ci_high"] = r.ci_high;
    d["tie_count"] = r.tie_count;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_nwinterp, m) {
  m.doc() = "Singular-kernel Nadaraya-Watson classifier, samplers, verifiers and sweeps";

  py::class_<nw::TrainingSet>(m, "TrainingSet")
      .def(py::init(&make_training_set), py::arg("coords"), py::arg("labels"))
      .def_property_readonly("dim", &nw::TrainingSet::dim)
      .def("__len__", &nw::TrainingSet::size)
      .def_property_readonly("coords", &coords_array)
      .def_property_readonly("labels", &labels_array);

  py::class_<nw::ScoreResult>(m, "ScoreResult")
      .def_readonly("sign", &nw::ScoreResult::sign)
      .def_readonly("log_magnitude", &nw::ScoreResult::log_magnitude)
      .def_readonly("exact_hit", &nw::ScoreResult::exact_hit);

  m.def(
      "raw_score", [](const Coords& x, const nw::TrainingSet& s, double beta) { return nw::raw_score(as_span(x), s, beta); },
      py::arg("x"), py::arg("training"), py::arg("beta"));
  m.def(
      "predict",
      [](const Coords& x, const nw::TrainingSet& s, double beta, int tie_break) {
        return nw::to_int(nw::predict(as_span(x), s, {beta, tie_break_from(tie_break)}));
      },
      py::arg("x"), py::arg("training"), py::arg("beta"), py::arg("tie_break") = 1);
  m.def(
      "predict_batch",
      [](const Coords& queries, const nw::TrainingSet& s, double beta, int tie_break) {
        std::vector<nw::Label> labels;
        {
          py::gil_scoped_release release;
          labels = nw::predict_batch(as_span(queries), s, {beta, tie_break_from(tie_break)});
        }
        py::array_t<int> out(static_cast<py::ssize_t>(labels.size()));
        for (std::size_t i = 0; i < labels.size(); ++i) out.mutable_data()[i] = nw::to_int(labels[i]);
        return out;
      },
      py::arg("queries"), py::arg("training"), py::arg("beta"), py::arg("tie_break") = 1);
  m.def(
      "knn_predict",
      [](const Coords& x, const nw::TrainingSet& s, std::size_t k) { return nw::to_int(nw::knn_predict(as_span(x), s, k)); },
      py::arg("x"), py::arg("training"), py::arg("k"));

  m.def(
      "sample_1d_mixture",
      [](std::size_t n, double inner_mass, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::sample_1d_mixture(n, inner_mass, rng);
      },
      py::arg("m"), py::arg("inner_mass") = 0.1, py::arg("seed") = 0);
  m.def(
      "sample_sphere_cap",
      [](std::size_t n, double cap_mass, double cap_height, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::sample_sphere_cap(n, cap_mass, cap_height, rng);
      },
      py::arg("m"), py::arg("cap_mass") = 0.1, py::arg("cap_height") = std::sqrt(3.0) / 2.0, py::arg("seed") = 0);
  m.def(
      "sample_ball_annulus",
      [](std::size_t n, double r, double R, double c, std::size_t d, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::sample_ball_annulus(n, nw::BallAnnulus{r, R, c, d}, rng);
      },
      py::arg("m"), py::arg("r"), py::arg("R"), py::arg("c"), py::arg("d"), py::arg("seed") = 0);
  m.def(
      "flip_labels",
      [](const nw::TrainingSet& s, double p, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::flip_labels(s, nw::NoiseSpec{p}, rng);
      },
      py::arg("training"), py::arg("p"), py::arg("seed") = 0);
  m.def(
      "add_gaussian_input_noise",
      [](const nw::TrainingSet& s, double sigma, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::add_gaussian_input_noise(s, sigma, rng);
      },
      py::arg("training"), py::arg("sigma"), py::arg("seed") = 0);

  m.def("tempered_constant", &nw::tempered_constant, py::arg("ratio"));
  m.def("catastrophic_mass_bound", &nw::catastrophic_mass_bound, py::arg("beta"), py::arg("d"), py::arg("r"),
        py::arg("R"));

  py::class_<nw::KsReport>(m, "KsReport")
      .def_readonly("statistic", &nw::KsReport::statistic)
      .def_readonly("n_trials", &nw::KsReport::n_trials)
      .def_readonly("threshold", &nw::KsReport::threshold)
      .def_readonly("passed", &nw::KsReport::pass);
  py::class_<nw::TailReport>(m, "TailReport")
      .def_readonly("n", &nw::TailReport::n)
      .def_readonly("empirical_prob", &nw::TailReport::empirical_prob)
      .def_readonly("exact_prob", &nw::TailReport::exact_prob)
      .def_readonly("passed", &nw::TailReport::pass);
  py::class_<nw::AgreementReport>(m, "AgreementReport")
      .def_readonly("rate", &nw::AgreementReport::rate)
      .def_readonly("ci_low", &nw::AgreementReport::ci_low)
      .def_readonly("ci_high", &nw::AgreementReport::ci_high)
      .def_readonly("n_queries", &nw::AgreementReport::n_queries);

  m.def(
      "order_stat_representation_check",
      [](std::size_t n, std::size_t i, std::size_t trials, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::order_stat_representation_check(n, i, trials, rng);
      },
      py::arg("m"), py::arg("i"), py::arg("n_trials") = 10000, py::arg("seed") = 0);
  m.def(
      "exp_partial_sum_tail",
      [](std::size_t n, std::size_t trials, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::exp_partial_sum_tail(n, trials, rng);
      },
      py::arg("n"), py::arg("n_trials") = 100000, py::arg("seed") = 0);
  m.def(
      "knn_agreement_unit_cube",
      [](std::size_t d, double beta, std::size_t n, std::size_t queries, std::size_t k, std::uint64_t seed) {
        nw::SeededRng rng(seed);
        return nw::knn_agreement(nw::UnitCube{d}, beta, n, queries, k, rng);
      },
      py::arg("d"), py::arg("beta"), py::arg("m"), py::arg("n_queries"), py::arg("k") = 1, py::arg("seed") = 0);
  m.def(
      "run_verify_suite",
      [](const std::string& suite, std::uint64_t seed) {
        py::list out;
        for (const auto& r : nw::run_verify_suite(suite, seed)) {
          out.append(py::make_tuple(r.name, r.statistic, r.threshold, r.pass));
        }
        return out;
      },
      py::arg("suite"), py::arg("seed") = nw::kDefaultVerifySeed);

  m.def(
      "beta_sweep",
      [](const std::string& config_json) {
        const nw::RunConfig cfg = nw::parse_run_config(config_json);
        if (!cfg.distribution) throw py::value_error("beta_sweep needs a synthetic distribution");
        const nw::SyntheticSource source(*cfg.distribution);
        if (cfg.sigma_grid.empty()) {
          nw::ErrorCurve curve;
          {
            py::gil_scoped_release release;
            curve = nw::beta_sweep(source, cfg.sweep);
          }
          return curve_rows(curve, std::nullopt);
        }
        std::vector<nw::NoisySweepEntry> entries;
        {
          py::gil_scoped_release release;
          entries = nw::noisy_input_sweep(source, cfg.sweep, cfg.sigma_grid);
        }
        py::list rows;
        for (const auto& e : entries) {
          for (auto row : curve_rows(e.curve, e.sigma)) rows.append(row);
        }
        return rows;
      },
      py::arg("config_json"), "Run a sweep described by a JSON run configuration; returns a list of row dicts.");

  m.def(
      "load_idx",
      [](const std::filesystem::path& path) {
        nw::IdxTensor t = nw::load_idx(path);
        std::vector<py::ssize_t> shape(t.dims.begin(), t.dims.end());
        py::array_t<std::uint8_t> out(shape);
        std::copy(t.data.begin(), t.data.end(), out.mutable_data());
        return out;
      },
      py::arg("path"));
  m.def(
      "mnist_binary_subset",
      [](const std::filesystem::path& images, const std::filesystem::path& labels, int neg, int pos) {
        return nw::mnist_binary_subset(nw::load_idx(images), nw::load_idx(labels), neg, pos);
      },
      py::arg("images"), py::arg("labels"), py::arg("digit_neg") = 0, py::arg("digit_pos") = 1);
}
