#include "nw/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace nw {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

// Uniform on the open interval (lo, hi); resamples the rare draws that round
// onto an endpoint.
double uniform_between(double lo, double hi, SeededRng& rng) {
  for (;;) {
    const double x = lo + (hi - lo) * rng.uniform_open();
    if (x > lo && x < hi) return x;
  }
}

void gaussian_direction(std::span<double> out, SeededRng& rng) {
  for (;;) {
    double sumsq = 0.0;
    for (double& v : out) {
      v = rng.normal();
      sumsq += v * v;
    }
    if (sumsq > 0.0) {
      const double inv = 1.0 / std::sqrt(sumsq);
      for (double& v : out) v *= inv;
      return;
    }
  }
}

}  // namespace

void validate(const DistributionSpec& spec) {
  std::visit(Overloaded{
                 [](const OneDMixture& s) { require_open_unit(s.inner_mass, "inner_mass"); },
                 [](const SphereCap& s) {
                   require_open_unit(s.cap_mass, "cap_mass");
                   require_open_unit(s.cap_height, "cap_height");
                 },
                 [](const BallAnnulus& s) {
                   if (s.d == 0) throw std::invalid_argument("dimension d must be positive");
                   if (!(s.r > 0.0) || !std::isfinite(s.R)) {
                     throw std::invalid_argument("radii must be positive and finite");
                   }
                   if (!(s.R > 3.0 * s.r)) {
                     throw std::invalid_argument("construction requires R > 3r");
                   }
                   // c = 1 is the pure-ball degenerate mixture used by the local CDF check.
                   if (!(s.c > 0.0 && s.c <= 1.0)) {
                     throw std::invalid_argument("inner mass c must lie in (0, 1]");
                   }
                 },
                 [](const UnitCube& s) {
                   if (s.d == 0) throw std::invalid_argument("dimension d must be positive");
                 },
             },
             spec);
}

void validate(const NoiseSpec& noise) {
  if (!(noise.p > 0.0 && noise.p < 0.49)) {
    throw std::invalid_argument("label noise p must lie in (0, 0.49), got " + std::to_string(noise.p));
  }
}

std::size_t dimension(const DistributionSpec& spec) {
  return std::visit(Overloaded{
                        [](const OneDMixture&) -> std::size_t { return 1; },
                        [](const SphereCap&) -> std::size_t { return 3; },
                        [](const BallAnnulus& s) { return s.d; },
                        [](const UnitCube& s) { return s.d; },
                    },
                    spec);
}

GroundTruthSpec ground_truth_for(const DistributionSpec& spec) {
  return std::visit(Overloaded{
                        [](const OneDMixture&) -> GroundTruthSpec { return InnerInterval{}; },
                        [](const SphereCap& s) -> GroundTruthSpec { return CapRule{s.cap_height}; },
                        [](const BallAnnulus& s) -> GroundTruthSpec { return InnerBall{s.r}; },
                        [](const UnitCube&) -> GroundTruthSpec { return HalfCube{}; },
                    },
                    spec);
}

Label evaluate(const GroundTruthSpec& rule, std::span<const double> x) {
  const bool negative = std::visit(
      Overloaded{
          [&](const InnerInterval&) { return x[0] > 0.0 && x[0] < 0.25; },
          [&](const CapRule& c) { return x.size() >= 3 && x[2] > c.cap_height; },
          [&](const InnerBall& b) {
            double sumsq = 0.0;
            for (double v : x) sumsq += v * v;
            return std::sqrt(sumsq) <= b.radius;
          },
          [&](const HalfCube&) { return x[0] < 0.5; },
      },
      rule);
  return negative ? Label::Negative : Label::Positive;
}

TrainingSet sample_1d_mixture(std::size_t m, double inner_mass, SeededRng& rng) {
  require_open_unit(inner_mass, "inner_mass");
  std::vector<double> coords(m);
  std::vector<Label> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rng.uniform() < inner_mass) {
      coords[i] = uniform_between(0.0, 0.25, rng);
      labels[i] = Label::Negative;
    } else {
      coords[i] = uniform_between(0.75, 1.0, rng);
      labels[i] = Label::Positive;
    }
  }
  return TrainingSet(1, std::move(coords), std::move(labels));
}

TrainingSet sample_sphere_cap(std::size_t m, double cap_mass, double cap_height, SeededRng& rng) {
  require_open_unit(cap_mass, "cap_mass");
  require_open_unit(cap_height, "cap_height");
  std::vector<double> coords(3 * m);
  std::vector<Label> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    // Axial coordinate of a uniform point on S^2 is uniform on [-1, 1].
    double z;
    if (rng.uniform() < cap_mass) {
      z = uniform_between(cap_height, 1.0, rng);
      labels[i] = Label::Negative;
    } else {
      z = std::min(-1.0 + (1.0 + cap_height) * rng.uniform(), cap_height);
      labels[i] = Label::Positive;
    }
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    coords[3 * i] = rho * std::cos(phi);
    coords[3 * i + 1] = rho * std::sin(phi);
    coords[3 * i + 2] = z;
  }
  return TrainingSet(3, std::move(coords), std::move(labels));
}

void sample_in_ball(std::span<double> out, double radius, SeededRng& rng) {
  gaussian_direction(out, rng);
  const double rad = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(out.size()));
  for (double& v : out) v *= rad;
}

TrainingSet sample_ball_annulus(std::size_t m, const BallAnnulus& spec, SeededRng& rng) {
  validate(DistributionSpec{spec});
  const std::size_t d = spec.d;
  const double dd = static_cast<double>(d);
  const double inner = 3.0 * spec.r;
  const double lo = std::pow(inner, dd);
  const double hi = std::pow(spec.R, dd);

  std::vector<double> coords(d * m);
  std::vector<Label> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::span<double> x(coords.data() + i * d, d);
    if (rng.uniform() < spec.c) {
      sample_in_ball(x, spec.r, rng);
      labels[i] = Label::Negative;
    } else {
      gaussian_direction(x, rng);
      // |x|^d is uniform on [(3r)^d, R^d] for the uniform annulus.
      const double t = lo + (hi - lo) * rng.uniform();
      const double rad = std::clamp(std::pow(t, 1.0 / dd), inner, spec.R);
      for (double& v : x) v *= rad;
      labels[i] = Label::Positive;
    }
  }
  return TrainingSet(d, std::move(coords), std::move(labels));
}

TrainingSet sample_unit_cube(std::size_t m, std::size_t d, SeededRng& rng) {
  if (d == 0) throw std::invalid_argument("dimension d must be positive");
  std::vector<double> coords(d * m);
  std::vector<Label> labels(m);
  const HalfCube rule;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = rng.uniform();
    labels[i] = evaluate(rule, std::span<const double>(coords.data() + i * d, d));
  }
  return TrainingSet(d, std::move(coords), std::move(labels));
}

TrainingSet sample(const DistributionSpec& spec, std::size_t m, SeededRng& rng) {
  return std::visit(
      Overloaded{
          [&](const OneDMixture& s) { return sample_1d_mixture(m, s.inner_mass, rng); },
          [&](const SphereCap& s) { return sample_sphere_cap(m, s.cap_mass, s.cap_height, rng); },
          [&](const BallAnnulus& s) { return sample_ball_annulus(m, s, rng); },
          [&](const UnitCube& s) { return sample_unit_cube(m, s.d, rng); },
      },
      spec);
}

TrainingSet add_gaussian_input_noise(const TrainingSet& s, double sigma, SeededRng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be a nonnegative finite number");
  }
  if (sigma == 0.0) return s;
  std::vector<double> coords(s.coords().begin(), s.coords().end());
  for (double& v : coords) v += sigma * rng.normal();
  return s.with_coords(std::move(coords));
}

TrainingSet flip_labels(const TrainingSet& s, const NoiseSpec& noise, SeededRng& rng) {
  validate(noise);
  std::vector<Label> labels(s.labels().begin(), s.labels().end());
  for (Label& y : labels) {
    if (rng.uniform() < noise.p) y = negate(y);
  }
  return s.with_labels(std::move(labels));
}

double log_tempered_constant(double ratio) {
  if (!(ratio > 1.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("tempered constant requires beta/d > 1");
  }
  const double gap = ratio - 1.0;
  return (3.0 * std::numbers::ln2 + ratio * std::numbers::ln2 - std::log(gap)) / gap;
}

double tempered_constant(double ratio) { return std::exp(log_tempered_constant(ratio)); }

double catastrophic_mass_bound(double beta, std::size_t d, double r, double R) {
  if (d == 0) throw std::invalid_argument("dimension d must be positive");
  const double dd = static_cast<double>(d);
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(beta < dd)) throw std::invalid_argument("bound only defined for beta < d");
  if (!(r > 0.0) || !(R > 3.0 * r)) throw std::invalid_argument("construction requires R > 3r");
  return (1.0 - beta / dd) / (2400.0 * std::pow(1.0 + R / r, beta));
}

double unit_ball_volume(std::size_t d) {
  const double h = 0.5 * static_cast<double>(d);
  return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h + 1.0));
}

}  // namespace nw
