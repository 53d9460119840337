#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <variant>

#include "nw/rng.hpp"
#include "nw/types.hpp"

namespace nw {

// ---- Distributions -------------------------------------------------------

/// inner_mass * Unif(0, 1/4) + (1 - inner_mass) * Unif(3/4, 1) on the line.
struct OneDMixture {
  double inner_mass = 0.1;
};

/// cap_mass * Unif(cap) + (1 - cap_mass) * Unif(S^2 \ cap), cap = {x3 > cap_height}.
struct SphereCap {
  double cap_mass = 0.1;
  double cap_height = std::sqrt(3.0) / 2.0;
};

/// c * Unif(B(0, r)) + (1 - c) * Unif({3r <= |x| <= R}) in `d` dimensions.
struct BallAnnulus {
  double r = 0.25;
  double R = 1.0;
  double c = 0.1;
  std::size_t d = 1;
};

/// Unif([0, 1]^d). Used by the locality checks, where labels come from elsewhere.
struct UnitCube {
  std::size_t d = 2;
};

using DistributionSpec = std::variant<OneDMixture, SphereCap, BallAnnulus, UnitCube>;

// ---- Targets -------------------------------------------------------------

/// -1 on the open interval (0, 1/4), +1 elsewhere.
struct InnerInterval {};
/// -1 where x3 > cap_height, +1 elsewhere.
struct CapRule {
  double cap_height;
};
/// -1 inside the closed ball |x| <= radius, +1 elsewhere.
struct InnerBall {
  double radius;
};
/// -1 where x1 < 1/2, +1 elsewhere.
struct HalfCube {};

using GroundTruthSpec = std::variant<InnerInterval, CapRule, InnerBall, HalfCube>;

struct NoiseSpec {
  double p = 0.1;
};

void validate(const DistributionSpec& spec);
void validate(const NoiseSpec& noise);

std::size_t dimension(const DistributionSpec& spec);
GroundTruthSpec ground_truth_for(const DistributionSpec& spec);
Label evaluate(const GroundTruthSpec& rule, std::span<const double> x);

// ---- Samplers (clean labels) ---------------------------------------------

TrainingSet sample_1d_mixture(std::size_t m, double inner_mass, SeededRng& rng);
TrainingSet sample_sphere_cap(std::size_t m, double cap_mass, double cap_height, SeededRng& rng);
TrainingSet sample_ball_annulus(std::size_t m, const BallAnnulus& spec, SeededRng& rng);
TrainingSet sample_unit_cube(std::size_t m, std::size_t d, SeededRng& rng);
TrainingSet sample(const DistributionSpec& spec, std::size_t m, SeededRng& rng);

/// Uniform point in the closed ball B(0, radius) of dimension `out.size()`.
void sample_in_ball(std::span<double> out, double radius, SeededRng& rng);

// ---- Corruption channels -------------------------------------------------

TrainingSet add_gaussian_input_noise(const TrainingSet& s, double sigma, SeededRng& rng);

/// Negates each label independently with probability p. One uniform is drawn
/// per point and the label flips when it falls below p, so two calls on the
/// same stream with p1 < p2 flip nested subsets.
TrainingSet flip_labels(const TrainingSet& s, const NoiseSpec& noise, SeededRng& rng);

// ---- Closed-form constants -----------------------------------------------

/// (8 * 2^ratio / (ratio - 1))^(1 / (ratio - 1)), the exponent constant of
/// the tempered lower bound p^c. Returns +inf when the value overflows.
double tempered_constant(double ratio);
double log_tempered_constant(double ratio);

/// (1 - beta/d) / (2400 * (1 + R/r)^beta): the inner mass admissible for the
/// catastrophic-overfitting guarantee when beta < d.
double catastrophic_mass_bound(double beta, std::size_t d, double r, double R);

/// Volume of the unit ball in d dimensions.
double unit_ball_volume(std::size_t d);

}  // namespace nw
