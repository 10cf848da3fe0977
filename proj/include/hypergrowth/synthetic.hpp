#pragma once

#include "hypergrowth/models.hpp"
#include "hypergrowth/timeseries.hpp"

#include <cstdint>
#include <variant>

namespace hypergrowth {

/// Recipe for a synthetic series sampled on the grid t_start + i * step,
/// i = 0, 1, ... while the grid point does not exceed t_end.
///
/// Noise is multiplicative log-normal: value * exp(noise_rel * z) with z a
/// standard normal draw, so values stay positive.
struct SyntheticSpec {
  std::variant<HyperbolicModeld, ExponentialModeld> model;
  double t_start = 0.0;
  double t_end = 0.0;
  double step = 1.0;
  double noise_rel = 0.0;
  std::uint64_t seed = 0;
  Unit unit = Unit::Dimensionless;
};

/// Deterministic in (spec, seed). Throws InputError for an invalid grid and
/// DomainError when a hyperbolic growth grid reaches the singularity.
TimeSeries generate(const SyntheticSpec& spec);

/// Sampling grid used by generate().
Eigen::VectorXd sample_grid(double t_start, double t_end, double step);

}  // namespace hypergrowth
