#pragma once

#include "hypergrowth/reference.hpp"
#include "hypergrowth/synthetic.hpp"
#include "hypergrowth/timeseries.hpp"

#include <cstdint>

namespace hypergrowth::fixtures {

/// Samples a published trajectory over its range. The step is the largest
/// of 1, 2, 5 or 10 years that still yields at least 60 points.
TimeSeries trajectory_series(const reference::PublishedTrajectory& trajectory,
                             double noise_rel = 0.0, std::uint64_t seed = 0);

/// Grid step used by trajectory_series for a range.
double trajectory_step(const FitWindow& range);

/// Slow African GDP trajectory sampled at 1, 51, ..., 1801 followed by the
/// fast trajectory at 1820, 1870, 1920 and 1950.
TimeSeries africa_composite();

/// World population: AD 500-1200 trajectory, a straight-line bridge in S
/// over 1210-1390, then the AD 1400-1950 trajectory; 10-year sampling.
TimeSeries population_bridge();

/// Flat S = 0.5 over 1000-1750, then a hyperbola reaching 2.5 in 1900;
/// 10-year sampling.
TimeSeries stagnation_then_growth();

/// Exponential with the same end values as the trajectory over its range,
/// sampled like trajectory_series.
TimeSeries matched_exponential(const reference::PublishedTrajectory& trajectory);

}  // namespace hypergrowth::fixtures
