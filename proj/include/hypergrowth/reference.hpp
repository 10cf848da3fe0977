#pragma once

#include "hypergrowth/fitting.hpp"
#include "hypergrowth/models.hpp"
#include "hypergrowth/timeseries.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace hypergrowth::reference {

/// A published hyperbolic trajectory with its fitting range and, where one
/// was reported, the year growth departed from it.
struct PublishedTrajectory {
  std::string_view region;
  HyperbolicModeld model;
  FitWindow range;
  std::optional<double> singularity;  ///< published, rounded to whole years
  std::optional<double> departure;
  std::optional<double> proximity;
  Unit unit;
};

/// Regional GDP trajectories (billions of 1990 GK dollars).
std::span<const PublishedTrajectory> gdp_trajectories();

/// World population trajectories (billions): 10,000-500 BC, AD 500-1200,
/// AD 1400-1950, plus the single AD 500-2015 trajectory.
std::span<const PublishedTrajectory> population_trajectories();

/// Every trajectory above, GDP first.
std::span<const PublishedTrajectory> all_trajectories();

const PublishedTrajectory& find(std::string_view region);

struct PublishedGrowthRate {
  std::string_view trajectory;
  double year;
  double rate;  ///< per year
};

std::span<const PublishedGrowthRate> population_growth_rates();

struct PublishedSpeedRatio {
  std::string_view faster;
  std::string_view slower;
  double ratio;
};

std::span<const PublishedSpeedRatio> speed_ratios();

/// World population milestones: the n-th billion and the approximate year it
/// was reached.
struct Milestone {
  double level;  ///< billions
  double year;
};

std::span<const Milestone> population_milestones();

}  // namespace hypergrowth::reference
