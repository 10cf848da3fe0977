#include "hypergrowth/fixtures.hpp"

#include <array>
#include <cmath>

namespace hypergrowth::fixtures {

double trajectory_step(const FitWindow& range) {
  const double span = range.t_hi - range.t_lo;
  for (const double step : {10.0, 5.0, 2.0}) {
    if (span / step + 1.0 >= 60.0) return step;
  }
  return 1.0;
}

TimeSeries trajectory_series(const reference::PublishedTrajectory& trajectory, double noise_rel,
                             std::uint64_t seed) {
  SyntheticSpec spec;
  spec.model = trajectory.model;
  spec.t_start = trajectory.range.t_lo;
  spec.t_end = trajectory.range.t_hi;
  spec.step = trajectory_step(trajectory.range);
  spec.noise_rel = noise_rel;
  spec.seed = seed;
  spec.unit = trajectory.unit;
  return generate(spec).with_label(std::string(trajectory.region));
}

TimeSeries africa_composite() {
  const auto& slow = reference::find("africa-slow");
  const auto& fast = reference::find("africa-fast");
  SyntheticSpec early{slow.model, 1, 1801, 50, 0.0, 0, Unit::GdpBillions};
  const TimeSeries first = generate(early);

  const std::array<double, 4> late_years{1820, 1870, 1920, 1950};
  Eigen::VectorXd years(static_cast<Eigen::Index>(late_years.size()));
  Eigen::VectorXd values(years.size());
  for (Eigen::Index i = 0; i < years.size(); ++i) {
    years[i] = late_years[static_cast<std::size_t>(i)];
    values[i] = hyperbolic_value(fast.model, years[i]);
  }
  return concatenate(first, TimeSeries(years, values, Unit::GdpBillions))
      .with_label("africa-composite");
}

TimeSeries population_bridge() {
  const auto& early = reference::find("population-ad-500");
  const auto& late = reference::find("population-ad-1400");
  const TimeSeries a = generate({early.model, 500, 1200, 10, 0.0, 0, Unit::PopulationBillions});
  const TimeSeries c = generate({late.model, 1400, 1950, 10, 0.0, 0, Unit::PopulationBillions});

  const double s0 = hyperbolic_value(early.model, 1200.0);
  const double s1 = hyperbolic_value(late.model, 1400.0);
  Eigen::VectorXd years = sample_grid(1210, 1390, 10);
  Eigen::VectorXd values(years.size());
  for (Eigen::Index i = 0; i < years.size(); ++i) {
    values[i] = s0 + (s1 - s0) * (years[i] - 1200.0) / 200.0;
  }
  const TimeSeries b(std::move(years), std::move(values), Unit::PopulationBillions);
  return concatenate(concatenate(a, b), c).with_label("population-bridge");
}

TimeSeries stagnation_then_growth() {
  // 1/S falls linearly from 2 at 1750 to 0.4 at 1900.
  const double k = (2.0 - 0.4) / 150.0;
  const HyperbolicModeld rise{2.0 + k * 1750.0, k};
  Eigen::VectorXd years = sample_grid(1000, 1900, 10);
  Eigen::VectorXd values(years.size());
  for (Eigen::Index i = 0; i < years.size(); ++i) {
    values[i] = years[i] <= 1750.0 ? 0.5 : hyperbolic_value(rise, years[i]);
  }
  return TimeSeries(std::move(years), std::move(values), Unit::GdpBillions,
                    "stagnation-then-growth");
}

TimeSeries matched_exponential(const reference::PublishedTrajectory& trajectory) {
  const double t0 = trajectory.range.t_lo;
  const double t1 = trajectory.range.t_hi;
  const double s0 = hyperbolic_value(trajectory.model, t0);
  const double s1 = hyperbolic_value(trajectory.model, t1);
  const double rate = std::log(s1 / s0) / (t1 - t0);
  const ExponentialModeld model{s0 * std::exp(-rate * t0), rate};
  SyntheticSpec spec{model, t0, t1, trajectory_step(trajectory.range), 0.0, 0, trajectory.unit};
  return generate(spec).with_label(std::string(trajectory.region) + "-exponential");
}

}  // namespace hypergrowth::fixtures
