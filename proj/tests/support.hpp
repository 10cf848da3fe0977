#pragma once

#include "hypergrowth/models.hpp"
#include "hypergrowth/timeseries.hpp"

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace hypergrowth::testing {

inline double rel_err(double actual, double expected) {
  if (expected == 0.0) return std::abs(actual);
  return std::abs(actual - expected) / std::abs(expected);
}

inline TimeSeries make_series(std::initializer_list<std::pair<double, double>> points,
                              Unit unit = Unit::Dimensionless) {
  Eigen::VectorXd years(static_cast<Eigen::Index>(points.size()));
  Eigen::VectorXd values(years.size());
  Eigen::Index i = 0;
  for (const auto& [t, v] : points) {
    years[i] = t;
    values[i] = v;
    ++i;
  }
  return TimeSeries(years, values, unit);
}

/// Random growth model together with a window that stays clear of its
/// singularity: the singularity lies 20 to 500 years after the window.
struct RandomCase {
  HyperbolicModeld model;
  double t_lo;
  double t_hi;
  double step;
};

class CaseGenerator {
 public:
  explicit CaseGenerator(std::uint64_t seed) : rng_(seed) {}

  RandomCase next() {
    std::uniform_real_distribution<double> log_k(-6.0, -2.0);
    std::uniform_real_distribution<double> start(-3000.0, 1900.0);
    std::uniform_real_distribution<double> span(100.0, 1500.0);
    std::uniform_real_distribution<double> lead(20.0, 500.0);
    std::uniform_int_distribution<int> points(6, 120);
    const double k = std::pow(10.0, log_k(rng_));
    const double t_lo = start(rng_);
    const double t_hi = t_lo + span(rng_);
    const double t_sing = t_hi + lead(rng_);
    const double step = (t_hi - t_lo) / static_cast<double>(points(rng_) - 1);
    return {{k * t_sing, k}, t_lo, t_hi, step};
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hypergrowth::testing
