#include "hypergrowth/synthetic.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>

namespace hypergrowth {

Eigen::VectorXd sample_grid(double t_start, double t_end, double step) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(step)) {
    throw InputError("sampling grid bounds must be finite");
  }
  if (!(step > 0.0)) throw InputError(fmt::format("step must be positive, got {}", step));
  if (t_end < t_start) {
    throw InputError(fmt::format("grid end {} precedes start {}", t_end, t_start));
  }
  // Tolerate accumulated rounding so that e.g. [1000, 1955] step 5 keeps 1955.
  const auto count = static_cast<Eigen::Index>(std::floor((t_end - t_start) / step + 1e-9)) + 1;
  Eigen::VectorXd grid(count);
  for (Eigen::Index i = 0; i < count; ++i) grid[i] = t_start + static_cast<double>(i) * step;
  return grid;
}

TimeSeries generate(const SyntheticSpec& spec) {
  if (!(spec.noise_rel >= 0.0) || !std::isfinite(spec.noise_rel)) {
    throw InputError(fmt::format("noise must be non-negative, got {}", spec.noise_rel));
  }
  Eigen::VectorXd years = sample_grid(spec.t_start, spec.t_end, spec.step);

  if (const auto* hyp = std::get_if<HyperbolicModeld>(&spec.model); hyp && hyp->is_growth()) {
    const double t_sing = singularity_time(*hyp);
    if (years[years.size() - 1] >= t_sing) {
      throw DomainError(fmt::format("grid end {} reaches the singularity at {}",
                                    years[years.size() - 1], t_sing));
    }
  }

  Eigen::VectorXd values(years.size());
  for (Eigen::Index i = 0; i < years.size(); ++i) {
    values[i] = std::visit(
        [t = years[i]](const auto& m) {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, HyperbolicModeld>) {
            return hyperbolic_value(m, t);
          } else {
            return exponential_value(m, t);
          }
        },
        spec.model);
  }

  if (spec.noise_rel > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      values[i] *= std::exp(spec.noise_rel * normal(rng));
    }
  }
  return TimeSeries(std::move(years), std::move(values), spec.unit, "synthetic");
}

}  // namespace hypergrowth
