#include "hypergrowth/timeseries.hpp"

#include "hypergrowth/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <utility>
#include <vector>

namespace hypergrowth {

std::string_view to_string(Unit unit) {
  switch (unit) {
    case Unit::PopulationBillions:
      return "pop-billions";
    case Unit::GdpBillions:
      return "gdp-billions";
    case Unit::Dimensionless:
      return "raw";
  }
  return "raw";
}

std::optional<Unit> parse_unit(std::string_view text) {
  if (text == "pop-billions") return Unit::PopulationBillions;
  if (text == "gdp-billions") return Unit::GdpBillions;
  if (text == "raw") return Unit::Dimensionless;
  return std::nullopt;
}

TimeSeries::TimeSeries(Eigen::VectorXd years, Eigen::VectorXd values, Unit unit, std::string label,
                       bool reciprocal)
    : years_(std::move(years)),
      values_(std::move(values)),
      unit_(unit),
      label_(std::move(label)),
      reciprocal_(reciprocal) {
  if (years_.size() != values_.size()) {
    throw InputError(fmt::format("time series has {} years but {} values", years_.size(),
                                 values_.size()));
  }
  for (Eigen::Index i = 0; i < years_.size(); ++i) {
    if (!std::isfinite(years_[i])) throw InputError(fmt::format("non-finite year at index {}", i));
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw InputError(fmt::format("value at year {} must be finite and positive, got {}",
                                   years_[i], values_[i]));
    }
    if (i > 0 && years_[i] <= years_[i - 1]) {
      throw InputError(fmt::format("years must be strictly increasing ({} follows {})", years_[i],
                                   years_[i - 1]));
    }
  }
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
  const auto f = static_cast<Eigen::Index>(first);
  const auto n = static_cast<Eigen::Index>(count);
  return TimeSeries(years_.segment(f, n), values_.segment(f, n), unit_, label_, reciprocal_);
}

TimeSeries TimeSeries::with_label(std::string label) const {
  return TimeSeries(years_, values_, unit_, std::move(label), reciprocal_);
}

TimeSeries window(const TimeSeries& series, double t_lo, double t_hi) {
  if (!(t_lo < t_hi)) {
    throw InputError(fmt::format("window lower bound {} must be below upper bound {}", t_lo, t_hi));
  }
  std::size_t first = series.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series[i].year;
    if (t >= t_lo && t <= t_hi) {
      if (count == 0) first = i;
      ++count;
    }
  }
  if (count < 2) {
    throw InputError(
        fmt::format("window [{}, {}] leaves fewer than 2 points ({} found)", t_lo, t_hi, count));
  }
  return series.slice(first, count);
}

TimeSeries reciprocal_series(const TimeSeries& series) {
  Eigen::VectorXd inv = series.values().cwiseInverse();
  return TimeSeries(series.years(), std::move(inv), series.unit(), series.label(),
                    !series.is_reciprocal());
}

TimeSeries scale_values(const TimeSeries& series, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw InputError(fmt::format("scale factor must be finite and positive, got {}", factor));
  }
  return TimeSeries(series.years(), series.values() * factor, series.unit(), series.label(),
                    series.is_reciprocal());
}

TimeSeries shift_years(const TimeSeries& series, double offset) {
  Eigen::VectorXd years = series.years().array() + offset;
  return TimeSeries(std::move(years), series.values(), series.unit(), series.label(),
                    series.is_reciprocal());
}

TimeSeries concatenate(const TimeSeries& first, const TimeSeries& second) {
  if (first.empty()) return second;
  if (second.empty()) return first;
  Eigen::VectorXd years(first.years().size() + second.years().size());
  Eigen::VectorXd values(years.size());
  years << first.years(), second.years();
  values << first.values(), second.values();
  return TimeSeries(std::move(years), std::move(values), first.unit(), first.label(),
                    first.is_reciprocal());
}

}  // namespace hypergrowth
