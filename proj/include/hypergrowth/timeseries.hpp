#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace hypergrowth {

/// Canonical size units. Populations are kept in billions of persons and
/// GDP in billions of 1990 international Geary-Khamis dollars so that
/// published (a, k) pairs apply without conversion.
enum class Unit { PopulationBillions, GdpBillions, Dimensionless };

std::string_view to_string(Unit unit);
/// Accepts the CLI spellings "pop-billions", "gdp-billions" and "raw".
std::optional<Unit> parse_unit(std::string_view text);

/// One observation. Years follow the historical convention: n BC is -n and
/// there is no year zero adjustment.
struct TimePoint {
  double year;
  double value;
};

/// Ordered, strictly positive observations. Immutable after construction.
///
/// Years are strictly increasing and finite; values are finite and > 0.
/// Construction throws InputError when either invariant is violated.
class TimeSeries {
 public:
  TimeSeries(Eigen::VectorXd years, Eigen::VectorXd values, Unit unit = Unit::Dimensionless,
             std::string label = {}, bool reciprocal = false);

  std::size_t size() const { return static_cast<std::size_t>(years_.size()); }
  bool empty() const { return years_.size() == 0; }

  const Eigen::VectorXd& years() const { return years_; }
  const Eigen::VectorXd& values() const { return values_; }
  TimePoint operator[](std::size_t i) const {
    return {years_[static_cast<Eigen::Index>(i)], values_[static_cast<Eigen::Index>(i)]};
  }
  TimePoint front() const { return (*this)[0]; }
  TimePoint back() const { return (*this)[size() - 1]; }

  Unit unit() const { return unit_; }
  const std::string& label() const { return label_; }
  /// True when values hold 1/S rather than S.
  bool is_reciprocal() const { return reciprocal_; }

  /// Contiguous sub-range [first, first + count).
  TimeSeries slice(std::size_t first, std::size_t count) const;
  TimeSeries with_label(std::string label) const;

 private:
  Eigen::VectorXd years_;
  Eigen::VectorXd values_;
  Unit unit_;
  std::string label_;
  bool reciprocal_;
};

/// Sub-series with t_lo <= year <= t_hi. Throws InputError when t_lo >= t_hi
/// or fewer than two points survive.
TimeSeries window(const TimeSeries& series, double t_lo, double t_hi);

/// Replaces every value with its reciprocal. Applying it twice restores the
/// original series.
TimeSeries reciprocal_series(const TimeSeries& series);

/// Multiplies every value by factor (> 0).
TimeSeries scale_values(const TimeSeries& series, double factor);

/// Adds offset to every year.
TimeSeries shift_years(const TimeSeries& series, double offset);

/// Concatenates series whose year ranges do not overlap.
TimeSeries concatenate(const TimeSeries& first, const TimeSeries& second);

}  // namespace hypergrowth
