#pragma once

#include "hypergrowth/fitting.hpp"
#include "hypergrowth/percapita.hpp"
#include "hypergrowth/segmentation.hpp"
#include "hypergrowth/timeseries.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hypergrowth {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportSchema = "hypergrowth-report";
inline constexpr int kReportSchemaVersion = 1;

/// JSON number, or null for NaN and infinities.
nlohmann::json json_number(double value);

nlohmann::json to_json(const FitReport& fit);
nlohmann::json to_json(const ModelComparison& comparison);
nlohmann::json to_json(const TransitionEvent& event);
nlohmann::json to_json(const SegmentationResult& result);
nlohmann::json to_json(const Departure& departure);
nlohmann::json to_json(const TakeoffResult& takeoff);

/// Skeleton shared by every command: schema tag, version, command name,
/// input descriptor and the parameters used. Sections not produced by a
/// command stay null.
nlohmann::json make_report(std::string_view command, nlohmann::json input,
                           nlohmann::json parameters);

/// Empty when report conforms to schema version 1, otherwise one message per
/// violation.
std::vector<std::string> validate_report(const nlohmann::json& report);

/// Fixed four-significant-figure rendering used in text tables.
std::string sig4(double value);

/// Writes t,value,model rows where model is S(t) of the given model (empty
/// where the model is not evaluable).
void write_direct_plot(std::ostream& out, const TimeSeries& series, const HyperbolicModeld& model);
/// Writes t,reciprocal_value,reciprocal_model rows with a - k t.
void write_reciprocal_plot(std::ostream& out, const TimeSeries& series,
                           const HyperbolicModeld& model);

/// Indices of the few "strategically located" points that make a smooth
/// hyperbola look like stagnation followed by an explosion: the first point,
/// the points nearest 50%, 75%, 87.5% and 93.75% of the time span, and the
/// last two points. Sorted, without duplicates, at most seven.
std::vector<std::size_t> strategic_subsample(const TimeSeries& series);

/// Share of the total value change of the piecewise-linear curve through
/// the given points that falls in the last `fraction` of the time span.
double late_change_share(const TimeSeries& points, double fraction);

/// Explanation written next to the distortion demo's plot data.
std::string distortion_caption(const TimeSeries& full, const TimeSeries& subsample);

}  // namespace hypergrowth
