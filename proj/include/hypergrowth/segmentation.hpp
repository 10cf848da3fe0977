#pragma once

#include "hypergrowth/fitting.hpp"
#include "hypergrowth/timeseries.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypergrowth {

/// A contiguous run of data points fitted by one hyperbolic model.
struct Segment {
  FitWindow window;
  FitReport fit;
  std::size_t first = 0;  ///< index of the first point in the segmented series
  std::size_t count = 0;
};

enum class TransitionKind {
  ShiftToFasterHyperbolic,
  ShiftToSlowerHyperbolic,
  DiversionSlower,
  DiversionFaster,
  TakeoffCandidate,
};

std::string_view to_string(TransitionKind kind);

struct TransitionEvidence {
  double slope_before = 0.0;  ///< k of the earlier trajectory
  double slope_after = 0.0;   ///< k of the later trajectory, NaN for diversions
  /// Faster k over slower k for shifts; mean relative residual for diversions.
  double score = 0.0;
  std::string note;
};

struct TransitionEvent {
  TransitionKind kind = TransitionKind::ShiftToFasterHyperbolic;
  double t_estimate = 0.0;
  FitWindow window;
  TransitionEvidence evidence;
};

struct SegmentationOptions {
  std::size_t max_segments = 3;
  /// Cost per breakpoint. Defaults to 2 * sigma^2 * ln n, sigma^2 being the
  /// reciprocal-space residual variance of the single-segment fit.
  std::optional<double> penalty;
  std::size_t min_segment_points = 4;
  /// Worker threads for the segment cost table; 0 picks the hardware count.
  unsigned threads = 1;
};

struct SegmentationResult {
  std::vector<Segment> segments;
  std::vector<TransitionEvent> transitions;
  /// Sum of reciprocal-space SSE over the chosen segments.
  double total_sse = 0.0;
  double penalty_used = 0.0;
  /// Best achievable SSE with 0, 1, 2, ... breakpoints.
  std::vector<double> sse_by_breakpoints;
};

/// Exhaustive penalised search for piecewise-hyperbolic structure.
///
/// Breakpoints fall between consecutive data points. Each candidate segment
/// is fitted by uniform least squares on 1/S and the partition minimising
/// total SSE + penalty * breakpoints is returned; at equal cost the
/// partition with fewer breakpoints wins. Segment SSE below 1e-11 of the
/// segment's total sum of squares is treated as exactly zero so that
/// floating-point noise cannot justify a split.
///
/// Transitions are reported between consecutive growth segments (k > 0);
/// non-growth segments lying between them are folded into the transition
/// window, and trailing non-growth data become a terminal diversion.
SegmentationResult segment(const TimeSeries& series, const SegmentationOptions& options = {});

/// Shift classification from the two slopes; equal slopes count as a shift
/// to faster growth with score 1 and a note saying so.
TransitionEvent classify_transition(const Segment& before, const Segment& after);

/// Builds a Segment over points [first, first + count) of series.
Segment make_segment(const TimeSeries& series, std::size_t first, std::size_t count);

enum class Direction { Slower, Faster };

std::string_view to_string(Direction direction);

struct Departure {
  std::optional<double> t_departure;
  Direction direction = Direction::Slower;
  FitReport fit;
  /// (S_data - S_model) / S_model for every point after the fit window.
  std::vector<TimePoint> residuals;
};

/// Fits fit_window, then looks for the earliest later point from which every
/// subsequent relative residual exceeds threshold_rel in magnitude with one
/// consistent sign. Negative residuals (upward-bending reciprocals) mean a
/// slower trajectory, positive ones a faster trajectory.
Departure detect_departure(const TimeSeries& series, FitWindow fit_window, double threshold_rel);

struct TakeoffOptions {
  double slope_factor = 3.0;
  double stagnation_fraction = 0.1;
  std::size_t min_segment_points = 4;
};

struct TakeoffEvidence {
  FitWindow before;
  FitWindow after;
  double k_before = 0.0;
  double k_after = 0.0;
  /// |k_after| / |k_before|.
  double slope_factor = 0.0;
  /// |k_before| * span_before / mean(1/S) over the earlier segment.
  double stagnation_ratio = 0.0;
  bool slope_condition = false;
  bool stagnation_condition = false;
};

struct TakeoffResult {
  bool found = false;
  std::optional<double> t;
  TakeoffEvidence evidence;
};

/// Tests the stagnation-then-growth signature on the best two-segment split
/// of the window: the later reciprocal slope must be at least slope_factor
/// times steeper and the earlier segment must be stagnant, its fitted
/// change across the segment staying below stagnation_fraction of its mean
/// reciprocal level. Among equal-cost splits the most balanced one is used.
TakeoffResult detect_takeoff(const TimeSeries& series, FitWindow window,
                             const TakeoffOptions& options = {});

/// Years between a departure and the trajectory's singularity.
double proximity(const HyperbolicModeld& model, double t_departure);

}  // namespace hypergrowth
