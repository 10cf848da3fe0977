#include "hypergrowth/segmentation.hpp"

#include "hypergrowth/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace hypergrowth {

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::ShiftToFasterHyperbolic:
      return "shift-to-faster-hyperbolic";
    case TransitionKind::ShiftToSlowerHyperbolic:
      return "shift-to-slower-hyperbolic";
    case TransitionKind::DiversionSlower:
      return "diversion-slower";
    case TransitionKind::DiversionFaster:
      return "diversion-faster";
    case TransitionKind::TakeoffCandidate:
      return "takeoff-candidate";
  }
  return "takeoff-candidate";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::Slower ? "slower" : "faster";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Residual sums below this fraction of a segment's total sum of squares are
// rounding noise, not lack of fit.
constexpr double kZeroSseFraction = 1e-11;

/// Running least-squares line over points appended one at a time.
class IncrementalLine {
 public:
  void add(double x, double y) {
    ++n_;
    const double dx = x - mean_x_;
    mean_x_ += dx / static_cast<double>(n_);
    const double dy = y - mean_y_;
    mean_y_ += dy / static_cast<double>(n_);
    cxx_ += dx * (x - mean_x_);
    cxy_ += dx * (y - mean_y_);
    cyy_ += dy * (y - mean_y_);
  }

  double sse() const {
    const double raw = cxx_ > 0.0 ? cyy_ - cxy_ * cxy_ / cxx_ : cyy_;
    if (raw <= kZeroSseFraction * cyy_) return 0.0;
    return raw;
  }

 private:
  std::size_t n_ = 0;
  double mean_x_ = 0.0;
  double mean_y_ = 0.0;
  double cxx_ = 0.0;
  double cxy_ = 0.0;
  double cyy_ = 0.0;
};

/// cost(i, j) is the reciprocal-space SSE of points i..j inclusive, or +inf
/// for runs shorter than the minimum segment size.
class CostTable {
 public:
  CostTable(const TimeSeries& series, std::size_t min_points, unsigned threads)
      : n_(series.size()), cost_(n_ * n_, kInf) {
    // Years are recentred on the series midpoint for conditioning.
    const double origin = 0.5 * (series.front().year + series.back().year);
    auto fill_row = [&](std::size_t i) {
      IncrementalLine line;
      for (std::size_t j = i; j < n_; ++j) {
        const auto p = series[j];
        line.add(p.year - origin, 1.0 / p.value);
        if (j + 1 - i >= min_points) cost_[i * n_ + j] = line.sse();
      }
    };
    if (threads <= 1 || n_ < 64) {
      for (std::size_t i = 0; i < n_; ++i) fill_row(i);
      return;
    }
    // Rows are independent; each is written by exactly one worker, so the
    // table does not depend on scheduling.
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < n_; i += threads) fill_row(i);
      });
    }
    for (auto& t : workers) t.join();
  }

  double operator()(std::size_t i, std::size_t j) const { return cost_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> cost_;
};

std::vector<TransitionEvent> build_transitions(const TimeSeries& series,
                                               const std::vector<Segment>& segments) {
  std::vector<TransitionEvent> events;
  std::optional<std::size_t> last_growth;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!segments[s].fit.hyperbolic().is_growth()) continue;
    if (last_growth) {
      auto event = classify_transition(segments[*last_growth], segments[s]);
      if (s - *last_growth > 1) {
        event.evidence.note = fmt::format("{} non-growth segment(s) inside the transition window",
                                          s - *last_growth - 1);
      }
      events.push_back(std::move(event));
    }
    last_growth = s;
  }

  if (last_growth && *last_growth + 1 < segments.size()) {
    const Segment& anchor = segments[*last_growth];
    const auto& model = anchor.fit.hyperbolic();
    const std::size_t tail_first = segments[*last_growth + 1].first;
    double mean_rel = 0.0;
    for (std::size_t i = tail_first; i < series.size(); ++i) {
      const auto p = series[i];
      mean_rel += p.value * model.reciprocal(p.year) - 1.0;
    }
    mean_rel /= static_cast<double>(series.size() - tail_first);

    TransitionEvent event;
    event.kind = mean_rel < 0.0 ? TransitionKind::DiversionSlower : TransitionKind::DiversionFaster;
    event.window = {anchor.window.t_hi, series.back().year};
    event.t_estimate = series[tail_first].year;
    event.evidence.slope_before = model.k;
    event.evidence.slope_after = std::numeric_limits<double>::quiet_NaN();
    event.evidence.score = mean_rel;
    event.evidence.note = "trailing data leave the last growth trajectory";
    events.push_back(std::move(event));
  }
  return events;
}

}  // namespace

Segment make_segment(const TimeSeries& series, std::size_t first, std::size_t count) {
  Segment seg;
  seg.first = first;
  seg.count = count;
  seg.fit = fit_hyperbolic(series.slice(first, count));
  seg.window = seg.fit.window;
  return seg;
}

SegmentationResult segment(const TimeSeries& series, const SegmentationOptions& options) {
  const std::size_t n = series.size();
  const std::size_t min_points = std::max<std::size_t>(options.min_segment_points, 2);
  if (options.max_segments < 1) throw InputError("max_segments must be at least 1");
  if (n < min_points) {
    throw InputError(fmt::format("segmentation needs at least {} points, series has {}",
                                 min_points, n));
  }
  const std::size_t max_segments = std::min(options.max_segments, n / min_points);

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const CostTable cost(series, min_points, threads);

  double penalty = 0.0;
  if (options.penalty) {
    if (!(*options.penalty >= 0.0)) throw InputError("penalty must be non-negative");
    penalty = *options.penalty;
  } else if (n > 2) {
    const double variance = cost(0, n - 1) / static_cast<double>(n - 2);
    penalty = 2.0 * variance * std::log(static_cast<double>(n));
  }

  // best[s][j]: lowest SSE covering points [0, j) with s + 1 segments.
  std::vector<std::vector<double>> best(max_segments, std::vector<double>(n + 1, kInf));
  std::vector<std::vector<std::size_t>> start(max_segments, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t j = min_points; j <= n; ++j) best[0][j] = cost(0, j - 1);
  for (std::size_t s = 1; s < max_segments; ++s) {
    for (std::size_t j = (s + 1) * min_points; j <= n; ++j) {
      for (std::size_t i = s * min_points; i + min_points <= j; ++i) {
        const double candidate = best[s - 1][i] + cost(i, j - 1);
        if (candidate < best[s][j]) {
          best[s][j] = candidate;
          start[s][j] = i;
        }
      }
    }
  }

  SegmentationResult result;
  result.penalty_used = penalty;
  std::size_t chosen = 0;
  double chosen_cost = kInf;
  for (std::size_t s = 0; s < max_segments; ++s) {
    result.sse_by_breakpoints.push_back(best[s][n]);
    const double total = best[s][n] + penalty * static_cast<double>(s);
    if (total < chosen_cost) {
      chosen_cost = total;
      chosen = s;
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> bounds;
  for (std::size_t s = chosen + 1, j = n; s-- > 0;) {
    const std::size_t i = s == 0 ? 0 : start[s][j];
    bounds.emplace_back(i, j - i);
    j = i;
  }
  std::reverse(bounds.begin(), bounds.end());

  for (const auto& [first, count] : bounds) {
    result.segments.push_back(make_segment(series, first, count));
    result.total_sse += result.segments.back().fit.diagnostics.sse_transform;
  }
  result.transitions = build_transitions(series, result.segments);
  return result;
}

TransitionEvent classify_transition(const Segment& before, const Segment& after) {
  if (before.window.t_hi > after.window.t_lo) {
    throw InputError(fmt::format("segments overlap: first ends at {}, second starts at {}",
                                 before.window.t_hi, after.window.t_lo));
  }
  const double k_before = before.fit.hyperbolic().k;
  const double k_after = after.fit.hyperbolic().k;

  TransitionEvent event;
  event.window = {before.window.t_hi, after.window.t_lo};
  event.t_estimate = 0.5 * (event.window.t_lo + event.window.t_hi);
  event.evidence.slope_before = k_before;
  event.evidence.slope_after = k_after;
  event.kind = k_after >= k_before ? TransitionKind::ShiftToFasterHyperbolic
                                   : TransitionKind::ShiftToSlowerHyperbolic;
  if (k_before > 0.0 && k_after > 0.0) {
    event.evidence.score = std::max(k_before, k_after) / std::min(k_before, k_after);
  } else {
    event.evidence.score = std::numeric_limits<double>::quiet_NaN();
    event.evidence.note = "k ratio undefined: a neighbouring segment is not growing";
  }
  if (k_after == k_before) event.evidence.note = "degenerate: equal slopes, reported as faster";
  return event;
}

Departure detect_departure(const TimeSeries& series, FitWindow fit_window, double threshold_rel) {
  if (!(threshold_rel >= 0.0)) throw InputError("departure threshold must be non-negative");
  const TimeSeries fitted = window(series, fit_window.t_lo, fit_window.t_hi);
  if (fitted.size() < 4) {
    throw InputError(fmt::format("fit window [{}, {}] holds {} points; need at least 4",
                                 fit_window.t_lo, fit_window.t_hi, fitted.size()));
  }
  Departure out;
  out.fit = fit_hyperbolic(fitted);
  const auto& model = out.fit.hyperbolic();

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto p = series[i];
    if (p.year > fit_window.t_hi) {
      out.residuals.push_back({p.year, p.value * model.reciprocal(p.year) - 1.0});
    }
  }
  if (out.residuals.empty()) {
    throw InputError(fmt::format("no points after the fit window ending at {}", fit_window.t_hi));
  }

  // Walk back from the end while the run stays beyond the threshold with
  // one sign; the earliest member of that run is the departure.
  const auto& r = out.residuals;
  const double sign = r.back().value < 0.0 ? -1.0 : 1.0;
  std::optional<std::size_t> run_start;
  for (std::size_t i = r.size(); i-- > 0;) {
    if (std::abs(r[i].value) > threshold_rel && r[i].value * sign > 0.0) {
      run_start = i;
    } else {
      break;
    }
  }
  if (run_start) {
    out.t_departure = r[*run_start].year;
    out.direction = sign < 0.0 ? Direction::Slower : Direction::Faster;
  }
  return out;
}

TakeoffResult detect_takeoff(const TimeSeries& series, FitWindow window_bounds,
                             const TakeoffOptions& options) {
  const TimeSeries data = window(series, window_bounds.t_lo, window_bounds.t_hi);
  const std::size_t n = data.size();
  const std::size_t min_points = std::max<std::size_t>(options.min_segment_points, 2);
  if (n < 2 * min_points || n < 8) {
    throw InputError(fmt::format("takeoff search needs at least {} points in the window, found {}",
                                 std::max<std::size_t>(2 * min_points, 8), n));
  }

  const CostTable cost(data, min_points, 1);
  std::size_t split = 0;
  double best = kInf;
  double best_balance = kInf;
  for (std::size_t s = min_points; s + min_points <= n; ++s) {
    const double total = cost(0, s - 1) + cost(s, n - 1);
    const double balance = std::abs(static_cast<double>(s) - 0.5 * static_cast<double>(n));
    if (total < best || (total == best && balance < best_balance)) {
      best = total;
      best_balance = balance;
      split = s;
    }
  }

  const Segment before = make_segment(data, 0, split);
  const Segment after = make_segment(data, split, n - split);

  TakeoffResult result;
  auto& ev = result.evidence;
  ev.before = before.window;
  ev.after = after.window;
  ev.k_before = before.fit.hyperbolic().k;
  ev.k_after = after.fit.hyperbolic().k;

  const double kb = std::abs(ev.k_before);
  const double ka = std::abs(ev.k_after);
  if (kb > 0.0) {
    ev.slope_factor = ka / kb;
  } else {
    ev.slope_factor = ka > 0.0 ? kInf : 1.0;
  }
  const double mean_level =
      data.values().head(static_cast<Eigen::Index>(split)).cwiseInverse().mean();
  ev.stagnation_ratio = kb * (before.window.t_hi - before.window.t_lo) / mean_level;

  ev.slope_condition = ev.slope_factor >= options.slope_factor;
  ev.stagnation_condition = ev.stagnation_ratio < options.stagnation_fraction;
  result.found = ev.slope_condition && ev.stagnation_condition;
  if (result.found) result.t = 0.5 * (before.window.t_hi + after.window.t_lo);
  return result;
}

double proximity(const HyperbolicModeld& model, double t_departure) {
  const double t_sing = singularity_time(model);
  if (t_departure > t_sing) {
    throw DomainError(fmt::format("departure at {} lies after the singularity at {}", t_departure,
                                  t_sing));
  }
  return t_sing - t_departure;
}

}  // namespace hypergrowth
