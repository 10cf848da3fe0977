#include "hypergrowth/fitting.hpp"

#include <cmath>
#include <limits>

namespace hypergrowth {

std::string_view to_string(Weighting weighting) {
  return weighting == Weighting::Uniform ? "uniform" : "direct-space-approx";
}

std::string_view to_string(Preference preference) {
  switch (preference) {
    case Preference::Hyperbolic:
      return "hyperbolic";
    case Preference::Exponential:
      return "exponential";
    case Preference::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

Eigen::VectorXd hyperbolic_weights(const TimeSeries& series, Weighting weighting) {
  if (weighting == Weighting::Uniform) {
    return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(series.size()));
  }
  // Normalised by the largest value so S^4 cannot overflow.
  const double peak = series.values().maxCoeff();
  return (series.values() / peak).array().pow(4.0).matrix();
}

FitDiagnostics direct_diagnostics(const HyperbolicModeld& model, const TimeSeries& series) {
  // (S - S_model) / S_model = S (a - k t) - 1 stays defined past the singularity.
  auto rel = [&](TimePoint p) { return p.value * model.reciprocal(p.year) - 1.0; };
  auto value = [&](TimePoint p) {
    const double d = model.reciprocal(p.year);
    return d > 0.0 ? 1.0 / d : std::numeric_limits<double>::infinity();
  };
  FitDiagnostics d;
  d.n = series.size();
  CompensatedSum<double> sse;
  bool finite = true;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto p = series[i];
    const double r_rel = rel(p);
    if (i == 0 || std::abs(r_rel) > d.max_rel_resid) {
      d.max_rel_resid = std::abs(r_rel);
      d.max_rel_resid_year = p.year;
    }
    const double s_model = value(p);
    if (!std::isfinite(s_model)) {
      finite = false;
      continue;
    }
    sse.add((p.value - s_model) * (p.value - s_model));
  }
  d.sse_direct = finite ? sse.value() : std::numeric_limits<double>::infinity();
  return d;
}

FitDiagnostics direct_diagnostics(const ExponentialModeld& model, const TimeSeries& series) {
  FitDiagnostics d;
  d.n = series.size();
  CompensatedSum<double> sse;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto p = series[i];
    const double s_model = exponential_value(model, p.year);
    const double r_rel = (p.value - s_model) / s_model;
    if (i == 0 || std::abs(r_rel) > d.max_rel_resid) {
      d.max_rel_resid = std::abs(r_rel);
      d.max_rel_resid_year = p.year;
    }
    sse.add((p.value - s_model) * (p.value - s_model));
  }
  d.sse_direct = sse.value();
  return d;
}

FitReport fit_hyperbolic(const TimeSeries& series, Weighting weighting) {
  if (series.size() < 2) throw FitError("hyperbolic fit needs at least 2 points");
  const Eigen::VectorXd reciprocal = series.values().cwiseInverse();
  const auto line =
      fit_line<double>(series.years(), reciprocal, hyperbolic_weights(series, weighting));
  const HyperbolicModeld model{line.intercept, -line.slope};

  FitReport report;
  report.model = model;
  report.window = {series.front().year, series.back().year};
  report.weighting = weighting;
  report.diagnostics = direct_diagnostics(model, series);
  report.diagnostics.sse_transform = line.sse;
  report.diagnostics.r_squared = line.r_squared;
  return report;
}

FitReport fit_exponential(const TimeSeries& series) {
  if (series.size() < 2) throw FitError("exponential fit needs at least 2 points");
  const Eigen::VectorXd logs = series.values().array().log();
  const auto line = fit_line<double>(series.years(), logs);
  const ExponentialModeld model{std::exp(line.intercept), line.slope};

  FitReport report;
  report.model = model;
  report.window = {series.front().year, series.back().year};
  report.weighting = Weighting::Uniform;
  report.diagnostics = direct_diagnostics(model, series);
  report.diagnostics.sse_transform = line.sse;
  report.diagnostics.r_squared = line.r_squared;
  return report;
}

ModelComparison compare_fits(const FitReport& hyperbolic, const FitReport& exponential,
                             const TimeSeries& series) {
  ModelComparison c;
  c.hyperbolic = hyperbolic;
  c.exponential = exponential;
  c.sse_direct_hyp = hyperbolic.diagnostics.sse_direct;
  c.sse_direct_exp = exponential.diagnostics.sse_direct;

  const double peak = series.values().maxCoeff();
  const double tie = static_cast<double>(series.size()) * (1e-9 * peak) * (1e-9 * peak);
  const bool both_infinite = std::isinf(c.sse_direct_hyp) && std::isinf(c.sse_direct_exp);
  if (both_infinite || std::abs(c.sse_direct_hyp - c.sse_direct_exp) <= tie) {
    c.preferred = Preference::Indeterminate;
  } else if (c.sse_direct_hyp < c.sse_direct_exp) {
    c.preferred = Preference::Hyperbolic;
  } else {
    c.preferred = Preference::Exponential;
  }

  if (c.sse_direct_hyp > 0.0) {
    c.ratio = c.sse_direct_exp / c.sse_direct_hyp;
  } else if (c.sse_direct_exp > 0.0) {
    c.ratio = std::numeric_limits<double>::infinity();
  } else {
    c.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

ModelComparison compare_models(const TimeSeries& series) {
  const auto hyperbolic = fit_hyperbolic(series);
  const auto exponential = fit_exponential(series);
  return compare_fits(hyperbolic, exponential, series);
}

}  // namespace hypergrowth
