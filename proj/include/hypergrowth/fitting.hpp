#pragma once

#include "hypergrowth/models.hpp"
#include "hypergrowth/regression.hpp"
#include "hypergrowth/timeseries.hpp"

#include <Eigen/Core>

#include <string_view>
#include <variant>

namespace hypergrowth {

/// How reciprocal-space residuals are weighted in fit_hyperbolic.
///
/// Uniform minimises sum (1/S - (a - k t))^2. DirectSpaceApprox weights each
/// point by S^4, since a size residual dS appears in reciprocal space as
/// roughly dS / S^2; this approximates least squares on S itself.
enum class Weighting { Uniform, DirectSpaceApprox };

std::string_view to_string(Weighting weighting);

struct FitDiagnostics {
  /// Weighted residual sum of squares in the space the line was fitted in.
  double sse_transform = 0.0;
  /// Residual sum of squares of S itself; +inf when the model is not
  /// evaluable at some data year (e.g. past its singularity).
  double sse_direct = 0.0;
  double r_squared = 0.0;
  /// max |S_data - S_model| / S_model and the year where it occurs.
  double max_rel_resid = 0.0;
  double max_rel_resid_year = 0.0;
  std::size_t n = 0;
};

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

enum class ModelKind { Hyperbolic, Exponential };

struct FitReport {
  std::variant<HyperbolicModeld, ExponentialModeld> model;
  FitWindow window;
  FitDiagnostics diagnostics;
  Weighting weighting = Weighting::Uniform;

  ModelKind kind() const {
    return std::holds_alternative<HyperbolicModeld>(model) ? ModelKind::Hyperbolic
                                                           : ModelKind::Exponential;
  }
  const HyperbolicModeld& hyperbolic() const { return std::get<HyperbolicModeld>(model); }
  const ExponentialModeld& exponential() const { return std::get<ExponentialModeld>(model); }
};

/// Reciprocal-space weights for a hyperbolic fit.
Eigen::VectorXd hyperbolic_weights(const TimeSeries& series, Weighting weighting);

/// Hyperbolic parameters from the reciprocal line, accumulated in Scalar.
/// fit_hyperbolic_model<long double> serves as an extended-precision
/// reference for the double path.
template <typename Scalar>
HyperbolicModel<Scalar> fit_hyperbolic_model(const TimeSeries& series,
                                             Weighting weighting = Weighting::Uniform) {
  if (series.size() < 2) throw FitError("hyperbolic fit needs at least 2 points");
  const Eigen::VectorXd reciprocal = series.values().cwiseInverse();
  const auto line =
      fit_line<Scalar>(series.years(), reciprocal, hyperbolic_weights(series, weighting));
  return {line.intercept, -line.slope};
}

/// Exponential parameters from the line through (t, ln S).
template <typename Scalar>
ExponentialModel<Scalar> fit_exponential_model(const TimeSeries& series) {
  if (series.size() < 2) throw FitError("exponential fit needs at least 2 points");
  const Eigen::VectorXd logs = series.values().array().log();
  const auto line = fit_line<Scalar>(series.years(), logs);
  using std::exp;
  return {exp(line.intercept), line.slope};
}

/// Ordinary least squares of 1/S on t; k is the negated slope.
FitReport fit_hyperbolic(const TimeSeries& series, Weighting weighting = Weighting::Uniform);

/// Ordinary least squares of ln S on t.
FitReport fit_exponential(const TimeSeries& series);

/// Size-space diagnostics of an arbitrary model against a series.
FitDiagnostics direct_diagnostics(const HyperbolicModeld& model, const TimeSeries& series);
FitDiagnostics direct_diagnostics(const ExponentialModeld& model, const TimeSeries& series);

enum class Preference { Hyperbolic, Exponential, Indeterminate };

std::string_view to_string(Preference preference);

struct ModelComparison {
  Preference preferred = Preference::Indeterminate;
  double sse_direct_hyp = 0.0;
  double sse_direct_exp = 0.0;
  /// sse_direct_exp / sse_direct_hyp; +inf when only the hyperbolic fit is
  /// exact, NaN when the comparison is indeterminate with both exact.
  double ratio = 0.0;
  FitReport hyperbolic;
  FitReport exponential;
};

/// Verdict from two finished fits of the same series. SSE values closer
/// than n (1e-9 max S)^2 count as a tie and yield Indeterminate.
ModelComparison compare_fits(const FitReport& hyperbolic, const FitReport& exponential,
                             const TimeSeries& series);

/// Fits both models and compares them on size-space SSE.
ModelComparison compare_models(const TimeSeries& series);

}  // namespace hypergrowth
