#pragma once

#include "hypergrowth/error.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace hypergrowth {

/// Neumaier-compensated running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    using std::abs;
    if (abs(sum_) >= abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const { return sum_ + carry_; }

 private:
  Scalar sum_{0};
  Scalar carry_{0};
};

/// Weighted least-squares line y = intercept + slope * x.
template <typename Scalar>
struct LineFit {
  Scalar intercept{};
  Scalar slope{};
  /// Weighted residual sum of squares.
  Scalar sse{};
  /// Weighted total sum of squares about the weighted mean of y.
  Scalar total_ss{};
  Scalar r_squared{};
  std::size_t n = 0;
};

/// Closed-form weighted simple linear regression.
///
/// x is recentred on the midpoint of its range and rescaled to unit weighted
/// variance before the normal equations are formed; the coefficients are
/// mapped back to the original x afterwards. All sums are compensated.
/// Throws FitError for fewer than two points or when every x is identical.
template <typename Scalar, typename XDerived, typename YDerived, typename WDerived>
LineFit<Scalar> fit_line(const Eigen::MatrixBase<XDerived>& x, const Eigen::MatrixBase<YDerived>& y,
                         const Eigen::MatrixBase<WDerived>& w) {
  const Eigen::Index n = x.size();
  if (n < 2) throw FitError("line fit needs at least 2 points");
  if (y.size() != n || w.size() != n) throw FitError("line fit inputs differ in length");

  const Scalar origin =
      (static_cast<Scalar>(x.minCoeff()) + static_cast<Scalar>(x.maxCoeff())) / Scalar(2);
  auto xs = [&](Eigen::Index i) { return static_cast<Scalar>(x[i]) - origin; };
  auto ys = [&](Eigen::Index i) { return static_cast<Scalar>(y[i]); };
  auto ws = [&](Eigen::Index i) { return static_cast<Scalar>(w[i]); };

  CompensatedSum<Scalar> sw, swx, swy;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(ws(i) > Scalar(0))) throw FitError("line fit weights must be positive");
    sw.add(ws(i));
    swx.add(ws(i) * xs(i));
    swy.add(ws(i) * ys(i));
  }
  const Scalar wsum = sw.value();
  const Scalar xbar = swx.value() / wsum;
  const Scalar ybar = swy.value() / wsum;

  CompensatedSum<Scalar> sxx;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar dx = xs(i) - xbar;
    sxx.add(ws(i) * dx * dx);
  }
  using std::sqrt;
  const Scalar spread = sqrt(sxx.value() / wsum);
  if (!(spread > Scalar(0))) throw FitError("singular design: all points share one year");

  CompensatedSum<Scalar> szz, szy, syy;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar z = (xs(i) - xbar) / spread;
    const Scalar dy = ys(i) - ybar;
    szz.add(ws(i) * z * z);
    szy.add(ws(i) * z * dy);
    syy.add(ws(i) * dy * dy);
  }
  const Scalar beta = szy.value() / szz.value();

  CompensatedSum<Scalar> sse;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar r = ys(i) - ybar - beta * (xs(i) - xbar) / spread;
    sse.add(ws(i) * r * r);
  }

  LineFit<Scalar> fit;
  fit.slope = beta / spread;
  fit.intercept = ybar - fit.slope * (origin + xbar);
  fit.sse = sse.value();
  fit.total_ss = syy.value();
  fit.n = static_cast<std::size_t>(n);
  if (fit.total_ss > Scalar(0)) {
    fit.r_squared = std::clamp(Scalar(1) - fit.sse / fit.total_ss, Scalar(0), Scalar(1));
  } else {
    fit.r_squared = Scalar(1);
  }
  return fit;
}

template <typename Scalar, typename XDerived, typename YDerived>
LineFit<Scalar> fit_line(const Eigen::MatrixBase<XDerived>& x,
                         const Eigen::MatrixBase<YDerived>& y) {
  return fit_line<Scalar>(x, y, Eigen::VectorXd::Ones(x.size()));
}

}  // namespace hypergrowth
