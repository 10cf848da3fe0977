#pragma once

#include "hypergrowth/models.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <string_view>

namespace hypergrowth {

/// Quotient of two hyperbolic growth models, e.g. GDP over population:
///
///   R(t) = S_num(t) / S_den(t) = (a_den - k_den t) / (a_num - k_num t)
///
/// a hyperbola modulated by the linear reciprocal of the denominator.
template <typename Scalar>
struct RatioModel {
  HyperbolicModel<Scalar> numerator;
  HyperbolicModel<Scalar> denominator;
  Scalar t_lo{};
  Scalar t_hi{};
};

using RatioModeld = RatioModel<double>;

/// Validates that both models grow and that [t_lo, t_hi] stays below both
/// singularities.
template <typename Scalar>
RatioModel<Scalar> make_ratio(const HyperbolicModel<Scalar>& numerator,
                              const HyperbolicModel<Scalar>& denominator, Scalar t_lo,
                              Scalar t_hi) {
  if (!numerator.is_growth() || !denominator.is_growth()) {
    throw DomainError("ratio models need two growth models (k > 0)");
  }
  if (!(t_lo < t_hi)) throw DomainError("ratio domain must have t_lo < t_hi");
  const Scalar num_sing = singularity_time(numerator);
  const Scalar den_sing = singularity_time(denominator);
  if (!(t_hi < num_sing)) {
    throw DomainError(fmt::format("ratio domain end {} reaches the numerator singularity at {}",
                                  static_cast<double>(t_hi), static_cast<double>(num_sing)));
  }
  if (!(t_hi < den_sing)) {
    throw DomainError(fmt::format("ratio domain end {} reaches the denominator singularity at {}",
                                  static_cast<double>(t_hi), static_cast<double>(den_sing)));
  }
  return {numerator, denominator, t_lo, t_hi};
}

/// Domain [max(data starts), min(singularities) - 1].
template <typename Scalar>
RatioModel<Scalar> make_ratio_default_domain(const HyperbolicModel<Scalar>& numerator,
                                             const HyperbolicModel<Scalar>& denominator,
                                             Scalar numerator_start, Scalar denominator_start) {
  if (!numerator.is_growth() || !denominator.is_growth()) {
    throw DomainError("ratio models need two growth models (k > 0)");
  }
  const Scalar t_hi =
      std::min(singularity_time(numerator), singularity_time(denominator)) - Scalar(1);
  return make_ratio(numerator, denominator, std::max(numerator_start, denominator_start), t_hi);
}

namespace detail {
template <typename Scalar>
void check_ratio_domain(const RatioModel<Scalar>& r, Scalar t) {
  if (t >= singularity_time(r.numerator)) {
    throw DomainError(fmt::format("t = {} is at or beyond the numerator singularity at {}",
                                  static_cast<double>(t),
                                  static_cast<double>(singularity_time(r.numerator))));
  }
  if (t >= singularity_time(r.denominator)) {
    throw DomainError(fmt::format("t = {} is at or beyond the denominator singularity at {}",
                                  static_cast<double>(t),
                                  static_cast<double>(singularity_time(r.denominator))));
  }
  if (t < r.t_lo || t > r.t_hi) {
    throw DomainError(fmt::format("t = {} lies outside the ratio domain [{}, {}]",
                                  static_cast<double>(t), static_cast<double>(r.t_lo),
                                  static_cast<double>(r.t_hi)));
  }
}
}  // namespace detail

template <typename Scalar>
Scalar ratio_value(const RatioModel<Scalar>& r, Scalar t) {
  detail::check_ratio_domain(r, t);
  return r.denominator.reciprocal(t) / r.numerator.reciprocal(t);
}

/// d ln R / dt = k_num S_num - k_den S_den.
template <typename Scalar>
Scalar ratio_growth_rate(const RatioModel<Scalar>& r, Scalar t) {
  detail::check_ratio_domain(r, t);
  return growth_rate(r.numerator, t) - growth_rate(r.denominator, t);
}

enum class Monotonicity { Increasing, Decreasing, Constant };

inline std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::Increasing:
      return "increasing";
    case Monotonicity::Decreasing:
      return "decreasing";
    case Monotonicity::Constant:
      return "constant";
  }
  return "constant";
}

template <typename Scalar>
struct MonotonicityVerdict {
  Monotonicity monotone = Monotonicity::Constant;
  /// a_den k_num - a_num k_den; dR/dt = discriminant / (a_num - k_num t)^2.
  Scalar discriminant{};
};

template <typename Scalar>
MonotonicityVerdict<Scalar> ratio_monotonicity(const RatioModel<Scalar>& r) {
  MonotonicityVerdict<Scalar> v;
  v.discriminant = r.denominator.a * r.numerator.k - r.numerator.a * r.denominator.k;
  if (v.discriminant > Scalar(0)) {
    v.monotone = Monotonicity::Increasing;
  } else if (v.discriminant < Scalar(0)) {
    v.monotone = Monotonicity::Decreasing;
  } else {
    v.monotone = Monotonicity::Constant;
  }
  return v;
}

}  // namespace hypergrowth
