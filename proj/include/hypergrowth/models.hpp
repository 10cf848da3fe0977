#pragma once

#include "hypergrowth/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <string_view>

namespace hypergrowth {

enum class GrowthKind { Growth, Decay, Constant };

inline std::string_view to_string(GrowthKind kind) {
  switch (kind) {
    case GrowthKind::Growth:
      return "growth";
    case GrowthKind::Decay:
      return "decay";
    case GrowthKind::Constant:
      return "constant";
  }
  return "constant";
}

/// First-order hyperbolic model S(t) = 1 / (a - k t).
///
/// The reciprocal 1/S is the straight line a - k t. For k > 0 the model
/// grows and diverges at t = a / k; k < 0 describes decay and k == 0 is the
/// degenerate constant 1/a, reported through kind() rather than rejected.
template <typename Scalar>
struct HyperbolicModel {
  Scalar a{};
  Scalar k{};

  GrowthKind kind() const {
    if (k > Scalar(0)) return GrowthKind::Growth;
    if (k < Scalar(0)) return GrowthKind::Decay;
    return GrowthKind::Constant;
  }
  bool is_growth() const { return kind() == GrowthKind::Growth; }

  /// a - k t, the value of the reciprocal line.
  Scalar reciprocal(Scalar t) const { return a - k * t; }

  template <typename Other>
  HyperbolicModel<Other> cast() const {
    return {static_cast<Other>(a), static_cast<Other>(k)};
  }

  /// Equivalent model after years are shifted by tau (t' = t + tau).
  HyperbolicModel shifted(Scalar tau) const { return {a + k * tau, k}; }
  /// Equivalent model after sizes are multiplied by c.
  HyperbolicModel scaled(Scalar c) const { return {a / c, k / c}; }

  /// Adapter for the (a0 + a1 t)^-1 parameterisation, where a1 = -k.
  static HyperbolicModel from_linear_coefficients(Scalar a0, Scalar a1) { return {a0, -a1}; }
};

/// Exponential model S(t) = a exp(k t) with a > 0.
template <typename Scalar>
struct ExponentialModel {
  Scalar a{1};
  Scalar k{};
};

using HyperbolicModeld = HyperbolicModel<double>;
using ExponentialModeld = ExponentialModel<double>;

template <typename Scalar>
Scalar singularity_time(const HyperbolicModel<Scalar>& m) {
  if (!m.is_growth()) {
    throw DomainError(fmt::format("model with k = {} has no finite-time singularity",
                                  static_cast<double>(m.k)));
  }
  return m.a / m.k;
}

template <typename Scalar>
Scalar hyperbolic_value(const HyperbolicModel<Scalar>& m, Scalar t) {
  const Scalar denom = m.a - m.k * t;
  if (!(denom > Scalar(0))) {
    if (m.is_growth()) {
      throw DomainError(fmt::format("t = {} is at or beyond the singularity t_sing = {}",
                                    static_cast<double>(t), static_cast<double>(m.a / m.k)));
    }
    throw DomainError(fmt::format("model is not positive at t = {} (a - k t = {})",
                                  static_cast<double>(t), static_cast<double>(denom)));
  }
  return Scalar(1) / denom;
}

/// Hyperbolic growth rate (1/S) dS/dt = k S.
template <typename Scalar>
Scalar growth_rate(const HyperbolicModel<Scalar>& m, Scalar t) {
  return m.k * hyperbolic_value(m, t);
}

/// dS/dt = k S^2.
template <typename Scalar>
Scalar hyperbolic_derivative(const HyperbolicModel<Scalar>& m, Scalar t) {
  const Scalar s = hyperbolic_value(m, t);
  return m.k * s * s;
}

/// Ratio k1 / k2 of two growth models; 6.5 means m1 grows 6.5 times faster.
template <typename Scalar>
Scalar speed_ratio(const HyperbolicModel<Scalar>& m1, const HyperbolicModel<Scalar>& m2) {
  if (!m1.is_growth() || !m2.is_growth()) {
    throw DomainError("speed ratio requires two growth models (k > 0)");
  }
  return m1.k / m2.k;
}

/// Year at which S(t) first equals level.
template <typename Scalar>
Scalar milestone_time(const HyperbolicModel<Scalar>& m, Scalar level) {
  if (!m.is_growth()) throw DomainError("milestones require a growth model (k > 0)");
  if (!(level > Scalar(0))) {
    throw DomainError(fmt::format("milestone level must be positive, got {}",
                                  static_cast<double>(level)));
  }
  // S runs over (0, inf) as t runs up to the singularity, so every positive
  // level is crossed exactly once; BC crossings simply give negative years.
  const Scalar inv = Scalar(1) / level;
  return (m.a - inv) / m.k;
}

/// Factor 1/(s1 s2) by which a size difference is scaled in reciprocal
/// space: 1/s2 - 1/s1 = -(s2 - s1) / (s1 s2).
template <typename Scalar>
Scalar reciprocal_residual_magnification(Scalar s1, Scalar s2) {
  if (!(s1 > Scalar(0)) || !(s2 > Scalar(0))) {
    throw DomainError("reciprocal magnification needs positive sizes");
  }
  return Scalar(1) / (s1 * s2);
}

template <typename Scalar>
Scalar exponential_value(const ExponentialModel<Scalar>& m, Scalar t) {
  using std::exp;
  return m.a * exp(m.k * t);
}

template <typename Scalar>
Scalar exponential_growth_rate(const ExponentialModel<Scalar>& m, Scalar /*t*/) {
  return m.k;
}

}  // namespace hypergrowth
