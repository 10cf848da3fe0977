#include "support.hpp"

#include "hypergrowth/error.hpp"
#include "hypergrowth/models.hpp"
#include "hypergrowth/reference.hpp"
#include "hypergrowth/synthetic.hpp"

#include <doctest.h>

#include <cmath>

using namespace hypergrowth;
using hypergrowth::testing::CaseGenerator;
using hypergrowth::testing::rel_err;

namespace {
// Frozen values computed with 50-digit arithmetic from the parameters below.
constexpr HyperbolicModeld kPopAd{7.061, 3.398e-3};
constexpr HyperbolicModeld kPop1400{9.123, 4.478e-3};
constexpr HyperbolicModeld kWorldGdp{1.684e-2, 8.539e-6};
}  // namespace

TEST_CASE("hyperbolic values") {
  CHECK(rel_err(hyperbolic_value(kPopAd, 500.0), 0.18649757553) < 1e-10);
  CHECK(rel_err(growth_rate(kPopAd, 500.0), 6.33719e-4) < 1e-5);
  CHECK(rel_err(hyperbolic_value(kPop1400, 1950.0), 2.5581990279) < 1e-10);
  CHECK(rel_err(growth_rate(kPop1400, 1950.0), 0.011455615) < 1e-7);
  CHECK(rel_err(hyperbolic_value(kWorldGdp, 1900.0), 1623.6402013) < 1e-9);
}

TEST_CASE("singularity times") {
  CHECK(rel_err(singularity_time(kWorldGdp), 1972.1279) < 1e-7);
  CHECK(rel_err(singularity_time(kPop1400), 2037.2934) < 1e-7);
  CHECK(rel_err(singularity_time(reference::find("asia").model), 2039.8583) < 1e-7);
}

TEST_CASE("evaluation at or past the singularity names it") {
  const double ts = singularity_time(kPop1400);
  try {
    hyperbolic_value(kPop1400, ts + 1);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("t_sing") != std::string::npos);
  }
  CHECK_THROWS_AS(hyperbolic_value(kPop1400, ts), DomainError);
}

TEST_CASE("model kinds") {
  CHECK(HyperbolicModeld{1, 0.1}.kind() == GrowthKind::Growth);
  CHECK(HyperbolicModeld{1, -0.1}.kind() == GrowthKind::Decay);
  CHECK(HyperbolicModeld{1, 0}.kind() == GrowthKind::Constant);
  CHECK_THROWS_AS(singularity_time(HyperbolicModeld{1, -0.1}), DomainError);
  CHECK_THROWS_AS(singularity_time(HyperbolicModeld{1, 0}), DomainError);
  CHECK(hyperbolic_value(HyperbolicModeld{2, 0}, 1e6) == 0.5);
  CHECK(hyperbolic_value(HyperbolicModeld{1, -0.1}, 10.0) == doctest::Approx(0.5));
}

TEST_CASE("linear coefficient adapter") {
  const auto m = HyperbolicModeld::from_linear_coefficients(7.061, -3.398e-3);
  CHECK(m.a == 7.061);
  CHECK(m.k == 3.398e-3);
}

TEST_CASE("speed ratios and magnification") {
  CHECK(speed_ratio(reference::find("population-bc").model, kPopAd) == doctest::Approx(6.504).epsilon(1e-3));
  CHECK_THROWS_AS(speed_ratio(kPopAd, HyperbolicModeld{1, -1}), DomainError);
  CHECK(rel_err(reciprocal_residual_magnification(0.1, 0.11), 90.909090909) < 1e-10);
  CHECK_THROWS_AS(reciprocal_residual_magnification(0.0, 1.0), DomainError);
}

TEST_CASE("milestones") {
  CHECK(rel_err(milestone_time(kPop1400, 1.0), 1813.9794551) < 1e-10);
  CHECK(rel_err(milestone_time(kPop1400, 2.0), 1925.6364448) < 1e-10);
  CHECK(milestone_time(kPop1400, 0.1) < 0);
  CHECK_THROWS_AS(milestone_time(kPop1400, -1.0), DomainError);
  CHECK_THROWS_AS(milestone_time(HyperbolicModeld{1, 0}, 2.0), DomainError);
}

TEST_CASE("exponential model") {
  CHECK(rel_err(exponential_value(ExponentialModeld{2, 1}, 1.0), 5.43656365692) < 1e-11);
  CHECK(exponential_growth_rate(ExponentialModeld{2, 0.01}, 40.0) == 0.01);
}

TEST_CASE("derivative matches central differences") {
  CaseGenerator gen(101);
  for (int i = 0; i < 100; ++i) {
    const auto c = gen.next();
    const double t = gen.uniform(c.t_lo, c.t_hi);
    const long double h = 1e-4L;
    const auto ml = c.model.cast<long double>();
    const long double fd =
        (hyperbolic_value(ml, t + h) - hyperbolic_value(ml, t - h)) / (2 * h);
    CHECK(rel_err(hyperbolic_derivative(c.model, t), static_cast<double>(fd)) < 1e-6);
  }
}

TEST_CASE("reciprocal line and growth rate properties") {
  CaseGenerator gen(202);
  for (int i = 0; i < 100; ++i) {
    const auto c = gen.next();
    const double t1 = gen.uniform(c.t_lo, c.t_hi);
    const double t2 = gen.uniform(c.t_lo, c.t_hi);
    const double s1 = hyperbolic_value(c.model, t1);
    CHECK(rel_err(1.0 / s1, c.model.a - c.model.k * t1) < 1e-12);
    if (t1 < t2) CHECK(growth_rate(c.model, t1) < growth_rate(c.model, t2));
  }
}

TEST_CASE("milestone inverts evaluation") {
  CaseGenerator gen(303);
  for (int i = 0; i < 100; ++i) {
    const auto c = gen.next();
    const double t = gen.uniform(c.t_lo, c.t_hi);
    const double level = hyperbolic_value(c.model, t);
    const double back = milestone_time(c.model, level);
    CHECK(std::abs(back - t) <= 1e-12 * std::max(1.0, std::abs(t)) * 1e3);
    CHECK(rel_err(hyperbolic_value(c.model, back), level) < 1e-9);
  }
}

TEST_CASE("scale and shift equivariance of the model") {
  CaseGenerator gen(404);
  for (int i = 0; i < 100; ++i) {
    const auto c = gen.next();
    const double scale = std::pow(10.0, gen.uniform(-6, 6));
    const double tau = gen.uniform(-5000, 5000);
    const double t = gen.uniform(c.t_lo, c.t_hi);
    const auto scaled = c.model.scaled(scale);
    const auto shifted = c.model.shifted(tau);
    CHECK(rel_err(hyperbolic_value(scaled, t), scale * hyperbolic_value(c.model, t)) < 1e-9);
    CHECK(rel_err(singularity_time(scaled), singularity_time(c.model)) < 1e-12);
    CHECK(rel_err(hyperbolic_value(shifted, t + tau), hyperbolic_value(c.model, t)) < 1e-9);
    CHECK(rel_err(singularity_time(shifted), singularity_time(c.model) + tau) < 1e-9);
  }
}

TEST_CASE("generator grid and determinism") {
  CHECK(sample_grid(1400, 1950, 10).size() == 56);
  CHECK(sample_grid(0, 1, 0.3).size() == 4);
  SyntheticSpec spec{kPop1400, 1400, 1950, 10, 0.02, 7, Unit::PopulationBillions};
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.values() == b.values());
  spec.seed = 8;
  CHECK(generate(spec).values() != a.values());
  spec.noise_rel = 0;
  const auto clean = generate(spec);
  CHECK(clean[55].value == hyperbolic_value(kPop1400, 1950.0));
}

TEST_CASE("generator refuses a grid through the singularity") {
  SyntheticSpec spec{kPop1400, 1400, 2100, 10};
  CHECK_THROWS_AS(generate(spec), DomainError);
  spec.t_end = 1300;
  CHECK_THROWS_AS(generate(spec), InputError);
}
