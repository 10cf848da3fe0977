#include "hypergrowth/reference.hpp"

#include "hypergrowth/error.hpp"

#include <fmt/format.h>

#include <array>

namespace hypergrowth::reference {
namespace {

constexpr auto kGdp = Unit::GdpBillions;
constexpr auto kPop = Unit::PopulationBillions;

const std::array<PublishedTrajectory, 14> kTrajectories{{
    {"world", {1.684e-2, 8.539e-6}, {1000, 1955}, 1972, 1955, 17, kGdp},
    {"western-europe", {9.859e-2, 5.112e-5}, {1500, 1900}, 1929, 1900, 29, kGdp},
    {"western-europe-4", {3.821e-1, 1.986e-4}, {1, 1875}, 1923, 1875, 48, kGdp},
    {"eastern-europe", {7.749e-1, 4.048e-4}, {1000, 1890}, 1915, 1890, 25, kGdp},
    {"former-ussr", {6.547e-1, 3.452e-4}, {1, 1870}, 1897, 1870, 27, kGdp},
    {"asia", {2.303e-2, 1.129e-5}, {1000, 1950}, 2040, 1950, 90, kGdp},
    {"africa-slow", {1.244e-1, 5.030e-5}, {1, 1820}, 2473, std::nullopt, std::nullopt, kGdp},
    {"africa-fast", {4.192e-1, 2.126e-4}, {1820, 1950}, 1972, 1950, 22, kGdp},
    {"latin-america-slow", {4.421e-1, 2.093e-4}, {1, 1500}, 2113, std::nullopt, std::nullopt,
     kGdp},
    {"latin-america-fast", {1.570e0, 8.224e-4}, {1600, 1870}, 1910, 1870, 40, kGdp},
    {"population-bc", {-2.282, 2.210e-2}, {-10000, -500}, std::nullopt, std::nullopt,
     std::nullopt, kPop},
    {"population-ad-500", {6.940, 3.448e-3}, {500, 1200}, std::nullopt, std::nullopt,
     std::nullopt, kPop},
    {"population-ad-1400", {9.123, 4.478e-3}, {1400, 1950}, std::nullopt, 1950, std::nullopt,
     kPop},
    {"population-ad", {7.061, 3.398e-3}, {500, 2015}, std::nullopt, std::nullopt, std::nullopt,
     kPop},
}};

constexpr std::size_t kGdpRows = 10;

const std::array<PublishedGrowthRate, 6> kGrowthRates{{
    {"population-bc", -10000, 1.010e-4},
    {"population-bc", -500, 2.520e-3},
    {"population-ad-500", 500, 6.610e-4},
    {"population-ad-500", 1200, 1.230e-3},
    {"population-ad-1400", 1400, 1.568e-3},
    {"population-ad-1400", 1950, 1.142e-2},
}};

const std::array<PublishedSpeedRatio, 3> kSpeedRatios{{
    {"population-bc", "population-ad", 6.5},
    {"africa-fast", "africa-slow", 4.2},
    {"latin-america-fast", "latin-america-slow", 3.9},
}};

// First billion around 1800, then 130, 29, 15, 13, 12 and 13 years per
// additional billion.
const std::array<Milestone, 7> kMilestones{{
    {1, 1800},
    {2, 1930},
    {3, 1959},
    {4, 1974},
    {5, 1987},
    {6, 1999},
    {7, 2012},
}};

}  // namespace

std::span<const PublishedTrajectory> gdp_trajectories() {
  return std::span(kTrajectories).first(kGdpRows);
}

std::span<const PublishedTrajectory> population_trajectories() {
  return std::span(kTrajectories).subspan(kGdpRows);
}

std::span<const PublishedTrajectory> all_trajectories() { return kTrajectories; }

const PublishedTrajectory& find(std::string_view region) {
  for (const auto& t : kTrajectories) {
    if (t.region == region) return t;
  }
  throw InputError(fmt::format("unknown trajectory '{}'", region));
}

std::span<const PublishedGrowthRate> population_growth_rates() { return kGrowthRates; }

std::span<const PublishedSpeedRatio> speed_ratios() { return kSpeedRatios; }

std::span<const Milestone> population_milestones() { return kMilestones; }

}  // namespace hypergrowth::reference
