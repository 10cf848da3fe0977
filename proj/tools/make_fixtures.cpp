// Writes the CSV fixtures shipped under fixtures/ into a directory.
#include "hypergrowth/csv.hpp"
#include "hypergrowth/fixtures.hpp"
#include "hypergrowth/reference.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace hypergrowth;

namespace {

void write(const fs::path& dir, const std::string& name, const std::string& comment,
           const TimeSeries& series) {
  std::ofstream out(dir / name);
  out << "# " << comment << '\n';
  write_csv(out, series);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUTPUT_DIR\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  for (const auto& traj : reference::all_trajectories()) {
    write(dir, fmt::format("{}.csv", traj.region),
          fmt::format("{} a={} k={} range {}:{} step {}", traj.region, traj.model.a, traj.model.k,
                      traj.range.t_lo, traj.range.t_hi, fixtures::trajectory_step(traj.range)),
          fixtures::trajectory_series(traj));
  }
  const auto& world = reference::find("world");
  write(dir, "world_gdp.csv", "world GDP trajectory at 5-year steps",
        generate({world.model, world.range.t_lo, world.range.t_hi, 5.0, 0.0, 0, world.unit}));
  write(dir, "africa_composite.csv", "africa slow trajectory to 1801, fast trajectory from 1820",
        fixtures::africa_composite());
  write(dir, "population_bridge.csv", "world population AD 500-1200, linear bridge, AD 1400-1950",
        fixtures::population_bridge());
  write(dir, "stagnation_then_growth.csv", "flat 0.5 to 1750, hyperbolic rise to 2.5 in 1900",
        fixtures::stagnation_then_growth());
  write(dir, "world_exponential.csv", "exponential through the world GDP trajectory end points",
        fixtures::matched_exponential(reference::find("world")));

  std::ofstream ms(dir / "population_milestones.csv");
  ms << "# world population milestones, billions and approximate year reached\nlevel,year\n";
  for (const auto& m : reference::population_milestones()) {
    ms << format_shortest(m.level) << ',' << format_shortest(m.year) << '\n';
  }
  std::ofstream empty(dir / "empty.csv");
  empty << "year,value\n";
  return 0;
}
