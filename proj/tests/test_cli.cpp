#include "support.hpp"

#include "hypergrowth/cli.hpp"
#include "hypergrowth/models.hpp"
#include "hypergrowth/report.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using hypergrowth::testing::rel_err;

namespace {

const fs::path kFixtures = HG_FIXTURE_DIR;

std::string fixture(const char* name) { return (kFixtures / name).string(); }

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = hypergrowth::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Scratch {
 public:
  explicit Scratch(const std::string& name)
      : dir_(fs::temp_directory_path() / ("hypergrowth-cli-" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string operator/(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

void check_report(const std::string& path) {
  const auto report = nlohmann::json::parse(slurp(path));
  const auto errors = hypergrowth::validate_report(report);
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
}

}  // namespace

TEST_CASE("fit recovers the world GDP trajectory") {
  Scratch tmp("fit");
  const auto r = run({"fit", "--input", fixture("world_gdp.csv"), "--window", "1000:1955", "--json",
                      tmp / "fit.json", "--plot-data", tmp / "plots"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("0.01684") != std::string::npos);
  CHECK(r.out.find("8.539e-06") != std::string::npos);
  CHECK(r.out.find("1972") != std::string::npos);
  check_report(tmp / "fit.json");
  const auto report = nlohmann::json::parse(slurp(tmp / "fit.json"));
  const double a = report["fits"][0]["a"];
  const double k = report["fits"][0]["k"];
  const hypergrowth::HyperbolicModeld m{a, k};

  std::istringstream direct(slurp(tmp / "plots/direct.csv"));
  std::string line;
  std::getline(direct, line);
  CHECK(line == "t,value,model");
  int rows = 0;
  while (std::getline(direct, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.rfind(',');
    const double t = std::stod(line.substr(0, c1));
    CHECK(rel_err(std::stod(line.substr(c2 + 1)), hypergrowth::hyperbolic_value(m, t)) <= 1e-12);
    ++rows;
  }
  CHECK(rows == 192);
  CHECK(slurp(tmp / "plots/reciprocal.csv").rfind("t,reciprocal_value,reciprocal_model\n", 0) == 0);
}

TEST_CASE("fit with a departure year reports the proximity") {
  Scratch tmp("fit-departure");
  const auto r = run({"fit", "--input", fixture("world_gdp.csv"), "--departure", "1955", "--json",
                      tmp / "r.json"});
  REQUIRE(r.status == 0);
  check_report(tmp / "r.json");
  const auto report = nlohmann::json::parse(slurp(tmp / "r.json"));
  REQUIRE(report["singularities"].size() == 1);
  CHECK(report["singularities"][0]["proximity"].get<double>() == doctest::Approx(17.13).epsilon(1e-3));
}

TEST_CASE("exit statuses") {
  Scratch tmp("status");
  CHECK(run({"fit", "--input", fixture("empty.csv")}).status == 1);
  CHECK(run({"fit", "--input", fixture("empty.csv")}).err.find("empty series") != std::string::npos);
  CHECK(run({"fit", "--input", tmp / "missing.csv"}).status == 1);
  CHECK(run({"fit", "--input", fixture("world_gdp.csv"), "--window", "1955:1000"}).status == 1);
  CHECK(run({"fit", "--input", fixture("world_gdp.csv"), "--window", "soon"}).status == 2);
  CHECK(run({"fit", "--input", fixture("world_gdp.csv"), "--bogus"}).status == 2);
  CHECK(run({"fit"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"explode"}).status == 2);
  CHECK(run({"fit", "--input", fixture("world_gdp.csv"), "--unit", "furlongs"}).status == 2);
  CHECK(run({"segment", "--input", fixture("world_gdp.csv"), "--max-segments", "0"}).status == 2);
  CHECK(run({"takeoff", "--input", fixture("africa_composite.csv"), "--window", "1820:1950"}).status == 1);
  CHECK(run({"generate", "--a", "9.123", "--k", "4.478e-3", "--from", "1400", "--to", "2100"}).status == 1);
  CHECK(run({"generate", "--a", "9.123", "--from", "1400", "--to", "1950"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("segment") {
  Scratch tmp("segment");
  SUBCASE("Africa composite") {
    const auto r = run({"segment", "--input", fixture("africa_composite.csv"), "--json", tmp / "a.json",
                        "--plot-data", tmp / "plots"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("2 segment(s)") != std::string::npos);
    CHECK(r.out.find("k ratio 4.227") != std::string::npos);
    check_report(tmp / "a.json");
    CHECK(fs::exists(tmp / "plots/segments.csv"));
  }
  SUBCASE("single trajectory") {
    const auto r = run({"segment", "--input", fixture("asia.csv")});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("1 segment(s)") != std::string::npos);
  }
  SUBCASE("population bridge") {
    const auto r = run({"segment", "--input", fixture("population_bridge.csv"), "--json", tmp / "b.json"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("over 1200 - 1400") != std::string::npos);
    check_report(tmp / "b.json");
  }
}

TEST_CASE("takeoff") {
  Scratch tmp("takeoff");
  const auto none = run({"takeoff", "--input", fixture("western-europe.csv"), "--json", tmp / "n.json"});
  CHECK(none.status == 0);
  CHECK(none.out.find("no takeoff: stagnation precondition not met") != std::string::npos);
  check_report(tmp / "n.json");
  const auto found = run({"takeoff", "--input", fixture("stagnation_then_growth.csv"), "--json", tmp / "f.json"});
  CHECK(found.status == 0);
  CHECK(found.out.find("takeoff at ≈ 1745") != std::string::npos);
  check_report(tmp / "f.json");
}

TEST_CASE("ratio") {
  Scratch tmp("ratio");
  const auto world = run({"ratio", "--gdp", fixture("world_gdp.csv"), "--pop", fixture("population-ad-1400.csv"),
                          "--from", "1400", "--to", "1950", "--json", tmp / "w.json"});
  REQUIRE(world.status == 0);
  CHECK(world.out.find("monotone increasing") != std::string::npos);
  check_report(tmp / "w.json");
  const auto report = nlohmann::json::parse(slurp(tmp / "w.json"));
  CHECK(report["ratio"]["discriminant"].get<double>() > 0);

  const auto same = run({"ratio", "--gdp", fixture("world_gdp.csv"), "--pop", fixture("world_gdp.csv"),
                         "--from", "1000", "--to", "1900", "--json", tmp / "s.json"});
  REQUIRE(same.status == 0);
  CHECK(same.out.find("monotone constant") != std::string::npos);
  for (const auto& row : nlohmann::json::parse(slurp(tmp / "s.json"))["ratio"]["table"]) {
    CHECK(row["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  }

  const auto crossing = run({"ratio", "--gdp-a", "1.684e-2", "--gdp-k", "8.539e-6", "--pop-a", "9.123",
                             "--pop-k", "4.478e-3", "--from", "1000", "--to", "2000"});
  CHECK(crossing.status == 1);
  CHECK(crossing.err.find("singularity") != std::string::npos);
}

TEST_CASE("distort demo") {
  Scratch tmp("distort");
  const auto r = run({"distort-demo", "--input", fixture("world_gdp.csv"), "--plot-data", tmp / "d",
                      "--json", tmp / "d.json"});
  REQUIRE(r.status == 0);
  CHECK(fs::exists(tmp / "d/full.csv"));
  CHECK(fs::exists(tmp / "d/caption.txt"));
  check_report(tmp / "d.json");
  const auto sub = slurp(tmp / "d/subsample.csv");
  CHECK(std::count(sub.begin(), sub.end(), '\n') == 8);

  {
    std::ofstream line(tmp / "line.csv");
    line << "year,value\n";
    for (int i = 0; i < 10; ++i) line << i << ',' << 2 * i + 1 << '\n';
  }
  REQUIRE(run({"distort-demo", "--input", tmp / "line.csv", "--plot-data", tmp / "l"}).status == 0);
  std::istringstream rows(slurp(tmp / "l/subsample.csv"));
  std::string row;
  std::getline(rows, row);
  while (std::getline(rows, row)) {
    const auto comma = row.find(',');
    const double t = std::stod(row.substr(0, comma));
    CHECK(std::stod(row.substr(comma + 1)) == 2 * t + 1);
  }
  {
    std::ofstream nine(tmp / "nine.csv");
    nine << "year,value\n";
    for (int i = 0; i < 9; ++i) nine << i << ",1\n";
  }
  CHECK(run({"distort-demo", "--input", tmp / "nine.csv", "--plot-data", tmp / "n"}).status == 1);
  CHECK(run({"distort-demo", "--input", fixture("world_gdp.csv")}).status == 2);
}

TEST_CASE("generate") {
  Scratch tmp("generate");
  const auto r = run({"generate", "--a", "9.123", "--k", "4.478e-3", "--from", "1400", "--to", "1950",
                      "--step", "10", "--output", tmp / "g.csv", "--json", tmp / "g.json"});
  REQUIRE(r.status == 0);
  check_report(tmp / "g.json");
  const auto csv = slurp(tmp / "g.csv");
  // one comment line, the header and 56 rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 58);
  const auto fit = run({"fit", "--input", tmp / "g.csv"});
  CHECK(fit.out.find("9.123") != std::string::npos);
}

TEST_CASE("milestones") {
  Scratch tmp("milestones");
  const auto r = run({"milestones", "--a", "9.123", "--k", "4.478e-3", "--reference",
                      fixture("population_milestones.csv"), "--json", tmp / "m.json"});
  REQUIRE(r.status == 0);
  check_report(tmp / "m.json");
  const auto report = nlohmann::json::parse(slurp(tmp / "m.json"));
  REQUIRE(report["milestones"].size() == 7);
  CHECK(report["milestones"][0]["year"].get<double>() == doctest::Approx(1813.9794551));
  CHECK(report["milestones"][0]["reference_year"].get<double>() == 1800);
  CHECK(run({"milestones", "--a", "9.123", "--k", "-1"}).status == 1);
}

TEST_CASE("every command is byte-deterministic") {
  Scratch tmp("determinism");
  const std::vector<std::vector<std::string>> commands{
      {"fit", "--input", fixture("world_gdp.csv"), "--departure", "1955"},
      {"segment", "--input", fixture("population_bridge.csv"), "--threads", "4"},
      {"takeoff", "--input", fixture("stagnation_then_growth.csv")},
      {"ratio", "--gdp", fixture("world_gdp.csv"), "--pop", fixture("population-ad-1400.csv")},
      {"distort-demo", "--input", fixture("world_gdp.csv")},
      {"generate", "--a", "9.123", "--k", "4.478e-3", "--from", "1400", "--to", "1950", "--noise", "0.02",
       "--seed", "1"},
      {"milestones", "--input", fixture("population-ad-1400.csv")},
  };
  for (const auto& base : commands) {
    CAPTURE(base[0]);
    std::vector<std::string> outputs;
    for (const char* run_id : {"1", "2"}) {
      auto args = base;
      const std::string dir = tmp / (base[0] + run_id);
      args.insert(args.end(), {"--json", dir + ".json"});
      if (base[0] == "fit" || base[0] == "segment" || base[0] == "distort-demo") {
        args.insert(args.end(), {"--plot-data", dir});
      }
      if (base[0] == "generate") args.insert(args.end(), {"--output", dir + ".csv"});
      const auto r = run(args);
      REQUIRE(r.status == 0);
      check_report(dir + ".json");
      std::string all = r.out + slurp(dir + ".json");
      if (fs::is_directory(dir)) {
        std::vector<fs::path> files(fs::directory_iterator(dir), fs::directory_iterator{});
        std::sort(files.begin(), files.end());
        for (const auto& f : files) all += f.filename().string() + slurp(f);
      }
      if (base[0] == "generate") all += slurp(dir + ".csv");
      // The scratch paths differ between the runs by their suffix only.
      for (std::size_t pos; (pos = all.find(dir)) != std::string::npos;) all.replace(pos, dir.size(), "@");
      outputs.push_back(all);
    }
    CHECK(outputs[0] == outputs[1]);
  }
}

TEST_CASE("stamp adds a timestamp only on request") {
  Scratch tmp("stamp");
  REQUIRE(run({"fit", "--input", fixture("world_gdp.csv"), "--json", tmp / "plain.json"}).status == 0);
  REQUIRE(run({"fit", "--input", fixture("world_gdp.csv"), "--json", tmp / "s.json", "--stamp"}).status == 0);
  CHECK(slurp(tmp / "plain.json").find("generated_at") == std::string::npos);
  check_report(tmp / "s.json");
  CHECK(nlohmann::json::parse(slurp(tmp / "s.json")).size() >
        nlohmann::json::parse(slurp(tmp / "plain.json")).size());
}
