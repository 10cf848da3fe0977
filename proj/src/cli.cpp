#include "hypergrowth/cli.hpp"

#include "hypergrowth/csv.hpp"
#include "hypergrowth/error.hpp"
#include "hypergrowth/fitting.hpp"
#include "hypergrowth/models.hpp"
#include "hypergrowth/percapita.hpp"
#include "hypergrowth/report.hpp"
#include "hypergrowth/segmentation.hpp"
#include "hypergrowth/synthetic.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace hypergrowth::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct InputArgs {
  std::string path;
  std::string window;
  std::string unit = "raw";
  double scale = 1.0;
  std::string year_column;
  std::string value_column;
};

struct OutputArgs {
  std::string json_path;
  std::string plot_dir;
  bool stamp = false;
};

void add_input_options(CLI::App* cmd, InputArgs& in, bool required = true) {
  auto* opt = cmd->add_option("--input", in.path, "CSV file with a header row");
  if (required) opt->required();
  cmd->add_option("--window", in.window, "Inclusive year range LO:HI (use --window=LO:HI for BC)");
  cmd->add_option("--unit", in.unit, "Canonical unit of the scaled values")
      ->check(CLI::IsMember({"pop-billions", "gdp-billions", "raw"}));
  cmd->add_option("--scale", in.scale, "Factor converting input values to the canonical unit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--year-col", in.year_column, "Year column name (default: first column)");
  cmd->add_option("--value-col", in.value_column, "Value column name (default: second column)");
}

void add_output_options(CLI::App* cmd, OutputArgs& out, bool plot = true) {
  cmd->add_option("--json", out.json_path, "Write the structured report to this file");
  if (plot) cmd->add_option("--plot-data", out.plot_dir, "Directory for plot-data CSV files");
  cmd->add_flag("--stamp", out.stamp, "Embed the current UTC time in the JSON report");
}

FitWindow parse_window(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) {
    throw CLI::ValidationError("--window", fmt::format("'{}' is not of the form LO:HI", text));
  }
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo_text = text.substr(0, colon);
    const std::string hi_text = text.substr(colon + 1);
    const double lo = std::stod(lo_text, &used_lo);
    const double hi = std::stod(hi_text, &used_hi);
    if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument("");
    if (!(lo < hi)) throw InputError(fmt::format("window '{}' must have LO < HI", text));
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--window", fmt::format("'{}' is not of the form LO:HI", text));
  }
}

struct LoadedInput {
  TimeSeries full;
  TimeSeries series;
  std::optional<FitWindow> window;
};

LoadedInput load_input(const InputArgs& in) {
  CsvOptions opts;
  opts.year_column = in.year_column;
  opts.value_column = in.value_column;
  opts.unit = parse_unit(in.unit).value_or(Unit::Dimensionless);
  opts.scale_factor = in.scale;
  TimeSeries full = ingest_csv_file(in.path, opts);
  if (in.window.empty()) return {full, full, std::nullopt};
  const FitWindow w = parse_window(in.window);
  return {full, hypergrowth::window(full, w.t_lo, w.t_hi), w};
}

json input_json(const InputArgs& in, const LoadedInput& loaded) {
  return {
      {"path", in.path},
      {"label", loaded.series.label()},
      {"unit", in.unit},
      {"scale", in.scale},
      {"window", loaded.window ? json::array({loaded.window->t_lo, loaded.window->t_hi})
                               : json(nullptr)},
      {"points", loaded.series.size()},
  };
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError(fmt::format("cannot write '{}'", path.string()));
  file << content;
}

void emit_report(json report, const OutputArgs& out) {
  if (out.json_path.empty()) return;
  if (out.stamp) report["stamp"] = utc_now();
  write_text_file(out.json_path, report.dump(2) + "\n");
}

void emit_fit_plots(const fs::path& dir, const TimeSeries& series, const HyperbolicModeld& model) {
  fs::create_directories(dir);
  std::ostringstream direct;
  write_direct_plot(direct, series, model);
  write_text_file(dir / "direct.csv", direct.str());
  std::ostringstream reciprocal;
  write_reciprocal_plot(reciprocal, series, model);
  write_text_file(dir / "reciprocal.csv", reciprocal.str());
}

std::string window_text(const FitWindow& w) {
  return fmt::format("{} - {}", format_shortest(w.t_lo), format_shortest(w.t_hi));
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  InputArgs in;
  OutputArgs out;
  std::string weighting = "uniform";
  std::optional<double> departure_year;
  std::optional<double> departure_threshold;
};

int cmd_fit(const FitArgs& args, std::ostream& out) {
  const auto loaded = load_input(args.in);
  const Weighting weighting =
      args.weighting == "direct" ? Weighting::DirectSpaceApprox : Weighting::Uniform;
  const FitReport hyp = fit_hyperbolic(loaded.series, weighting);
  const FitReport exp = fit_exponential(loaded.series);
  const ModelComparison comparison = compare_fits(hyp, exp, loaded.series);
  const auto& m = hyp.hyperbolic();

  json params = {{"weighting", std::string(to_string(weighting))},
                 {"departure", args.departure_year ? json(*args.departure_year) : json(nullptr)},
                 {"departure_threshold", args.departure_threshold
                                             ? json(*args.departure_threshold)
                                             : json(nullptr)}};
  json report = make_report("fit", input_json(args.in, loaded), params);
  report["fits"].push_back(to_json(hyp));
  report["comparison"] = to_json(comparison);

  fmt::print(out, "fit: {} ({} points, range {}, unit {})\n", loaded.series.label(),
             loaded.series.size(), window_text(hyp.window), args.in.unit);
  fmt::print(out, "hyperbolic  S(t) = 1/(a - k t)  [{} weighting]\n", to_string(weighting));
  fmt::print(out, "  {:<14}{}\n", "a", sig4(m.a));
  fmt::print(out, "  {:<14}{}\n", "k", sig4(m.k));
  fmt::print(out, "  {:<14}{}\n", "kind", to_string(m.kind()));
  fmt::print(out, "  {:<14}{}\n", "range", window_text(hyp.window));
  fmt::print(out, "  {:<14}{}\n", "singularity", m.is_growth() ? sig4(singularity_time(m)) : "none");
  fmt::print(out, "  {:<14}{}\n", "r^2 (1/S)", sig4(hyp.diagnostics.r_squared));
  fmt::print(out, "  {:<14}{}% at {}\n", "max rel dev", sig4(100.0 * hyp.diagnostics.max_rel_resid),
             format_shortest(hyp.diagnostics.max_rel_resid_year));
  const auto& e = exp.exponential();
  fmt::print(out, "exponential S(t) = a exp(k t)\n");
  fmt::print(out, "  {:<14}{}\n", "a", sig4(e.a));
  fmt::print(out, "  {:<14}{}\n", "k", sig4(e.k));
  fmt::print(out, "comparison: preferred {} (SSE exp/hyp = {})\n", to_string(comparison.preferred),
             sig4(comparison.ratio));

  json singularity_row = {{"label", loaded.series.label()},
                          {"singularity", m.is_growth() ? json_number(singularity_time(m))
                                                        : json(nullptr)},
                          {"departure", nullptr},
                          {"proximity", nullptr}};

  std::optional<double> departure = args.departure_year;
  if (args.departure_threshold) {
    const FitWindow fit_window = loaded.window.value_or(hyp.window);
    if (loaded.full.back().year > fit_window.t_hi) {
      const Departure d = detect_departure(loaded.full, fit_window, *args.departure_threshold);
      report["departure"] = to_json(d);
      if (d.t_departure) {
        fmt::print(out, "departure: {} trajectory from {}\n", to_string(d.direction),
                   format_shortest(*d.t_departure));
        if (!departure) departure = d.t_departure;
      } else {
        fmt::print(out, "departure: none beyond threshold {}\n", sig4(*args.departure_threshold));
      }
    } else {
      fmt::print(out, "departure: no data beyond the fit window\n");
    }
  }
  if (departure && m.is_growth()) {
    const double prox = proximity(m, *departure);
    singularity_row["departure"] = *departure;
    singularity_row["proximity"] = prox;
    fmt::print(out, "proximity: {} years (departure {})\n", sig4(prox), format_shortest(*departure));
  }
  report["singularities"].push_back(singularity_row);

  if (!args.out.plot_dir.empty()) emit_fit_plots(args.out.plot_dir, loaded.series, m);
  emit_report(std::move(report), args.out);
  return kOk;
}

// ---------------------------------------------------------------- segment

struct SegmentArgs {
  InputArgs in;
  OutputArgs out;
  std::size_t max_segments = 3;
  std::optional<double> penalty;
  std::size_t min_points = 4;
  unsigned threads = 1;
};

int cmd_segment(const SegmentArgs& args, std::ostream& out) {
  const auto loaded = load_input(args.in);
  SegmentationOptions opts;
  opts.max_segments = args.max_segments;
  opts.penalty = args.penalty;
  opts.min_segment_points = args.min_points;
  opts.threads = args.threads;
  const SegmentationResult result = segment(loaded.series, opts);

  json params = {{"max_segments", args.max_segments},
                 {"penalty", args.penalty ? json(*args.penalty) : json(nullptr)},
                 {"min_points", args.min_points}};
  json report = make_report("segment", input_json(args.in, loaded), params);
  report["segmentation"] = to_json(result);

  fmt::print(out, "segment: {} ({} points)\n", loaded.series.label(), loaded.series.size());
  fmt::print(out, "{} segment(s), penalty {}, total reciprocal SSE {}\n", result.segments.size(),
             sig4(result.penalty_used), sig4(result.total_sse));
  fmt::print(out, "  {:<16}{:<12}{:<12}{:<12}{}\n", "range", "a", "k", "singularity", "r^2");
  for (const auto& s : result.segments) {
    const auto& m = s.fit.hyperbolic();
    report["fits"].push_back(to_json(s.fit));
    report["singularities"].push_back(
        {{"label", window_text(s.window)},
         {"singularity", m.is_growth() ? json_number(singularity_time(m)) : json(nullptr)},
         {"departure", nullptr},
         {"proximity", nullptr}});
    fmt::print(out, "  {:<16}{:<12}{:<12}{:<12}{}\n", window_text(s.window), sig4(m.a), sig4(m.k),
               m.is_growth() ? sig4(singularity_time(m)) : "none", sig4(s.fit.diagnostics.r_squared));
  }
  for (const auto& t : result.transitions) {
    report["transitions"].push_back(to_json(t));
    fmt::print(out, "transition {} over {} (estimate {}, k ratio {})\n", to_string(t.kind),
               window_text(t.window), sig4(t.t_estimate), sig4(t.evidence.score));
  }

  if (!args.out.plot_dir.empty()) {
    std::ostringstream csv;
    csv << "t,value,model,reciprocal_value,reciprocal_model,segment\n";
    for (std::size_t s = 0; s < result.segments.size(); ++s) {
      const auto& seg = result.segments[s];
      const auto& m = seg.fit.hyperbolic();
      for (std::size_t i = seg.first; i < seg.first + seg.count; ++i) {
        const auto p = loaded.series[i];
        csv << format_shortest(p.year) << ',' << format_shortest(p.value) << ',';
        if (m.reciprocal(p.year) > 0.0) csv << format_shortest(hyperbolic_value(m, p.year));
        csv << ',' << format_shortest(1.0 / p.value) << ',' << format_shortest(m.reciprocal(p.year))
            << ',' << s << '\n';
      }
    }
    write_text_file(fs::path(args.out.plot_dir) / "segments.csv", csv.str());
  }
  emit_report(std::move(report), args.out);
  return kOk;
}

// ---------------------------------------------------------------- takeoff

struct TakeoffArgs {
  InputArgs in;
  OutputArgs out;
  TakeoffOptions options;
};

int cmd_takeoff(const TakeoffArgs& args, std::ostream& out) {
  const auto loaded = load_input(args.in);
  const FitWindow w{loaded.series.front().year, loaded.series.back().year};
  const TakeoffResult result = detect_takeoff(loaded.series, w, args.options);

  json params = {{"slope_factor", args.options.slope_factor},
                 {"stagnation_fraction", args.options.stagnation_fraction}};
  json report = make_report("takeoff", input_json(args.in, loaded), params);
  report["takeoff"] = to_json(result);

  const auto& e = result.evidence;
  if (result.found) {
    fmt::print(out, "takeoff at ≈ {}\n", format_shortest(*result.t));
  } else if (!e.stagnation_condition) {
    fmt::print(out, "no takeoff: stagnation precondition not met\n");
  } else {
    fmt::print(out, "no takeoff: no prominent increase of the reciprocal slope\n");
  }
  fmt::print(out, "  best split      {} | {}\n", window_text(e.before), window_text(e.after));
  fmt::print(out, "  k before/after  {} / {}\n", sig4(e.k_before), sig4(e.k_after));
  fmt::print(out, "  slope factor    {} (needs >= {}): {}\n", sig4(e.slope_factor),
             sig4(args.options.slope_factor), e.slope_condition ? "met" : "not met");
  fmt::print(out, "  stagnation      {} (needs < {}): {}\n", sig4(e.stagnation_ratio),
             sig4(args.options.stagnation_fraction), e.stagnation_condition ? "met" : "not met");
  emit_report(std::move(report), args.out);
  return kOk;
}

// ---------------------------------------------------------------- ratio

struct RatioArgs {
  InputArgs gdp;
  InputArgs pop;
  std::optional<double> gdp_a, gdp_k, pop_a, pop_k;
  std::optional<double> from, to;
  double step = 50.0;
  OutputArgs out;
};

struct ResolvedModel {
  HyperbolicModeld model;
  std::optional<double> data_start;
  std::optional<FitReport> fit;
  json input;
};

ResolvedModel resolve_model(const InputArgs& in, std::optional<double> a, std::optional<double> k,
                            std::string_view input_flag, std::string_view param_prefix) {
  if (!in.path.empty()) {
    const auto loaded = load_input(in);
    FitReport fit = fit_hyperbolic(loaded.series);
    return {fit.hyperbolic(), loaded.series.front().year, fit, input_json(in, loaded)};
  }
  if (a && k) return {{*a, *k}, std::nullopt, std::nullopt, {{"a", *a}, {"k", *k}}};
  throw CLI::ValidationError(
      fmt::format("--{} or both --{}a and --{}k are required", input_flag, param_prefix, param_prefix));
}

int cmd_ratio(const RatioArgs& args, std::ostream& out) {
  const auto num = resolve_model(args.gdp, args.gdp_a, args.gdp_k, "gdp", "gdp-");
  const auto den = resolve_model(args.pop, args.pop_a, args.pop_k, "pop", "pop-");

  RatioModeld ratio;
  if (args.from && args.to) {
    ratio = make_ratio(num.model, den.model, *args.from, *args.to);
  } else {
    const double start_num = num.data_start.value_or(args.from.value_or(0.0));
    const double start_den = den.data_start.value_or(args.from.value_or(0.0));
    ratio = make_ratio_default_domain(num.model, den.model, start_num, start_den);
    if (args.to) ratio = make_ratio(num.model, den.model, ratio.t_lo, *args.to);
  }
  const auto verdict = ratio_monotonicity(ratio);

  json params = {{"step", args.step},
                 {"from", args.from ? json(*args.from) : json(nullptr)},
                 {"to", args.to ? json(*args.to) : json(nullptr)}};
  json report = make_report("ratio", {{"numerator", num.input}, {"denominator", den.input}}, params);
  if (num.fit) report["fits"].push_back(to_json(*num.fit));
  if (den.fit) report["fits"].push_back(to_json(*den.fit));

  fmt::print(out, "ratio: numerator a={} k={}, denominator a={} k={}\n", sig4(num.model.a),
             sig4(num.model.k), sig4(den.model.a), sig4(den.model.k));
  fmt::print(out, "domain {}; monotone {}; discriminant {}\n",
             window_text({ratio.t_lo, ratio.t_hi}), to_string(verdict.monotone),
             sig4(verdict.discriminant));
  fmt::print(out, "  {:<10}{:<14}{}\n", "t", "ratio", "growth_rate");

  json table = json::array();
  const Eigen::VectorXd grid = sample_grid(ratio.t_lo, ratio.t_hi, args.step);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double r = ratio_value(ratio, t);
    const double g = ratio_growth_rate(ratio, t);
    table.push_back({{"t", t}, {"ratio", r}, {"growth_rate", g}});
    fmt::print(out, "  {:<10}{:<14}{}\n", format_shortest(t), sig4(r), sig4(g));
  }
  report["ratio"] = {{"monotone", std::string(to_string(verdict.monotone))},
                     {"discriminant", verdict.discriminant},
                     {"domain", json::array({ratio.t_lo, ratio.t_hi})},
                     {"numerator", {{"a", num.model.a}, {"k", num.model.k}}},
                     {"denominator", {{"a", den.model.a}, {"k", den.model.k}}},
                     {"table", table}};
  emit_report(std::move(report), args.out);
  return kOk;
}

// ---------------------------------------------------------------- distort-demo

struct DistortArgs {
  InputArgs in;
  OutputArgs out;
};

TimeSeries pick(const TimeSeries& series, const std::vector<std::size_t>& indices) {
  Eigen::VectorXd years(static_cast<Eigen::Index>(indices.size()));
  Eigen::VectorXd values(years.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    years[static_cast<Eigen::Index>(i)] = series[indices[i]].year;
    values[static_cast<Eigen::Index>(i)] = series[indices[i]].value;
  }
  return TimeSeries(std::move(years), std::move(values), series.unit(), series.label());
}

int cmd_distort(const DistortArgs& args, std::ostream& out) {
  const auto loaded = load_input(args.in);
  if (loaded.series.size() < 10) {
    throw InputError(fmt::format("distortion demo needs at least 10 points, found {}",
                                 loaded.series.size()));
  }
  const auto indices = strategic_subsample(loaded.series);
  const TimeSeries subsample = pick(loaded.series, indices);
  const double sub_share = late_change_share(subsample, 0.1);
  const double full_share = late_change_share(loaded.series, 0.1);

  const fs::path dir(args.out.plot_dir);
  fs::create_directories(dir);
  std::ostringstream full_csv;
  write_csv(full_csv, loaded.series, "t", "value");
  write_text_file(dir / "full.csv", full_csv.str());
  std::ostringstream sub_csv;
  write_csv(sub_csv, subsample, "t", "value");
  write_text_file(dir / "subsample.csv", sub_csv.str());
  write_text_file(dir / "caption.txt", distortion_caption(loaded.series, subsample));

  json report = make_report("distort-demo", input_json(args.in, loaded), json::object());
  json years = json::array();
  for (std::size_t i = 0; i < subsample.size(); ++i) years.push_back(subsample[i].year);
  report["parameters"]["subsample_years"] = years;
  report["parameters"]["late_share_subsample"] = sub_share;
  report["parameters"]["late_share_full"] = full_share;

  fmt::print(out, "distort-demo: {} of {} points kept\n", subsample.size(), loaded.series.size());
  fmt::print(out, "  change in final 10% of span: subsample {}%, full series {}%\n",
             sig4(100.0 * sub_share), sig4(100.0 * full_share));
  fmt::print(out, "  wrote full.csv, subsample.csv, caption.txt to {}\n", dir.string());
  emit_report(std::move(report), args.out);
  return kOk;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  double a = 0.0;
  double k = 0.0;
  bool exponential = false;
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string unit = "raw";
  std::string output;
  OutputArgs out;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  SyntheticSpec spec;
  if (args.exponential) {
    if (!(args.a > 0.0)) throw InputError("exponential models need a > 0");
    spec.model = ExponentialModeld{args.a, args.k};
  } else {
    spec.model = HyperbolicModeld{args.a, args.k};
  }
  spec.t_start = args.from;
  spec.t_end = args.to;
  spec.step = args.step;
  spec.noise_rel = args.noise;
  spec.seed = args.seed;
  spec.unit = parse_unit(args.unit).value_or(Unit::Dimensionless);
  const TimeSeries series = generate(spec);

  std::ostringstream csv;
  csv << fmt::format("# {} a={} k={} step={} noise={} seed={}\n",
                     args.exponential ? "exponential" : "hyperbolic", format_shortest(args.a),
                     format_shortest(args.k), format_shortest(args.step),
                     format_shortest(args.noise), args.seed);
  write_csv(csv, series);
  if (args.output.empty()) {
    out << csv.str();
  } else {
    write_text_file(args.output, csv.str());
  }

  json params = {{"model", args.exponential ? "exponential" : "hyperbolic"},
                 {"a", args.a},
                 {"k", args.k},
                 {"from", args.from},
                 {"to", args.to},
                 {"step", args.step},
                 {"noise", args.noise},
                 {"seed", args.seed}};
  json report = make_report("generate",
                            {{"path", args.output}, {"unit", args.unit}, {"points", series.size()}},
                            params);
  emit_report(std::move(report), args.out);
  return kOk;
}

// ---------------------------------------------------------------- milestones

struct MilestoneArgs {
  InputArgs in;
  std::optional<double> a, k;
  std::vector<double> levels{1, 2, 3, 4, 5, 6, 7};
  std::string reference;
  OutputArgs out;
};

int cmd_milestones(const MilestoneArgs& args, std::ostream& out) {
  const auto resolved = resolve_model(args.in, args.a, args.k, "input", "");
  const auto& m = resolved.model;

  std::vector<std::pair<double, double>> reference_rows;
  if (!args.reference.empty()) {
    CsvOptions opts;
    opts.year_column = "year";
    opts.value_column = "level";
    const TimeSeries ref = ingest_csv_file(args.reference, opts);
    for (std::size_t i = 0; i < ref.size(); ++i) reference_rows.emplace_back(ref[i].value, ref[i].year);
  }
  auto reference_year = [&](double level) -> std::optional<double> {
    for (const auto& [lvl, year] : reference_rows) {
      if (lvl == level) return year;
    }
    return std::nullopt;
  };

  json params = {{"levels", args.levels}, {"reference", args.reference}};
  json report = make_report("milestones", resolved.input, params);
  if (resolved.fit) report["fits"].push_back(to_json(*resolved.fit));
  report["singularities"].push_back({{"label", "model"},
                                     {"singularity", json_number(singularity_time(m))},
                                     {"departure", nullptr},
                                     {"proximity", nullptr}});

  fmt::print(out, "milestones: a={} k={} (singularity {})\n", sig4(m.a), sig4(m.k),
             sig4(singularity_time(m)));
  fmt::print(out, "  {:<10}{:<12}{:<12}{}\n", "level", "model", "reference", "difference");
  json rows = json::array();
  for (const double level : args.levels) {
    std::optional<double> year;
    try {
      year = milestone_time(m, level);
    } catch (const DomainError&) {
    }
    const auto ref = reference_year(level);
    rows.push_back({{"level", level},
                    {"year", year ? json(*year) : json(nullptr)},
                    {"reference_year", ref ? json(*ref) : json(nullptr)}});
    fmt::print(out, "  {:<10}{:<12}{:<12}{}\n", format_shortest(level),
               year ? sig4(*year) : "unreachable", ref ? format_shortest(*ref) : "-",
               year && ref ? sig4(*year - *ref) : "-");
  }
  report["milestones"] = rows;
  emit_report(std::move(report), args.out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic growth analysis by the method of reciprocal values", "hypergrowth"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit hyperbolic and exponential models to a series");
  add_input_options(fit, fit_args.in);
  add_output_options(fit, fit_args.out);
  fit->add_option("--weighting", fit_args.weighting, "Reciprocal-space weighting")
      ->check(CLI::IsMember({"uniform", "direct"}));
  fit->add_option("--departure", fit_args.departure_year, "Departure year for the proximity");
  fit->add_option("--departure-threshold", fit_args.departure_threshold,
                  "Relative residual that marks a persistent departure after the window")
      ->check(CLI::NonNegativeNumber);

  SegmentArgs seg_args;
  auto* seg = app.add_subcommand("segment", "Find piecewise-hyperbolic structure");
  add_input_options(seg, seg_args.in);
  add_output_options(seg, seg_args.out);
  seg->add_option("--max-segments", seg_args.max_segments)->check(CLI::PositiveNumber);
  seg->add_option("--penalty", seg_args.penalty, "Cost per breakpoint (default: BIC-style)")
      ->check(CLI::NonNegativeNumber);
  seg->add_option("--min-points", seg_args.min_points)->check(CLI::Range(2, 1000000));
  seg->add_option("--threads", seg_args.threads, "Worker threads (0 = all cores)");

  TakeoffArgs takeoff_args;
  auto* takeoff = app.add_subcommand("takeoff", "Search for a stagnation-to-growth takeoff");
  add_input_options(takeoff, takeoff_args.in);
  add_output_options(takeoff, takeoff_args.out, false);
  takeoff->add_option("--slope-factor", takeoff_args.options.slope_factor)
      ->check(CLI::PositiveNumber);
  takeoff->add_option("--stagnation", takeoff_args.options.stagnation_fraction)
      ->check(CLI::PositiveNumber);

  RatioArgs ratio_args;
  auto* ratio = app.add_subcommand("ratio", "Analyse the quotient of two hyperbolic models");
  ratio->add_option("--gdp", ratio_args.gdp.path, "Numerator CSV (e.g. GDP)");
  ratio->add_option("--gdp-window", ratio_args.gdp.window);
  ratio->add_option("--gdp-scale", ratio_args.gdp.scale)->check(CLI::PositiveNumber);
  ratio->add_option("--pop", ratio_args.pop.path, "Denominator CSV (e.g. population)");
  ratio->add_option("--pop-window", ratio_args.pop.window);
  ratio->add_option("--pop-scale", ratio_args.pop.scale)->check(CLI::PositiveNumber);
  ratio->add_option("--gdp-a", ratio_args.gdp_a);
  ratio->add_option("--gdp-k", ratio_args.gdp_k);
  ratio->add_option("--pop-a", ratio_args.pop_a);
  ratio->add_option("--pop-k", ratio_args.pop_k);
  ratio->add_option("--from", ratio_args.from, "First grid year");
  ratio->add_option("--to", ratio_args.to, "Last grid year");
  ratio->add_option("--step", ratio_args.step)->check(CLI::PositiveNumber);
  add_output_options(ratio, ratio_args.out, false);

  DistortArgs distort_args;
  auto* distort =
      app.add_subcommand("distort-demo", "Show how a few chosen points fake an explosion");
  add_input_options(distort, distort_args.in);
  distort->add_option("--plot-data", distort_args.out.plot_dir, "Output directory")->required();
  distort->add_option("--json", distort_args.out.json_path);
  distort->add_flag("--stamp", distort_args.out.stamp);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Write a synthetic series as CSV");
  gen->add_option("--a", gen_args.a)->required();
  gen->add_option("--k", gen_args.k)->required();
  gen->add_flag("--exponential", gen_args.exponential, "S = a exp(k t) instead of 1/(a - k t)");
  gen->add_option("--from", gen_args.from)->required();
  gen->add_option("--to", gen_args.to)->required();
  gen->add_option("--step", gen_args.step)->check(CLI::PositiveNumber);
  gen->add_option("--noise", gen_args.noise, "Relative log-normal noise")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("--unit", gen_args.unit)
      ->check(CLI::IsMember({"pop-billions", "gdp-billions", "raw"}));
  gen->add_option("--output", gen_args.output, "CSV path (default: stdout)");
  gen->add_option("--json", gen_args.out.json_path);
  gen->add_flag("--stamp", gen_args.out.stamp);

  MilestoneArgs ms_args;
  auto* ms = app.add_subcommand("milestones", "Years at which a model crosses given sizes");
  add_input_options(ms, ms_args.in, false);
  ms->add_option("--a", ms_args.a);
  ms->add_option("--k", ms_args.k);
  ms->add_option("--levels", ms_args.levels, "Sizes to cross")->delimiter(',');
  ms->add_option("--reference", ms_args.reference, "CSV of level,year to compare against");
  add_output_options(ms, ms_args.out, false);

  std::vector<const char*> argv{"hypergrowth"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (fit->parsed()) return cmd_fit(fit_args, out);
    if (seg->parsed()) return cmd_segment(seg_args, out);
    if (takeoff->parsed()) return cmd_takeoff(takeoff_args, out);
    if (ratio->parsed()) return cmd_ratio(ratio_args, out);
    if (distort->parsed()) return cmd_distort(distort_args, out);
    if (gen->parsed()) return cmd_generate(gen_args, out);
    if (ms->parsed()) return cmd_milestones(ms_args, out);
  } catch (const CLI::ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kFailure;
  } catch (const fs::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kFailure;
  }
  return kUsage;
}

}  // namespace hypergrowth::cli
