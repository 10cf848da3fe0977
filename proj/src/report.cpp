#include "hypergrowth/report.hpp"

#include "hypergrowth/csv.hpp"
#include "hypergrowth/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hypergrowth {

using nlohmann::json;

json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

namespace {

json window_json(const FitWindow& w) { return json::array({w.t_lo, w.t_hi}); }

json diagnostics_json(const FitDiagnostics& d) {
  return {
      {"sse_transform", json_number(d.sse_transform)},
      {"sse_direct", json_number(d.sse_direct)},
      {"r_squared", json_number(d.r_squared)},
      {"max_rel_resid", json_number(d.max_rel_resid)},
      {"max_rel_resid_year", json_number(d.max_rel_resid_year)},
      {"n", d.n},
  };
}

}  // namespace

json to_json(const FitReport& fit) {
  json out;
  if (fit.kind() == ModelKind::Hyperbolic) {
    const auto& m = fit.hyperbolic();
    out["model"] = "hyperbolic";
    out["a"] = json_number(m.a);
    out["k"] = json_number(m.k);
    out["growth_kind"] = std::string(to_string(m.kind()));
    out["singularity"] = m.is_growth() ? json_number(singularity_time(m)) : json(nullptr);
  } else {
    const auto& m = fit.exponential();
    out["model"] = "exponential";
    out["a"] = json_number(m.a);
    out["k"] = json_number(m.k);
    out["growth_kind"] = m.k > 0 ? "growth" : (m.k < 0 ? "decay" : "constant");
    out["singularity"] = nullptr;
  }
  out["window"] = window_json(fit.window);
  out["weighting"] = std::string(to_string(fit.weighting));
  out["diagnostics"] = diagnostics_json(fit.diagnostics);
  return out;
}

json to_json(const ModelComparison& c) {
  return {
      {"preferred", std::string(to_string(c.preferred))},
      {"sse_direct_hyp", json_number(c.sse_direct_hyp)},
      {"sse_direct_exp", json_number(c.sse_direct_exp)},
      {"ratio", json_number(c.ratio)},
      {"exponential", to_json(c.exponential)},
  };
}

json to_json(const TransitionEvent& e) {
  return {
      {"kind", std::string(to_string(e.kind))},
      {"t_estimate", json_number(e.t_estimate)},
      {"window", window_json(e.window)},
      {"evidence",
       {
           {"slope_before", json_number(e.evidence.slope_before)},
           {"slope_after", json_number(e.evidence.slope_after)},
           {"score", json_number(e.evidence.score)},
           {"note", e.evidence.note},
       }},
  };
}

json to_json(const SegmentationResult& r) {
  json segments = json::array();
  for (const auto& s : r.segments) {
    segments.push_back({{"window", window_json(s.window)},
                        {"first", s.first},
                        {"count", s.count},
                        {"fit", to_json(s.fit)}});
  }
  json sse_profile = json::array();
  for (const double v : r.sse_by_breakpoints) sse_profile.push_back(json_number(v));
  return {
      {"segments", segments},
      {"total_sse", json_number(r.total_sse)},
      {"penalty_used", json_number(r.penalty_used)},
      {"sse_by_breakpoints", sse_profile},
  };
}

json to_json(const Departure& d) {
  return {
      {"t_departure", d.t_departure ? json(*d.t_departure) : json(nullptr)},
      {"direction", d.t_departure ? json(std::string(to_string(d.direction))) : json(nullptr)},
  };
}

json to_json(const TakeoffResult& t) {
  const auto& e = t.evidence;
  return {
      {"found", t.found},
      {"t", t.t ? json(*t.t) : json(nullptr)},
      {"evidence",
       {
           {"before", window_json(e.before)},
           {"after", window_json(e.after)},
           {"k_before", json_number(e.k_before)},
           {"k_after", json_number(e.k_after)},
           {"slope_factor", json_number(e.slope_factor)},
           {"stagnation_ratio", json_number(e.stagnation_ratio)},
           {"slope_condition", e.slope_condition},
           {"stagnation_condition", e.stagnation_condition},
       }},
  };
}

json make_report(std::string_view command, json input, json parameters) {
  return {
      {"schema", std::string(kReportSchema)},
      {"schema_version", kReportSchemaVersion},
      {"tool_version", std::string(kToolVersion)},
      {"command", std::string(command)},
      {"input", std::move(input)},
      {"parameters", std::move(parameters)},
      {"fits", json::array()},
      {"comparison", nullptr},
      {"segmentation", nullptr},
      {"transitions", json::array()},
      {"departure", nullptr},
      {"takeoff", nullptr},
      {"singularities", json::array()},
      {"ratio", nullptr},
      {"milestones", nullptr},
  };
}

namespace {

class SchemaChecker {
 public:
  explicit SchemaChecker(std::vector<std::string>& errors) : errors_(errors) {}

  bool require(const json& obj, const std::string& path, const std::string& key,
               json::value_t type, bool nullable = false) {
    if (!obj.is_object() || !obj.contains(key)) {
      errors_.push_back(fmt::format("{}.{}: missing", path, key));
      return false;
    }
    const json& v = obj.at(key);
    if (nullable && v.is_null()) return false;
    bool ok = v.type() == type;
    if (type == json::value_t::number_float) ok = v.is_number();
    if (type == json::value_t::number_unsigned) ok = v.is_number_integer() && v.get<long long>() >= 0;
    if (!ok) {
      errors_.push_back(fmt::format("{}.{}: unexpected type {}", path, key, v.type_name()));
      return false;
    }
    return true;
  }

  void window(const json& obj, const std::string& path, const std::string& key) {
    if (!require(obj, path, key, json::value_t::array)) return;
    const json& w = obj.at(key);
    if (w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
      errors_.push_back(fmt::format("{}.{}: expected [lo, hi]", path, key));
    } else if (w[0].get<double>() > w[1].get<double>()) {
      errors_.push_back(fmt::format("{}.{}: lo exceeds hi", path, key));
    }
  }

  void fit(const json& f, const std::string& path) {
    if (require(f, path, "model", json::value_t::string)) {
      const auto model = f.at("model").get<std::string>();
      if (model != "hyperbolic" && model != "exponential") {
        errors_.push_back(fmt::format("{}.model: unknown model '{}'", path, model));
      }
    }
    require(f, path, "a", json::value_t::number_float, true);
    require(f, path, "k", json::value_t::number_float, true);
    require(f, path, "growth_kind", json::value_t::string);
    require(f, path, "singularity", json::value_t::number_float, true);
    window(f, path, "window");
    require(f, path, "weighting", json::value_t::string);
    if (require(f, path, "diagnostics", json::value_t::object)) {
      const json& d = f.at("diagnostics");
      const std::string dp = path + ".diagnostics";
      for (const char* key :
           {"sse_transform", "sse_direct", "r_squared", "max_rel_resid", "max_rel_resid_year"}) {
        require(d, dp, key, json::value_t::number_float, true);
      }
      if (require(d, dp, "n", json::value_t::number_unsigned) && d.at("n").get<std::size_t>() < 2) {
        errors_.push_back(dp + ".n: fewer than 2 points");
      }
      if (d.contains("r_squared") && d.at("r_squared").is_number()) {
        const double r2 = d.at("r_squared").get<double>();
        if (r2 < 0.0 || r2 > 1.0) errors_.push_back(dp + ".r_squared: outside [0, 1]");
      }
    }
  }

  void transition(const json& t, const std::string& path) {
    require(t, path, "kind", json::value_t::string);
    require(t, path, "t_estimate", json::value_t::number_float);
    window(t, path, "window");
    if (require(t, path, "evidence", json::value_t::object)) {
      const json& e = t.at("evidence");
      require(e, path + ".evidence", "slope_before", json::value_t::number_float, true);
      require(e, path + ".evidence", "slope_after", json::value_t::number_float, true);
      require(e, path + ".evidence", "score", json::value_t::number_float, true);
      require(e, path + ".evidence", "note", json::value_t::string);
    }
  }

 private:
  std::vector<std::string>& errors_;
};

}  // namespace

std::vector<std::string> validate_report(const json& report) {
  std::vector<std::string> errors;
  SchemaChecker check(errors);
  if (!report.is_object()) return {"report is not an object"};

  if (check.require(report, "$", "schema", json::value_t::string) &&
      report.at("schema") != kReportSchema) {
    errors.push_back("$.schema: unexpected schema name");
  }
  if (check.require(report, "$", "schema_version", json::value_t::number_unsigned) &&
      report.at("schema_version") != kReportSchemaVersion) {
    errors.push_back("$.schema_version: unsupported version");
  }
  check.require(report, "$", "tool_version", json::value_t::string);
  if (check.require(report, "$", "command", json::value_t::string)) {
    static const std::vector<std::string> commands{"fit",          "segment",  "takeoff", "ratio",
                                                   "distort-demo", "generate", "milestones"};
    const auto cmd = report.at("command").get<std::string>();
    if (std::find(commands.begin(), commands.end(), cmd) == commands.end()) {
      errors.push_back(fmt::format("$.command: unknown command '{}'", cmd));
    }
  }
  check.require(report, "$", "input", json::value_t::object);
  check.require(report, "$", "parameters", json::value_t::object);

  if (check.require(report, "$", "fits", json::value_t::array)) {
    const json& fits = report.at("fits");
    for (std::size_t i = 0; i < fits.size(); ++i) check.fit(fits[i], fmt::format("$.fits[{}]", i));
  }
  if (check.require(report, "$", "comparison", json::value_t::object, true)) {
    const json& c = report.at("comparison");
    check.require(c, "$.comparison", "preferred", json::value_t::string);
    check.require(c, "$.comparison", "sse_direct_hyp", json::value_t::number_float, true);
    check.require(c, "$.comparison", "sse_direct_exp", json::value_t::number_float, true);
    check.require(c, "$.comparison", "ratio", json::value_t::number_float, true);
    if (check.require(c, "$.comparison", "exponential", json::value_t::object)) {
      check.fit(c.at("exponential"), "$.comparison.exponential");
    }
  }
  if (check.require(report, "$", "segmentation", json::value_t::object, true)) {
    const json& s = report.at("segmentation");
    if (check.require(s, "$.segmentation", "segments", json::value_t::array)) {
      const json& segs = s.at("segments");
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string path = fmt::format("$.segmentation.segments[{}]", i);
        check.window(segs[i], path, "window");
        check.require(segs[i], path, "first", json::value_t::number_unsigned);
        check.require(segs[i], path, "count", json::value_t::number_unsigned);
        if (check.require(segs[i], path, "fit", json::value_t::object)) {
          check.fit(segs[i].at("fit"), path + ".fit");
        }
        if (i > 0 && segs[i].contains("window") && segs[i - 1].contains("window") &&
            segs[i]["window"][0].get<double>() <= segs[i - 1]["window"][1].get<double>()) {
          errors.push_back(path + ".window: overlaps previous segment");
        }
      }
    }
    check.require(s, "$.segmentation", "total_sse", json::value_t::number_float, true);
    check.require(s, "$.segmentation", "penalty_used", json::value_t::number_float, true);
    check.require(s, "$.segmentation", "sse_by_breakpoints", json::value_t::array);
  }
  if (check.require(report, "$", "transitions", json::value_t::array)) {
    const json& ts = report.at("transitions");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      check.transition(ts[i], fmt::format("$.transitions[{}]", i));
    }
  }
  if (check.require(report, "$", "departure", json::value_t::object, true)) {
    const json& d = report.at("departure");
    check.require(d, "$.departure", "t_departure", json::value_t::number_float, true);
    check.require(d, "$.departure", "direction", json::value_t::string, true);
  }
  if (check.require(report, "$", "takeoff", json::value_t::object, true)) {
    const json& t = report.at("takeoff");
    check.require(t, "$.takeoff", "found", json::value_t::boolean);
    check.require(t, "$.takeoff", "t", json::value_t::number_float, true);
    if (check.require(t, "$.takeoff", "evidence", json::value_t::object)) {
      const json& e = t.at("evidence");
      check.window(e, "$.takeoff.evidence", "before");
      check.window(e, "$.takeoff.evidence", "after");
      for (const char* key : {"k_before", "k_after", "slope_factor", "stagnation_ratio"}) {
        check.require(e, "$.takeoff.evidence", key, json::value_t::number_float, true);
      }
      check.require(e, "$.takeoff.evidence", "slope_condition", json::value_t::boolean);
      check.require(e, "$.takeoff.evidence", "stagnation_condition", json::value_t::boolean);
    }
  }
  if (check.require(report, "$", "singularities", json::value_t::array)) {
    const json& rows = report.at("singularities");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string path = fmt::format("$.singularities[{}]", i);
      check.require(rows[i], path, "label", json::value_t::string);
      check.require(rows[i], path, "singularity", json::value_t::number_float, true);
      check.require(rows[i], path, "departure", json::value_t::number_float, true);
      check.require(rows[i], path, "proximity", json::value_t::number_float, true);
    }
  }
  if (check.require(report, "$", "ratio", json::value_t::object, true)) {
    const json& r = report.at("ratio");
    check.require(r, "$.ratio", "monotone", json::value_t::string);
    check.require(r, "$.ratio", "discriminant", json::value_t::number_float);
    check.window(r, "$.ratio", "domain");
    if (check.require(r, "$.ratio", "table", json::value_t::array)) {
      for (std::size_t i = 0; i < r.at("table").size(); ++i) {
        const json& row = r.at("table")[i];
        const std::string path = fmt::format("$.ratio.table[{}]", i);
        check.require(row, path, "t", json::value_t::number_float);
        check.require(row, path, "ratio", json::value_t::number_float);
        check.require(row, path, "growth_rate", json::value_t::number_float);
      }
    }
  }
  if (check.require(report, "$", "milestones", json::value_t::array, true)) {
    const json& ms = report.at("milestones");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string path = fmt::format("$.milestones[{}]", i);
      check.require(ms[i], path, "level", json::value_t::number_float);
      check.require(ms[i], path, "year", json::value_t::number_float, true);
      check.require(ms[i], path, "reference_year", json::value_t::number_float, true);
    }
  }
  return errors;
}

std::string sig4(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.4g}", value == 0.0 ? 0.0 : value);
}

void write_direct_plot(std::ostream& out, const TimeSeries& series, const HyperbolicModeld& model) {
  out << "t,value,model\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto p = series[i];
    out << format_shortest(p.year) << ',' << format_shortest(p.value) << ',';
    if (model.reciprocal(p.year) > 0.0) out << format_shortest(hyperbolic_value(model, p.year));
    out << '\n';
  }
}

void write_reciprocal_plot(std::ostream& out, const TimeSeries& series,
                           const HyperbolicModeld& model) {
  out << "t,reciprocal_value,reciprocal_model\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto p = series[i];
    out << format_shortest(p.year) << ',' << format_shortest(1.0 / p.value) << ','
        << format_shortest(model.reciprocal(p.year)) << '\n';
  }
}

std::vector<std::size_t> strategic_subsample(const TimeSeries& series) {
  const std::size_t n = series.size();
  if (n < 2) throw InputError("subsampling needs at least 2 points");
  const double t0 = series.front().year;
  const double span = series.back().year - t0;

  auto nearest = [&](double target) {
    std::size_t best = 0;
    double best_gap = std::abs(series[0].year - target);
    for (std::size_t i = 1; i < n; ++i) {
      const double gap = std::abs(series[i].year - target);
      if (gap < best_gap) {
        best = i;
        best_gap = gap;
      }
    }
    return best;
  };

  std::vector<std::size_t> picks{0};
  for (const double fraction : {0.5, 0.75, 0.875, 0.9375}) {
    picks.push_back(nearest(t0 + fraction * span));
  }
  picks.push_back(n - 2);
  picks.push_back(n - 1);
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  return picks;
}

double late_change_share(const TimeSeries& points, double fraction) {
  if (points.size() < 2) return 0.0;
  const double t_first = points.front().year;
  const double t_last = points.back().year;
  const double cutoff = t_last - fraction * (t_last - t_first);

  double value_at_cutoff = points.front().value;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto lo = points[i - 1];
    const auto hi = points[i];
    if (cutoff <= hi.year) {
      const double w = (cutoff - lo.year) / (hi.year - lo.year);
      value_at_cutoff = lo.value + w * (hi.value - lo.value);
      break;
    }
  }
  const double total = points.back().value - points.front().value;
  if (total == 0.0) return 0.0;
  return (points.back().value - value_at_cutoff) / total;
}

std::string distortion_caption(const TimeSeries& full, const TimeSeries& subsample) {
  const double full_share = late_change_share(full, 0.1);
  const double sub_share = late_change_share(subsample, 0.1);
  std::string years;
  for (std::size_t i = 0; i < subsample.size(); ++i) {
    years += (i ? ", " : "") + format_shortest(subsample[i].year);
  }
  return fmt::format(
      "Distortion by strategic subsampling\n"
      "\n"
      "full.csv holds all {} observations between {} and {}.\n"
      "subsample.csv keeps only {} of them (years {}): the first point, the points\n"
      "nearest 50%, 75%, 87.5% and 93.75% of the time span, and the last two points.\n"
      "\n"
      "Joined by straight lines, the subsample puts {:.1f}% of the total change in the\n"
      "final 10% of the time span (the full series: {:.1f}%). The long empty stretch\n"
      "before the crowded final points reads as a flat epoch followed by a sudden\n"
      "explosion, although the underlying data rise smoothly and monotonically.\n"
      "Plot the reciprocal values of full.csv to see whether they fall on a single\n"
      "decreasing straight line.\n",
      full.size(), format_shortest(full.front().year), format_shortest(full.back().year),
      subsample.size(), years, 100.0 * sub_share, 100.0 * full_share);
}

}  // namespace hypergrowth
