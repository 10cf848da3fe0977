#include "hypergrowth/csv.hpp"

#include "hypergrowth/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace hypergrowth {
namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::size_t find_column(const std::vector<std::string_view>& header, const std::string& name,
                        std::size_t fallback) {
  if (name.empty()) {
    if (fallback >= header.size()) {
      throw InputError(fmt::format("header has {} columns; need at least 2", header.size()));
    }
    return fallback;
  }
  const auto it = std::find(header.begin(), header.end(), std::string_view(name));
  if (it == header.end()) throw InputError(fmt::format("column '{}' not found in header", name));
  return static_cast<std::size_t>(it - header.begin());
}

struct Row {
  double year;
  double value;
  std::size_t line;
};

}  // namespace

TimeSeries ingest_csv(std::istream& source, const CsvOptions& options) {
  if (!(options.scale_factor > 0.0) || !std::isfinite(options.scale_factor)) {
    throw InputError(fmt::format("scale factor must be positive, got {}", options.scale_factor));
  }

  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> columns;
  std::vector<Row> rows;
  std::vector<std::string> problems;

  while (std::getline(source, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view);
    if (!columns) {
      columns = {find_column(fields, options.year_column, 0),
                 find_column(fields, options.value_column, 1)};
      continue;
    }
    const auto [year_col, value_col] = *columns;
    if (std::max(year_col, value_col) >= fields.size()) {
      problems.push_back(fmt::format("line {}: expected at least {} fields, found {}", line_no,
                                     std::max(year_col, value_col) + 1, fields.size()));
      continue;
    }
    const auto year = parse_number(fields[year_col]);
    const auto value = parse_number(fields[value_col]);
    if (!year || !value) {
      problems.push_back(fmt::format("line {}: cannot parse '{}'", line_no, view));
      continue;
    }
    if (*value <= 0.0) {
      problems.push_back(fmt::format("line {}: value {} is not positive", line_no, *value));
      continue;
    }
    rows.push_back({*year, *value * options.scale_factor, line_no});
  }

  if (!problems.empty()) {
    std::string message = "rejected rows:";
    for (const auto& p : problems) message += "\n  " + p;
    throw InputError(message);
  }
  if (!columns) throw InputError("empty series: missing header row");
  if (rows.empty()) throw InputError("empty series: no data rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& l, const Row& r) { return l.year < r.year; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].year == rows[i - 1].year) {
      const auto [lo, hi] = std::minmax(rows[i - 1].line, rows[i].line);
      throw InputError(
          fmt::format("duplicate year {} on lines {} and {}", rows[i].year, lo, hi));
    }
  }

  Eigen::VectorXd years(static_cast<Eigen::Index>(rows.size()));
  Eigen::VectorXd values(years.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    years[static_cast<Eigen::Index>(i)] = rows[i].year;
    values[static_cast<Eigen::Index>(i)] = rows[i].value;
  }
  return TimeSeries(std::move(years), std::move(values), options.unit, options.label);
}

TimeSeries ingest_csv_file(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
  CsvOptions opts = options;
  if (opts.label.empty()) opts.label = path.filename().string();
  return ingest_csv(in, opts);
}

std::string format_shortest(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& sink, const TimeSeries& series, const std::string& year_header,
               const std::string& value_header) {
  sink << year_header << ',' << value_header << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto p = series[i];
    sink << format_shortest(p.year) << ',' << format_shortest(p.value) << '\n';
  }
}

}  // namespace hypergrowth
